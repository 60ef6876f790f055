// Python surface for the core library: costs, bounds, topologies, noise
// draws, complexity rows, and whole experiment runs from config text.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include <asymdlms/algorithms.hpp>
#include <asymdlms/config.hpp>
#include <asymdlms/experiment.hpp>
#include <asymdlms/metrics.hpp>
#include <asymdlms/noise.hpp>
#include <asymdlms/rng.hpp>
#include <asymdlms/topology.hpp>

namespace py = pybind11;
using namespace asymdlms;

namespace {

AlgorithmSpec make_spec(const std::string& name, double mu, double a, double b, double clamp) {
  const std::optional<Algorithm> algorithm = algorithm_from_name(name);
  if (!algorithm) throw py::value_error("unknown algorithm '" + name + "'");
  AlgorithmSpec spec;
  spec.name = *algorithm;
  spec.mu = mu;
  spec.a = a;
  spec.b = b;
  spec.lec_clamp = clamp;
  validate(spec);
  return spec;
}

py::dict curve_dict(const AlgorithmSpec& spec, const MonteCarloResult& result) {
  py::dict out;
  out["algorithm"] = std::string(algorithm_name(spec.name));
  out["mu"] = spec.mu;
  if (result.curve) {
    out["msd_db"] = result.curve->values_db;
    out["trials"] = result.curve->trials;
    out["diverged_trials"] = result.curve->diverged_trials;
  } else {
    out["msd_db"] = py::none();
    out["trials"] = 0;
    out["diverged_trials"] = static_cast<int>(result.trials.size());
  }
  out["clamp_events"] = result.clamp_events;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diffusion adaptive filtering with asymmetric error costs";
  m.attr("__version__") = software_version();

  m.def("cost_llc", &cost_llc, py::arg("e"), py::arg("a"), py::arg("b"),
        "Piecewise linear error cost.");
  m.def("cost_qqc", &cost_qqc, py::arg("e"), py::arg("a"), py::arg("b"),
        "Piecewise quadratic error cost.");
  m.def("cost_lec", &cost_lec, py::arg("e"), py::arg("a"), py::arg("b"),
        py::arg("clamp") = kDefaultLecClamp, "Linear-exponential error cost.");
  m.def("lec_linearization_error", &lec_linearization_error, py::arg("e"), py::arg("a"),
        "Deviation of the exponential update factor from its linearization.");

  m.def(
      "update_factor",
      [](const std::string& algorithm, double e, double mu, double a, double b, double clamp) {
        return update_factor(make_spec(algorithm, mu, a, b, clamp), e);
      },
      py::arg("algorithm"), py::arg("e"), py::arg("mu"), py::arg("a") = 1.0, py::arg("b") = 1.0,
      py::arg("clamp") = kDefaultLecClamp,
      "Scalar factor f(e) applied to the regressor in the adaptation step.");

  m.def(
      "step_bound",
      [](const std::string& algorithm, double rho_max, std::optional<double> chi_v, double mu,
         double a, double b) {
        const StabilityBound bound = step_bound(make_spec(algorithm, mu, a, b, 50.0), rho_max,
                                                chi_v);
        py::dict out;
        out["algorithm"] = std::string(algorithm_name(bound.algorithm));
        out["rho_max"] = bound.rho_max;
        out["chi_v"] = bound.chi_v ? py::cast(*bound.chi_v) : py::none();
        out["mu_max_positive_branch"] =
            bound.mu_max_positive_branch ? py::cast(*bound.mu_max_positive_branch) : py::none();
        out["mu_max_negative_branch"] =
            bound.mu_max_negative_branch ? py::cast(*bound.mu_max_negative_branch) : py::none();
        return out;
      },
      py::arg("algorithm"), py::arg("rho_max"), py::arg("chi_v") = py::none(),
      py::arg("mu") = 0.1, py::arg("a") = 1.0, py::arg("b") = 1.0,
      "Mean-stability step-size bounds; branches are None when the analysis "
      "provides no bound.");
  m.def("chi_v_gaussian", &chi_v_gaussian, py::arg("sigma_g"));
  m.def("chi_v_impulsive", &chi_v_impulsive, py::arg("sigma_g"), py::arg("impulse_probability"),
        py::arg("impulse_strength"));

  py::class_<NetworkTopology>(m, "NetworkTopology")
      .def_readonly("node_count", &NetworkTopology::node_count)
      .def_readonly("adjacency", &NetworkTopology::adjacency)
      .def_readonly("coordinates", &NetworkTopology::coordinates)
      .def("edge", &NetworkTopology::edge, py::arg("l"), py::arg("n"))
      .def("degree", &NetworkTopology::degree, py::arg("n"))
      .def("neighbors", &NetworkTopology::neighbors, py::arg("n"))
      .def("connected", &NetworkTopology::connected)
      .def("edge_count", &NetworkTopology::edge_count);
  py::class_<CombinationMatrix>(m, "CombinationMatrix")
      .def_readonly("node_count", &CombinationMatrix::node_count)
      .def_readonly("weights", &CombinationMatrix::weights)
      .def("at", &CombinationMatrix::at, py::arg("l"), py::arg("n"));

  m.def("build_probability_graph", &build_probability_graph, py::arg("node_count"),
        py::arg("edge_probability"), py::arg("seed"),
        py::arg("retry_budget") = kDefaultTopologyRetries,
        "Connected Erdos-Renyi style graph; retries until connected.");
  m.def("build_radius_graph", &build_radius_graph, py::arg("node_count"), py::arg("radius"),
        py::arg("seed"), py::arg("retry_budget") = kDefaultTopologyRetries,
        py::arg("domain_size") = 1.0,
        "Connected random geometric graph on a square placement domain.");
  m.def("uniform_combination", &uniform_combination, py::arg("topology"),
        "Column-stochastic 1/degree combination weights.");
  m.def("export_edge_list", &export_edge_list, py::arg("topology"));

  m.def(
      "sample_alpha_stable",
      [](double alpha, double beta, double scale, double location, int count,
         std::uint64_t seed) {
        if (count < 0) throw py::value_error("count must be nonnegative");
        AlphaStableParams params;
        params.alpha = alpha;
        params.beta = beta;
        params.scale = scale;
        params.location = location;
        validate(params);
        RngStream rng = RngStream::derive(seed, Draw::noise);
        std::vector<double> out(static_cast<std::size_t>(count));
        for (double& value : out) value = sample_alpha_stable(params, rng);
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("scale"), py::arg("location"), py::arg("count"),
      py::arg("seed"), "Deterministic batch of alpha-stable draws from one seeded stream.");

  m.def(
      "complexity_table",
      [](int taps, int nodes) {
        py::list rows;
        for (const ComplexityRow& row : complexity_table(taps, nodes)) {
          py::dict entry;
          entry["algorithm"] = row.algorithm;
          entry["recursion"] = row.recursion_label;
          entry["multiplications"] = row.multiplications;
          entry["additions"] = row.additions;
          entry["sign_ops"] = row.sign_ops;
          entry["exp_ops"] = row.exp_ops;
          entry["abs_ops"] = row.abs_ops;
          rows.append(entry);
        }
        return rows;
      },
      py::arg("taps"), py::arg("nodes"), "Per-iteration operation counts, one dict per row.");
  m.def("complexity_csv", &complexity_csv, py::arg("taps"), py::arg("nodes"));

  m.def(
      "canonical_config",
      [](const std::string& text) { return canonical_config(parse_config(text)); },
      py::arg("text"), "Normalized config echo; a fixed point of the parser.");
  m.def(
      "bounds_report",
      [](const std::string& text) { return bounds_report(parse_config(text)); }, py::arg("text"),
      "Step-size bound check for every configured algorithm.");

  m.def(
      "run_experiment",
      [](const std::string& text) {
        const RunResult result = run_experiment(parse_config(text));
        py::list algorithms;
        for (const auto& [spec, mc] : result.algorithms) algorithms.append(curve_dict(spec, mc));
        py::dict out;
        out["algorithms"] = algorithms;
        out["trial_checksums"] = result.trial_checksums;
        out["csv"] = result.csv;
        out["manifest"] = result.manifest;
        out["any_all_diverged"] = result.any_all_diverged;
        return out;
      },
      py::arg("config_text"),
      "Full Monte Carlo run from config text; returns curves and artifacts.");

  py::register_exception<ConfigError>(m, "ConfigError");
}
