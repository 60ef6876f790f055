#include "asymdlms/experiment.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "asymdlms/algorithms.hpp"
#include "asymdlms/rng.hpp"

namespace asymdlms {

const char* software_version() { return "0.1.0"; }

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

constexpr double kDivergenceLinear = 1e10;  // 100 dB

// Seed for the per-trial topology under the redraw policy; the node slot is
// set to 1 so these keys never collide with the retry-attempt keys used
// inside the graph builders.
std::uint64_t topology_seed(const ExperimentConfig& config, int trial) {
  if (config.run.topology_per_trial == TopologyPolicy::fixed)
    return config.run.master_seed;
  return RngStream::derive(config.run.master_seed, Draw::topology,
                           static_cast<std::uint64_t>(trial), 1)
      .next_u64();
}

NetworkTopology build_topology(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.network.rule == NetworkRule::probability)
    return build_probability_graph(config.network.nodes, config.network.param, seed,
                                   config.network.retry_budget);
  return build_radius_graph(config.network.nodes, config.network.param, seed,
                            config.network.retry_budget, config.network.domain_size);
}

struct NoiseSampler {
  const NoiseConfig* config;
  GaussianNoiseParams gaussian;
  ImpulsiveNoiseParams impulsive;
  AlphaStableParams stable;

  explicit NoiseSampler(const ExperimentConfig& experiment) {
    config = &experiment.noise;
    const std::size_t n = static_cast<std::size_t>(experiment.network.nodes);
    switch (config->kind) {
      case NoiseKind::gaussian:
        gaussian.sigma_g.assign(n, config->sigma);
        validate(gaussian);
        break;
      case NoiseKind::impulsive:
        impulsive.gaussian.sigma_g.assign(n, config->sigma);
        impulsive.impulse_probability = config->impulse_probability;
        impulsive.impulse_strength.assign(n, config->impulse_strength);
        validate(impulsive);
        break;
      case NoiseKind::alpha_stable:
        stable = {config->alpha, config->beta, config->scale, config->location};
        validate(stable);
        break;
    }
  }

  double sample(int node, RngStream& rng) const {
    switch (config->kind) {
      case NoiseKind::gaussian: return sample_gaussian(gaussian, node, rng);
      case NoiseKind::impulsive: return sample_impulsive(impulsive, node, rng);
      case NoiseKind::alpha_stable: return sample_alpha_stable(stable, rng);
    }
    return 0.0;
  }
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

}  // namespace

ResolvedExperiment resolve_experiment(const ExperimentConfig& config) {
  ResolvedExperiment resolved;
  resolved.config = config;
  resolved.topology = build_topology(config, topology_seed(config, 0));
  resolved.combination = uniform_combination(resolved.topology);
  resolved.system = draw_unknown_system(config.system.taps, config.run.master_seed);
  switch (config.signal.profile) {
    case CovarianceKind::uniform_scalar:
      resolved.profile = make_uniform_profile(config.network.nodes, config.system.taps,
                                              config.signal.variance);
      break;
    case CovarianceKind::per_node_scalar:
      resolved.profile =
          draw_scalar_profile(config.network.nodes, config.system.taps,
                              config.signal.variance_min, config.signal.variance_max,
                              config.run.master_seed);
      break;
    case CovarianceKind::per_tap_diagonal:
      resolved.profile =
          draw_diagonal_profile(config.network.nodes, config.system.taps,
                                config.signal.variance_min, config.signal.variance_max,
                                config.run.master_seed);
      break;
  }
  return resolved;
}

TrialData generate_trial_data(const ResolvedExperiment& resolved, int trial) {
  const int n_nodes = resolved.config.network.nodes;
  const int taps = resolved.config.system.taps;
  const int iterations = resolved.config.run.iterations;
  const std::uint64_t master = resolved.config.run.master_seed;
  const NoiseSampler sampler(resolved.config);

  TrialData data;
  data.regressors.resize(static_cast<std::size_t>(iterations) * n_nodes * taps);
  data.noise.resize(static_cast<std::size_t>(iterations) * n_nodes);
  std::uint64_t checksum = 0xcbf29ce484222325ull;
  for (int i = 0; i < iterations; ++i) {
    for (int n = 0; n < n_nodes; ++n) {
      const std::size_t cell = static_cast<std::size_t>(i) * n_nodes + n;
      double* x = data.regressors.data() + cell * taps;
      RngStream xs = RngStream::derive(master, Draw::regressor, trial, n, i);
      generate_regressor(resolved.profile, n, xs, {x, static_cast<std::size_t>(taps)});
      RngStream vs = RngStream::derive(master, Draw::noise, trial, n, i);
      data.noise[cell] = sampler.sample(n, vs);
      checksum = fnv1a(x, sizeof(double) * taps, checksum);
      checksum = fnv1a(&data.noise[cell], sizeof(double), checksum);
    }
  }
  data.checksum = checksum;
  return data;
}

MonteCarloResult monte_carlo(const ResolvedExperiment& resolved, const AlgorithmSpec& spec,
                             const std::vector<double>* initial_estimates) {
  validate(spec);
  const int n_nodes = resolved.config.network.nodes;
  const int taps = resolved.config.system.taps;
  const int iterations = resolved.config.run.iterations;
  const int trials = resolved.config.run.monte_carlo;
  const bool redraw = resolved.config.run.topology_per_trial == TopologyPolicy::redraw;
  const std::span<const double> truth{resolved.system.taps};

  MonteCarloResult result;
  std::vector<std::vector<double>> surviving_curves;
  std::vector<double> errors(static_cast<std::size_t>(n_nodes));
  std::vector<double> desired(static_cast<std::size_t>(n_nodes));
  std::vector<double> trial_linear(static_cast<std::size_t>(iterations));

  for (int trial = 0; trial < trials; ++trial) {
    const TrialData data = generate_trial_data(resolved, trial);
    result.data_checksums.push_back(data.checksum);

    NetworkTopology trial_topology;
    CombinationMatrix trial_combination;
    const CombinationMatrix* combination = &resolved.combination;
    if (redraw && trial > 0) {
      trial_topology = build_topology(resolved.config, topology_seed(resolved.config, trial));
      trial_combination = uniform_combination(trial_topology);
      combination = &trial_combination;
    }

    NetworkState state(n_nodes, taps);
    if (initial_estimates) {
      if (initial_estimates->size() != state.estimates.size())
        throw std::invalid_argument("initial_estimates size mismatch");
      state.estimates = *initial_estimates;
    }

    TrialSummary summary;
    summary.initial_msd_db = to_db(network_msd(state.estimates, truth));

    for (int i = 0; i < iterations; ++i) {
      const std::size_t cell = static_cast<std::size_t>(i) * n_nodes;
      for (int n = 0; n < n_nodes; ++n) {
        desired[static_cast<std::size_t>(n)] = measure(
            resolved.system,
            {data.regressors.data() + (cell + n) * taps, static_cast<std::size_t>(taps)},
            data.noise[cell + n]);
      }
      const TrialStatus status = atc_iteration(
          state, *combination, spec,
          {data.regressors.data() + cell * taps, static_cast<std::size_t>(n_nodes) * taps},
          desired, errors, &result.clamp_events);
      double msd = std::numeric_limits<double>::infinity();
      if (status == TrialStatus::ok) msd = network_msd(state.estimates, truth);
      if (!(msd <= kDivergenceLinear)) {
        summary.diverged = true;
        summary.diverged_at_iteration = i;
        break;
      }
      trial_linear[static_cast<std::size_t>(i)] = msd;
    }

    if (!summary.diverged) {
      summary.steady_state_msd_db = steady_state_db(trial_linear);
      surviving_curves.push_back(trial_linear);
    }
    result.trials.push_back(summary);
  }

  if (!surviving_curves.empty()) {
    MsdCurve curve;
    curve.algorithm = algorithm_name(spec.name);
    curve.trials = static_cast<int>(surviving_curves.size());
    curve.diverged_trials = trials - curve.trials;
    const std::vector<double> mean = average_linear_curves(surviving_curves);
    curve.values_db.reserve(mean.size());
    for (double v : mean) curve.values_db.push_back(to_db(v));
    result.curve = std::move(curve);
  }
  return result;
}

namespace {

std::string build_manifest(const RunResult& run) {
  const ResolvedExperiment& resolved = run.resolved;
  std::string out = "# run manifest\n";
  out += fmt("version = %s\n", software_version());
  out += "# config-echo-begin\n";
  out += canonical_config(resolved.config);
  out += "# config-echo-end\n";

  out += "wo =";
  for (double w : resolved.system.taps) out += fmt(" %.17g", w);
  out += "\nvariances =";
  for (double v : resolved.profile.variances) out += fmt(" %.17g", v);
  out += "\n# topology-begin\n";
  out += export_edge_list(resolved.topology);
  out += "# topology-end\n";
  for (std::size_t t = 0; t < run.trial_checksums.size(); ++t)
    out += fmt("trial %zu checksum = %016llx\n", t,
               static_cast<unsigned long long>(run.trial_checksums[t]));
  for (const auto& [spec, mc] : run.algorithms) {
    const int diverged = static_cast<int>(mc.trials.size()) -
                         (mc.curve ? mc.curve->trials : 0);
    out += fmt("algorithm %s diverged_trials = %d clamp_events = %ld\n",
               algorithm_name(spec.name), diverged, mc.clamp_events);
  }
  return out;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
  RunResult run;
  run.resolved = resolve_experiment(config);

  for (const AlgorithmSpec& spec : config.algorithms) {
    MonteCarloResult mc = monte_carlo(run.resolved, spec);
    if (run.trial_checksums.empty()) {
      run.trial_checksums = mc.data_checksums;
    } else if (run.trial_checksums != mc.data_checksums) {
      throw std::logic_error("paired data streams diverged between algorithms");
    }
    if (!mc.curve) run.any_all_diverged = true;
    run.algorithms.emplace_back(spec, std::move(mc));
  }

  std::vector<MsdCurve> curves;
  for (const auto& [spec, mc] : run.algorithms)
    if (mc.curve) curves.push_back(*mc.curve);
  run.csv = curves_to_csv(curves);
  run.manifest = build_manifest(run);
  return run;
}

SweepResult sweep_experiment(const ExperimentConfig& config, const std::string& parameter,
                             const std::vector<double>& values) {
  if (parameter != "a" && parameter != "b" && parameter != "mu")
    throw ConfigError("sweep parameter must be one of: a, b, mu");
  if (values.empty()) throw ConfigError("sweep value list is empty");

  const bool step_size = parameter == "mu";
  bool applies = false;
  for (const auto& spec : config.algorithms)
    applies = applies || step_size || is_asymmetric(spec.name);
  if (!applies)
    throw ConfigError("parameter '" + parameter +
                      "' applies to none of the configured algorithms");

  SweepResult sweep;
  sweep.parameter = parameter;
  std::string summary = "value,algorithm,final_msd_db\n";
  for (double value : values) {
    ExperimentConfig variant = config;
    for (auto& spec : variant.algorithms) {
      if (step_size)
        spec.mu = value;
      else if (is_asymmetric(spec.name)) {
        if (parameter == "a")
          spec.a = value;
        else
          spec.b = value;
      }
    }
    RunResult run = run_experiment(variant);
    sweep.any_all_diverged = sweep.any_all_diverged || run.any_all_diverged;
    for (const auto& [spec, mc] : run.algorithms)
      if (mc.curve)
        summary += fmt("%g,%s,%.6f\n", value, algorithm_name(spec.name),
                       curve_final_db(mc.curve->values_db));
    sweep.runs.push_back({value, std::move(run)});
  }
  sweep.summary_csv = std::move(summary);
  return sweep;
}

std::string bounds_report(const ExperimentConfig& config) {
  const ResolvedExperiment resolved = resolve_experiment(config);
  const double rho_max = resolved.profile.max_variance();

  std::optional<double> chi;
  std::string chi_line;
  switch (config.noise.kind) {
    case NoiseKind::gaussian:
      if (config.noise.sigma > 0.0) {
        chi = chi_v_gaussian(config.noise.sigma);
        chi_line = fmt("chi_v = %.6g (gaussian noise)", *chi);
      } else {
        chi_line = "chi_v = not available (sigma is zero)";
      }
      break;
    case NoiseKind::impulsive:
      if (config.noise.sigma > 0.0) {
        chi = chi_v_impulsive(config.noise.sigma, config.noise.impulse_probability,
                              config.noise.impulse_strength);
        chi_line = fmt("chi_v = %.6g (impulsive noise)", *chi);
      } else {
        chi_line = "chi_v = not available (sigma is zero)";
      }
      break;
    case NoiseKind::alpha_stable:
      chi_line = "chi_v = not available (alpha_stable noise has no finite variance)";
      break;
  }

  std::string out = "step-size stability bounds\n";
  out += fmt("rho_max = %.6g (largest configured input variance)\n", rho_max);
  out += chi_line + "\n";
  for (const auto& spec : config.algorithms) {
    const char* name = algorithm_name(spec.name);
    if (spec.name == Algorithm::dselms || spec.name == Algorithm::dllad) {
      out += fmt("%s: mu = %g, bound not provided\n", name, spec.mu);
      continue;
    }
    if (spec.name == Algorithm::dllclms && !chi) {
      out += fmt("%s: mu = %g, bound not available (chi_v undefined for this noise)\n",
                 name, spec.mu);
      continue;
    }
    const StabilityBound bound = step_bound(spec, rho_max, chi);
    const double pos = *bound.mu_max_positive_branch;
    const double neg = *bound.mu_max_negative_branch;
    std::string flags;
    if (spec.mu > pos) flags = "VIOLATION: mu exceeds the positive-branch bound";
    if (spec.mu > neg) {
      if (!flags.empty()) flags += "; ";
      flags += "VIOLATION: mu exceeds the negative-branch bound";
    }
    if (flags.empty()) flags = "ok";
    out += fmt("%s: mu = %g, positive branch %.6g, negative branch %.6g, %s\n", name,
               spec.mu, pos, neg, flags.c_str());
  }
  return out;
}

std::string extract_manifest_config(const std::string& manifest) {
  const std::string begin = "# config-echo-begin\n";
  const std::string end = "# config-echo-end\n";
  const auto b = manifest.find(begin);
  const auto e = manifest.find(end);
  if (b == std::string::npos || e == std::string::npos || e < b)
    throw std::runtime_error("manifest does not contain a config echo");
  const auto start = b + begin.size();
  return manifest.substr(start, e - start);
}

}  // namespace asymdlms
