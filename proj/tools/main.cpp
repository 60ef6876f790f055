#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asymdlms/config.hpp"
#include "asymdlms/experiment.hpp"
#include "asymdlms/svg_plot.hpp"
#include "asymdlms/topology.hpp"

namespace {

namespace fs = std::filesystem;
using namespace asymdlms;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitPartial = 3;  // some algorithm lost every trial to divergence

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

fs::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ASYMDLMS_OUT_DIR"); env && *env) return env;
  return ".";
}

ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
  const std::string text = read_file(path);
  ExperimentConfig config = parse_config(text, /*require_master_seed=*/!seed.has_value());
  if (seed) config.run.master_seed = *seed;
  return config;
}

void print_run_summary(const RunResult& run) {
  for (const auto& [spec, mc] : run.algorithms) {
    const int total = static_cast<int>(mc.trials.size());
    const int diverged = total - (mc.curve ? mc.curve->trials : 0);
    std::printf("%s: %d/%d trials averaged", algorithm_name(spec.name), total - diverged,
                total);
    if (diverged == total) std::printf(" (all trials diverged)");
    if (mc.clamp_events > 0) std::printf(", %ld clamp events", mc.clamp_events);
    std::printf("\n");
  }
}

int command_run(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& out_dir_flag, bool svg) {
  const ExperimentConfig config = load_config(config_path, seed);
  const RunResult run = run_experiment(config);
  const fs::path dir = resolve_out_dir(out_dir_flag);
  fs::create_directories(dir);
  write_file(dir / "msd.csv", run.csv);
  write_file(dir / "manifest.txt", run.manifest);
  if (svg) write_file(dir / "msd.svg", render_svg_from_csv(run.csv));
  print_run_summary(run);
  std::printf("wrote %s\n", (dir / "msd.csv").string().c_str());
  return run.any_all_diverged ? kExitPartial : kExitOk;
}

int command_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
                  const std::string& out_dir_flag, const std::string& parameter,
                  const std::vector<double>& values) {
  const ExperimentConfig config = load_config(config_path, seed);
  const SweepResult sweep = sweep_experiment(config, parameter, values);
  const fs::path dir = resolve_out_dir(out_dir_flag);
  fs::create_directories(dir);
  for (const SweepRun& run : sweep.runs) {
    char value_text[32];
    std::snprintf(value_text, sizeof(value_text), "%g", run.value);
    const std::string stem = "sweep_" + parameter + "_" + value_text;
    write_file(dir / (stem + ".csv"), run.result.csv);
    write_file(dir / (stem + ".manifest.txt"), run.result.manifest);
  }
  write_file(dir / "summary.csv", sweep.summary_csv);
  std::printf("wrote %s\n", (dir / "summary.csv").string().c_str());
  return sweep.any_all_diverged ? kExitPartial : kExitOk;
}

int command_bounds(const std::string& config_path, std::optional<std::uint64_t> seed) {
  const ExperimentConfig config = load_config(config_path, seed);
  std::fputs(bounds_report(config).c_str(), stdout);
  return kExitOk;
}

int command_topology(const std::string& config_path, std::optional<std::uint64_t> seed,
                     const std::string& out_path) {
  const ExperimentConfig config = load_config(config_path, seed);
  const ResolvedExperiment resolved = resolve_experiment(config);
  write_file(out_path, export_edge_list(resolved.topology));
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

int command_plot(const std::string& csv_path, const std::string& out_path) {
  write_file(out_path, render_svg_from_csv(read_file(csv_path)));
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diffusion adaptive-filter network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string out_path;
  std::string parameter;
  std::string csv_path;
  std::vector<double> values;
  std::optional<std::uint64_t> seed;
  bool svg = false;

  auto add_seed = [&seed](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "override the config master_seed");
  };

  CLI::App* run = app.add_subcommand("run", "run the configured experiment");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--out-dir", out_dir, "output directory (or ASYMDLMS_OUT_DIR)");
  run->add_flag("--svg", svg, "also write an SVG plot of the MSD curves");
  add_seed(run);

  CLI::App* sweep = app.add_subcommand("sweep", "repeat the run over a parameter grid");
  sweep->add_option("config", config_path, "experiment config file")->required();
  sweep->add_option("--param", parameter, "swept parameter: a, b, or mu")->required();
  sweep->add_option("--values", values, "comma-separated parameter values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out-dir", out_dir, "output directory (or ASYMDLMS_OUT_DIR)");
  add_seed(sweep);

  CLI::App* bounds = app.add_subcommand("bounds", "print step-size stability bounds");
  bounds->add_option("config", config_path, "experiment config file")->required();
  add_seed(bounds);

  CLI::App* topology = app.add_subcommand("topology", "export the network edge list");
  topology->add_option("config", config_path, "experiment config file")->required();
  topology->add_option("--out", out_path, "edge-list output file")->required();
  add_seed(topology);

  CLI::App* plot = app.add_subcommand("plot", "render an MSD CSV as SVG");
  plot->add_option("csv", csv_path, "MSD CSV file")->required();
  plot->add_option("--out", out_path, "SVG output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return command_run(config_path, seed, out_dir, svg);
    if (sweep->parsed()) return command_sweep(config_path, seed, out_dir, parameter, values);
    if (bounds->parsed()) return command_bounds(config_path, seed);
    if (topology->parsed()) return command_topology(config_path, seed, out_path);
    if (plot->parsed()) return command_plot(csv_path, out_path);
  } catch (const ConfigError& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return kExitConfig;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
