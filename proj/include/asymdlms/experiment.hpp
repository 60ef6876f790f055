#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asymdlms/config.hpp"
#include "asymdlms/metrics.hpp"
#include "asymdlms/noise.hpp"
#include "asymdlms/signals.hpp"
#include "asymdlms/topology.hpp"

namespace asymdlms {

const char* software_version();

// Config with all randomized ingredients drawn from the master seed. Under
// the redraw policy the stored topology is the trial-0 draw; later trials
// redraw with their own substream.
struct ResolvedExperiment {
  ExperimentConfig config;
  NetworkTopology topology;
  CombinationMatrix combination;
  UnknownSystem system;
  CovarianceProfile profile;
};

ResolvedExperiment resolve_experiment(const ExperimentConfig& config);

// One trial's full data block, identical for every algorithm: regressors
// indexed (iteration * N + node) * M + tap, noise indexed iteration * N +
// node. The checksum (FNV-1a over the raw doubles in generation order) is
// the paired-stream evidence recorded in the manifest.
struct TrialData {
  std::vector<double> regressors;
  std::vector<double> noise;
  std::uint64_t checksum = 0;
};

TrialData generate_trial_data(const ResolvedExperiment& resolved, int trial);

struct TrialSummary {
  bool diverged = false;
  int diverged_at_iteration = -1;
  double initial_msd_db = 0.0;   // at the all-zero initialization
  double steady_state_msd_db = 0.0;  // meaningful only when not diverged
};

struct MonteCarloResult {
  std::optional<MsdCurve> curve;  // absent when every trial diverged
  std::vector<TrialSummary> trials;
  std::vector<std::uint64_t> data_checksums;  // per trial, algorithm-independent
  long clamp_events = 0;
};

// Runs the configured trials for one algorithm. Estimates start at zero;
// initial_estimates overrides that (node-major N * M) when provided.
MonteCarloResult monte_carlo(const ResolvedExperiment& resolved, const AlgorithmSpec& spec,
                             const std::vector<double>* initial_estimates = nullptr);

struct RunResult {
  ResolvedExperiment resolved;
  std::vector<std::pair<AlgorithmSpec, MonteCarloResult>> algorithms;
  std::vector<std::uint64_t> trial_checksums;
  std::string csv;
  std::string manifest;
  bool any_all_diverged = false;
};

RunResult run_experiment(const ExperimentConfig& config);

struct SweepRun {
  double value = 0.0;
  RunResult result;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepRun> runs;
  std::string summary_csv;  // value,algorithm,final_msd_db
  bool any_all_diverged = false;
};

// parameter is one of "a", "b", "mu"; it is applied to every configured
// algorithm it can apply to (the asymmetric three for a/b, all for mu).
SweepResult sweep_experiment(const ExperimentConfig& config, const std::string& parameter,
                             const std::vector<double>& values);

std::string bounds_report(const ExperimentConfig& config);

// The canonical config block embedded in a manifest, for replay.
std::string extract_manifest_config(const std::string& manifest);

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace asymdlms
