#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "asymdlms/algorithms.hpp"
#include "asymdlms/signals.hpp"

namespace asymdlms {

enum class NetworkRule { probability, radius };
enum class NoiseKind { gaussian, impulsive, alpha_stable };
enum class TopologyPolicy { fixed, redraw };

struct NetworkConfig {
  int nodes = 20;
  NetworkRule rule = NetworkRule::probability;
  double param = 0.2;  // edge probability or radius, depending on rule
  int retry_budget = 1000;
  double domain_size = 1.0;
};

struct SystemConfig {
  int taps = 16;
  std::string weight_rule = "uniform";  // W_o entries i.i.d. uniform on [-1, 1]
};

struct SignalConfig {
  CovarianceKind profile = CovarianceKind::per_node_scalar;
  double variance = 1.0;      // uniform_scalar
  double variance_min = 0.5;  // draw range for the random profiles
  double variance_max = 1.5;
};

struct NoiseConfig {
  NoiseKind kind = NoiseKind::alpha_stable;
  double sigma = 0.1;                 // gaussian / impulsive
  double impulse_probability = 0.01;  // impulsive
  double impulse_strength = 100.0;    // impulsive, variance multiplier
  double alpha = 1.6;                 // alpha_stable
  double beta = 0.05;
  double scale = 2000.0;
  double location = 0.0;
};

struct RunConfig {
  int iterations = 2000;
  int monte_carlo = 20;
  std::uint64_t master_seed = 0;
  TopologyPolicy topology_per_trial = TopologyPolicy::fixed;
};

struct ExperimentConfig {
  NetworkConfig network;
  SystemConfig system;
  SignalConfig signal;
  NoiseConfig noise;
  std::vector<AlgorithmSpec> algorithms;  // empty input section list gets defaults
  RunConfig run;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// DLMS, DSELMS, DLLAD at mu 0.35; DLLCLMS (0.4, 0.8, 4), DQQCLMS (0.4, 0.8, 6),
// DLECLMS (0.4, 0.32, 6).
std::vector<AlgorithmSpec> default_algorithms();

// Sectioned key = value format, described in the README. Unknown sections and
// keys are rejected with line numbers. master_seed is required unless
// require_master_seed is false (the CLI passes false when --seed is given).
ExperimentConfig parse_config(std::string_view text, bool require_master_seed = true);

// Full deterministic echo of a resolved config; parsing it back yields the
// same config, byte-identical canonical form.
std::string canonical_config(const ExperimentConfig& config);

const char* network_rule_name(NetworkRule rule);
const char* noise_kind_name(NoiseKind kind);
const char* covariance_kind_name(CovarianceKind kind);
const char* topology_policy_name(TopologyPolicy policy);

}  // namespace asymdlms
