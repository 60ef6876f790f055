#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "asymdlms/topology.hpp"

namespace asymdlms {

enum class Algorithm { dlms, dselms, dllad, dllclms, dqqclms, dleclms };

const char* algorithm_name(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_name(std::string_view name);
bool is_asymmetric(Algorithm algorithm);  // uses the (a, b) cut-offs

inline constexpr double kDefaultLecClamp = 50.0;

struct AlgorithmSpec {
  Algorithm name = Algorithm::dlms;
  double mu = 0.0;
  double a = 1.0;
  double b = 1.0;
  double lec_clamp = kDefaultLecClamp;  // saturation for a*e before exponentiation
};

void validate(const AlgorithmSpec& spec);

// Asymmetric error penalties. cost_lec saturates a*e at +-clamp so a single
// impulsive error cannot overflow the exponential; the saturated cost is the
// cost evaluated at the clamp point, which keeps the value nonnegative.
double cost_llc(double e, double a, double b);
double cost_qqc(double e, double a, double b);
double cost_lec(double e, double a, double b, double clamp = kDefaultLecClamp);

// Scalar factor f(e) such that the adaptation step is phi = W + f(e) * X.
// Increments *clamp_events when the LEC exponent saturates.
double update_factor(const AlgorithmSpec& spec, double e, long* clamp_events = nullptr);

// One adaptation step: phi = W + f(d - W.X) * X. Returns the pre-adaptation
// error through error_out when provided.
void adapt(const AlgorithmSpec& spec, std::span<const double> weights,
           std::span<const double> regressor, double desired, std::span<double> phi,
           double* error_out = nullptr, long* clamp_events = nullptr);

// Combination step: estimate_n = sum over l in N_n of c(l, n) * phi_l.
void combine(const CombinationMatrix& weights, std::span<const double> intermediates,
             int taps, std::span<double> estimates);

struct NetworkState {
  int node_count = 0;
  int taps = 0;
  std::vector<double> estimates;      // node-major, node_count * taps, starts at zero
  std::vector<double> intermediates;  // scratch for the adaptation results

  NetworkState(int node_count_, int taps_)
      : node_count(node_count_),
        taps(taps_),
        estimates(static_cast<std::size_t>(node_count_) * taps_, 0.0),
        intermediates(static_cast<std::size_t>(node_count_) * taps_, 0.0) {}
};

enum class TrialStatus { ok, diverged };

// Adapt every node with its own data, then combine neighborhoods. Per-node
// pre-adaptation errors are written to errors. Returns diverged when any
// combined estimate is non-finite.
TrialStatus atc_iteration(NetworkState& state, const CombinationMatrix& weights,
                          const AlgorithmSpec& spec, std::span<const double> regressors,
                          std::span<const double> desired, std::span<double> errors,
                          long* clamp_events = nullptr);

// Mean-stability step-size bounds. Empty branches mean no bound is provided
// by the analysis (DSELMS, DLLAD). DLMS is reported through the quadratic
// bound with a = b = 1. chi_v is required for DLLCLMS and ignored otherwise.
struct StabilityBound {
  Algorithm algorithm = Algorithm::dlms;
  double rho_max = 0.0;
  std::optional<double> chi_v;
  std::optional<double> mu_max_positive_branch;
  std::optional<double> mu_max_negative_branch;
};

StabilityBound step_bound(const AlgorithmSpec& spec, double rho_max,
                          std::optional<double> chi_v = std::nullopt);

// Bound factor X_v for the sign-update analysis, per noise model; the
// impulsive form is sqrt(2/pi) * ((1-P_r)/sigma_g + P_r/(sqrt(I) * sigma_g)).
double chi_v_gaussian(double sigma_g);
double chi_v_impulsive(double sigma_g, double impulse_probability, double impulse_strength);

// Deviation of the LEC update factor from its linearization: (exp(a*e) - 1) - a*e.
double lec_linearization_error(double e, double a);

}  // namespace asymdlms
