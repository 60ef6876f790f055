#include "asymdlms/algorithms.hpp"

#include <cmath>
#include <stdexcept>

#include "asymdlms/signals.hpp"

namespace asymdlms {

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::dlms: return "DLMS";
    case Algorithm::dselms: return "DSELMS";
    case Algorithm::dllad: return "DLLAD";
    case Algorithm::dllclms: return "DLLCLMS";
    case Algorithm::dqqclms: return "DQQCLMS";
    case Algorithm::dleclms: return "DLECLMS";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "DLMS") return Algorithm::dlms;
  if (name == "DSELMS") return Algorithm::dselms;
  if (name == "DLLAD") return Algorithm::dllad;
  if (name == "DLLCLMS") return Algorithm::dllclms;
  if (name == "DQQCLMS") return Algorithm::dqqclms;
  if (name == "DLECLMS") return Algorithm::dleclms;
  return std::nullopt;
}

bool is_asymmetric(Algorithm algorithm) {
  return algorithm == Algorithm::dllclms || algorithm == Algorithm::dqqclms ||
         algorithm == Algorithm::dleclms;
}

void validate(const AlgorithmSpec& spec) {
  if (!(spec.mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(spec.a > 0.0)) throw std::invalid_argument("a must be positive");
  if (!(spec.b > 0.0)) throw std::invalid_argument("b must be positive");
  if (!(spec.lec_clamp > 0.0)) throw std::invalid_argument("clamp must be positive");
}

double cost_llc(double e, double a, double b) {
  return e > 0.0 ? a * e : b * std::abs(e);
}

double cost_qqc(double e, double a, double b) {
  return e > 0.0 ? 0.5 * a * e * e : 0.5 * b * e * e;
}

double cost_lec(double e, double a, double b, double clamp) {
  double z = a * e;
  if (z > clamp) z = clamp;
  if (z < -clamp) z = -clamp;
  return b * (std::expm1(z) - z);
}

namespace {

double sign(double e) {
  if (e > 0.0) return 1.0;
  if (e < 0.0) return -1.0;
  return 0.0;
}

}  // namespace

double update_factor(const AlgorithmSpec& spec, double e, long* clamp_events) {
  switch (spec.name) {
    case Algorithm::dlms:
      return spec.mu * e;
    case Algorithm::dselms:
      return spec.mu * sign(e);
    case Algorithm::dllad:
      return spec.mu * (e / (1.0 + std::abs(e)));
    case Algorithm::dllclms:
      return e > 0.0 ? (spec.mu * spec.a) * sign(e) : (spec.mu * spec.b) * sign(e);
    case Algorithm::dqqclms:
      return e > 0.0 ? (spec.mu * spec.a) * e : (spec.mu * spec.b) * e;
    case Algorithm::dleclms: {
      double z = spec.a * e;
      if (z > spec.lec_clamp) {
        z = spec.lec_clamp;
        if (clamp_events) ++*clamp_events;
      } else if (z < -spec.lec_clamp) {
        z = -spec.lec_clamp;
        if (clamp_events) ++*clamp_events;
      }
      return (spec.mu * spec.a * spec.b) * std::expm1(z);
    }
  }
  return 0.0;
}

void adapt(const AlgorithmSpec& spec, std::span<const double> weights,
           std::span<const double> regressor, double desired, std::span<double> phi,
           double* error_out, long* clamp_events) {
  const double e = estimation_error(weights, regressor, desired);
  if (error_out) *error_out = e;
  const double f = update_factor(spec, e, clamp_events);
  for (std::size_t j = 0; j < weights.size(); ++j)
    phi[j] = weights[j] + f * regressor[j];
}

void combine(const CombinationMatrix& weights, std::span<const double> intermediates,
             int taps, std::span<double> estimates) {
  const int n_nodes = weights.node_count;
  if (intermediates.size() != static_cast<std::size_t>(n_nodes) * taps ||
      estimates.size() != intermediates.size())
    throw std::invalid_argument("combine dimensions do not match");
  for (int n = 0; n < n_nodes; ++n) {
    double* out = estimates.data() + static_cast<std::size_t>(n) * taps;
    for (int j = 0; j < taps; ++j) out[j] = 0.0;
    for (int l = 0; l < n_nodes; ++l) {
      const double c = weights.at(l, n);
      if (c == 0.0) continue;
      const double* phi = intermediates.data() + static_cast<std::size_t>(l) * taps;
      for (int j = 0; j < taps; ++j) out[j] += c * phi[j];
    }
  }
}

TrialStatus atc_iteration(NetworkState& state, const CombinationMatrix& weights,
                          const AlgorithmSpec& spec, std::span<const double> regressors,
                          std::span<const double> desired, std::span<double> errors,
                          long* clamp_events) {
  const int n_nodes = state.node_count;
  const int taps = state.taps;
  for (int n = 0; n < n_nodes; ++n) {
    const std::size_t off = static_cast<std::size_t>(n) * taps;
    adapt(spec, {state.estimates.data() + off, static_cast<std::size_t>(taps)},
          {regressors.data() + off, static_cast<std::size_t>(taps)}, desired[n],
          {state.intermediates.data() + off, static_cast<std::size_t>(taps)}, &errors[n],
          clamp_events);
  }
  combine(weights, state.intermediates, taps, state.estimates);
  for (double w : state.estimates)
    if (!std::isfinite(w)) return TrialStatus::diverged;
  return TrialStatus::ok;
}

StabilityBound step_bound(const AlgorithmSpec& spec, double rho_max,
                          std::optional<double> chi_v) {
  if (!(rho_max > 0.0)) throw std::invalid_argument("rho_max must be positive");
  StabilityBound bound;
  bound.algorithm = spec.name;
  bound.rho_max = rho_max;
  switch (spec.name) {
    case Algorithm::dlms:
      bound.mu_max_positive_branch = 2.0 / rho_max;
      bound.mu_max_negative_branch = 2.0 / rho_max;
      break;
    case Algorithm::dqqclms:
      bound.mu_max_positive_branch = 2.0 / (spec.a * rho_max);
      bound.mu_max_negative_branch = 2.0 / (spec.b * rho_max);
      break;
    case Algorithm::dleclms: {
      const double value = 2.0 / (spec.a * spec.a * spec.b * rho_max);
      bound.mu_max_positive_branch = value;
      bound.mu_max_negative_branch = value;
      break;
    }
    case Algorithm::dllclms: {
      if (!chi_v) throw std::invalid_argument("chi_v required for the DLLCLMS bound");
      bound.chi_v = chi_v;
      bound.mu_max_positive_branch = 2.0 / (spec.a * *chi_v * rho_max);
      bound.mu_max_negative_branch = 2.0 / (spec.b * *chi_v * rho_max);
      break;
    }
    case Algorithm::dselms:
    case Algorithm::dllad:
      break;  // no bound provided by the analysis
  }
  return bound;
}

double chi_v_gaussian(double sigma_g) {
  if (!(sigma_g > 0.0)) throw std::invalid_argument("sigma_g must be positive");
  return std::sqrt(2.0 / 3.141592653589793238462643383279502884) / sigma_g;
}

double chi_v_impulsive(double sigma_g, double impulse_probability, double impulse_strength) {
  if (!(sigma_g > 0.0)) throw std::invalid_argument("sigma_g must be positive");
  const double sigma_im = std::sqrt(impulse_strength) * sigma_g;
  return std::sqrt(2.0 / 3.141592653589793238462643383279502884) *
         ((1.0 - impulse_probability) / sigma_g + impulse_probability / sigma_im);
}

double lec_linearization_error(double e, double a) {
  const double z = a * e;
  return std::expm1(z) - z;
}

}  // namespace asymdlms
