#include "asymdlms/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace asymdlms {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

void validate(const GaussianNoiseParams& params) {
  if (params.sigma_g.empty()) throw std::invalid_argument("sigma_g must not be empty");
  for (double s : params.sigma_g)
    if (!(s >= 0.0)) throw std::invalid_argument("sigma_g must be nonnegative");
}

void validate(const ImpulsiveNoiseParams& params) {
  validate(params.gaussian);
  if (!(params.impulse_probability >= 0.0 && params.impulse_probability <= 1.0))
    throw std::invalid_argument("impulse_probability must lie in [0, 1]");
  if (params.impulse_strength.size() != params.gaussian.sigma_g.size())
    throw std::invalid_argument("impulse_strength must have one entry per node");
  for (double s : params.impulse_strength)
    if (!(s >= 1.0)) throw std::invalid_argument("impulse_strength must be at least 1");
}

void validate(const AlphaStableParams& params) {
  if (!(params.alpha > 0.0 && params.alpha <= 2.0))
    throw std::invalid_argument("alpha must lie in (0, 2]");
  if (!(params.beta >= -1.0 && params.beta <= 1.0))
    throw std::invalid_argument("beta must lie in [-1, 1]");
  if (!(params.scale > 0.0)) throw std::invalid_argument("scale must be positive");
  if (!std::isfinite(params.location))
    throw std::invalid_argument("location must be finite");
}

double sample_gaussian(const GaussianNoiseParams& params, int node, RngStream& rng) {
  return params.sigma_g[static_cast<std::size_t>(node)] * rng.next_normal();
}

ImpulsiveDraw sample_impulsive_logged(const ImpulsiveNoiseParams& params, int node,
                                      RngStream& rng) {
  const double g = sample_gaussian(params.gaussian, node, rng);
  const bool fired = rng.next_unit() < params.impulse_probability;
  double value = g;
  if (fired) {
    const double sigma_im =
        std::sqrt(params.impulse_strength[static_cast<std::size_t>(node)]) *
        params.gaussian.sigma_g[static_cast<std::size_t>(node)];
    value += sigma_im * rng.next_normal();
  }
  return {value, fired};
}

double sample_impulsive(const ImpulsiveNoiseParams& params, int node, RngStream& rng) {
  return sample_impulsive_logged(params, node, rng).value;
}

double sample_alpha_stable(const AlphaStableParams& params, RngStream& rng) {
  validate(params);
  const double u = kPi * (rng.next_unit() - 0.5);  // uniform on (-pi/2, pi/2)
  const double w = -std::log(rng.next_unit());     // exponential(1)

  if (params.alpha == 1.0) {
    const double t = kHalfPi + params.beta * u;
    const double x = (2.0 / kPi) *
                     (t * std::tan(u) -
                      params.beta * std::log((kHalfPi * w * std::cos(u)) / t));
    return params.scale * x + params.location +
           params.beta * (2.0 / kPi) * params.scale * std::log(params.scale);
  }

  const double tb = params.beta * std::tan(kHalfPi * params.alpha);
  const double shift = std::atan(tb) / params.alpha;
  const double prefactor = std::pow(1.0 + tb * tb, 1.0 / (2.0 * params.alpha));
  const double x = prefactor * std::sin(params.alpha * (u + shift)) /
                   std::pow(std::cos(u), 1.0 / params.alpha) *
                   std::pow(std::cos(u - params.alpha * (u + shift)) / w,
                            (1.0 - params.alpha) / params.alpha);
  return params.scale * x + params.location;
}

}  // namespace asymdlms
