#pragma once

#include <vector>

#include "asymdlms/rng.hpp"

namespace asymdlms {

struct GaussianNoiseParams {
  std::vector<double> sigma_g;  // per-node standard deviation
};

struct ImpulsiveNoiseParams {
  GaussianNoiseParams gaussian;
  double impulse_probability = 0.0;       // P_r
  std::vector<double> impulse_strength;   // per-node variance multiplier, >= 1
};

struct AlphaStableParams {
  double alpha = 2.0;    // stability index, (0, 2]
  double beta = 0.0;     // skewness, [-1, 1]
  double scale = 1.0;    // dispersion, > 0
  double location = 0.0;
};

void validate(const GaussianNoiseParams& params);
void validate(const ImpulsiveNoiseParams& params);
void validate(const AlphaStableParams& params);

double sample_gaussian(const GaussianNoiseParams& params, int node, RngStream& rng);

struct ImpulsiveDraw {
  double value;
  bool impulse;  // the Bernoulli gate outcome for this draw
};

// Draw order is a fixed contract: the Gaussian component first (two
// uniforms), then the Bernoulli gate (one uniform), then the impulse
// Gaussian only when the gate fired. With impulse_probability = 0 a fresh
// stream therefore yields exactly the sample_gaussian value.
ImpulsiveDraw sample_impulsive_logged(const ImpulsiveNoiseParams& params, int node,
                                      RngStream& rng);
double sample_impulsive(const ImpulsiveNoiseParams& params, int node, RngStream& rng);

// Chambers-Mallows-Stuck sampler in the 1-parameterization, with the
// standard alpha = 1 special case. Consumes exactly two uniforms per draw.
// alpha = 2 reduces to a Gaussian with variance 2 * scale^2.
double sample_alpha_stable(const AlphaStableParams& params, RngStream& rng);

}  // namespace asymdlms
