#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "asymdlms/rng.hpp"

namespace asymdlms {

struct UnknownSystem {
  std::vector<double> taps;  // W_o, length M
};

enum class CovarianceKind { uniform_scalar, per_node_scalar, per_tap_diagonal };

// Diagonal input covariance per node. variances holds 1 entry
// (uniform_scalar), node_count entries (per_node_scalar), or
// node_count * taps entries in node-major order (per_tap_diagonal).
struct CovarianceProfile {
  CovarianceKind kind = CovarianceKind::uniform_scalar;
  int node_count = 0;
  int taps = 0;
  std::vector<double> variances;

  double variance(int node, int tap) const;
  double max_variance() const;  // rho_max of the diagonal covariance family
};

// W_o entries are i.i.d. uniform on [-1, 1] from the master seed.
UnknownSystem draw_unknown_system(int taps, std::uint64_t master_seed);

CovarianceProfile make_uniform_profile(int node_count, int taps, double variance);
CovarianceProfile draw_scalar_profile(int node_count, int taps, double lo, double hi,
                                      std::uint64_t master_seed);
CovarianceProfile draw_diagonal_profile(int node_count, int taps, double lo, double hi,
                                        std::uint64_t master_seed);

// Fresh zero-mean Gaussian vector with the node's diagonal covariance.
void generate_regressor(const CovarianceProfile& profile, int node, RngStream& rng,
                        std::span<double> out);

double measure(const UnknownSystem& system, std::span<const double> regressor,
               double noise_sample);

double estimation_error(std::span<const double> weights, std::span<const double> regressor,
                        double desired);

}  // namespace asymdlms
