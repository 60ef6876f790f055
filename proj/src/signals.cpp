#include "asymdlms/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asymdlms {

double CovarianceProfile::variance(int node, int tap) const {
  switch (kind) {
    case CovarianceKind::uniform_scalar:
      return variances[0];
    case CovarianceKind::per_node_scalar:
      return variances[static_cast<std::size_t>(node)];
    case CovarianceKind::per_tap_diagonal:
      return variances[static_cast<std::size_t>(node) * taps + tap];
  }
  return 0.0;
}

double CovarianceProfile::max_variance() const {
  return *std::max_element(variances.begin(), variances.end());
}

namespace {

void check_positive_variances(const std::vector<double>& variances) {
  for (double v : variances)
    if (!(v > 0.0)) throw std::invalid_argument("variance must be positive");
}

}  // namespace

UnknownSystem draw_unknown_system(int taps, std::uint64_t master_seed) {
  if (taps < 1) throw std::invalid_argument("taps must be at least 1");
  RngStream stream = RngStream::derive(master_seed, Draw::weights);
  UnknownSystem system;
  system.taps.resize(static_cast<std::size_t>(taps));
  for (double& w : system.taps) w = 2.0 * stream.next_unit() - 1.0;
  return system;
}

CovarianceProfile make_uniform_profile(int node_count, int taps, double variance) {
  CovarianceProfile p{CovarianceKind::uniform_scalar, node_count, taps, {variance}};
  check_positive_variances(p.variances);
  return p;
}

CovarianceProfile draw_scalar_profile(int node_count, int taps, double lo, double hi,
                                      std::uint64_t master_seed) {
  if (!(lo > 0.0 && hi >= lo))
    throw std::invalid_argument("variance range must satisfy 0 < lo <= hi");
  RngStream stream = RngStream::derive(master_seed, Draw::node_variance);
  CovarianceProfile p{CovarianceKind::per_node_scalar, node_count, taps, {}};
  p.variances.resize(static_cast<std::size_t>(node_count));
  for (double& v : p.variances) v = lo + (hi - lo) * stream.next_unit();
  return p;
}

CovarianceProfile draw_diagonal_profile(int node_count, int taps, double lo, double hi,
                                        std::uint64_t master_seed) {
  if (!(lo > 0.0 && hi >= lo))
    throw std::invalid_argument("variance range must satisfy 0 < lo <= hi");
  RngStream stream = RngStream::derive(master_seed, Draw::node_variance);
  CovarianceProfile p{CovarianceKind::per_tap_diagonal, node_count, taps, {}};
  p.variances.resize(static_cast<std::size_t>(node_count) * taps);
  for (double& v : p.variances) v = lo + (hi - lo) * stream.next_unit();
  return p;
}

void generate_regressor(const CovarianceProfile& profile, int node, RngStream& rng,
                        std::span<double> out) {
  for (int j = 0; j < static_cast<int>(out.size()); ++j)
    out[j] = std::sqrt(profile.variance(node, j)) * rng.next_normal();
}

double measure(const UnknownSystem& system, std::span<const double> regressor,
               double noise_sample) {
  if (regressor.size() != system.taps.size())
    throw std::invalid_argument("regressor length must match tap count");
  double acc = 0.0;
  for (std::size_t j = 0; j < regressor.size(); ++j) acc += system.taps[j] * regressor[j];
  return acc + noise_sample;
}

double estimation_error(std::span<const double> weights, std::span<const double> regressor,
                        double desired) {
  if (regressor.size() != weights.size())
    throw std::invalid_argument("regressor length must match weight length");
  double acc = 0.0;
  for (std::size_t j = 0; j < regressor.size(); ++j) acc += weights[j] * regressor[j];
  return desired - acc;
}

}  // namespace asymdlms
