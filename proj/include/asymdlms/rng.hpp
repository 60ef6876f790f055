#pragma once

#include <cmath>
#include <cstdint>

namespace asymdlms {

inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Purpose tag separating the substreams used for different kinds of draws.
enum class Draw : std::uint64_t {
  topology = 1,
  placement = 2,
  weights = 3,
  node_variance = 4,
  regressor = 5,
  noise = 6,
};

// Counter-based SplitMix64 stream. Substreams are derived from the master
// seed and a (purpose, trial, node, iteration) key. The derivation chain and
// the uniform/normal layouts below are a fixed contract: golden tests and
// manifest checksums replay them independently, so do not change them.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  static RngStream derive(std::uint64_t master_seed, Draw purpose,
                          std::uint64_t trial = 0, std::uint64_t node = 0,
                          std::uint64_t iteration = 0) {
    std::uint64_t k = mix64(master_seed + kSplitMixGamma);
    k = mix64(k ^ (static_cast<std::uint64_t>(purpose) + kSplitMixGamma));
    k = mix64(k ^ (trial + kSplitMixGamma));
    k = mix64(k ^ (node + kSplitMixGamma));
    k = mix64(k ^ (iteration + kSplitMixGamma));
    return RngStream(k);
  }

  std::uint64_t next_u64() {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  // Maps a raw word onto the open interval (0,1). The midpoint formula alone
  // rounds the all-ones word up to exactly 1.0, so that word is pinned to the
  // largest double below 1.
  static double to_unit(std::uint64_t word) {
    const double u = (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
    return u < 1.0 ? u : 0x1.fffffffffffffp-1;
  }

  // Uniform on the open interval (0,1); never exactly 0 or 1, so log and tan
  // transforms downstream are singularity-free.
  double next_unit() { return to_unit(next_u64()); }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::uint64_t state_;
};

}  // namespace asymdlms
