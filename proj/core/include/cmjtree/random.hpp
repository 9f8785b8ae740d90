#pragma once

#include <cstdint>
#include <random>

namespace cmjtree {

/// Version of the (master_seed, trial) -> stream derivation. Bump whenever
/// derive_stream or the variate transforms below change.
inline constexpr int kSeedSchemeVersion = 1;

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded generator with portable variate transforms. The engine is
/// std::mt19937_64 (fully specified by the standard); uniform and exponential
/// variates are computed here rather than through <random> distributions,
/// whose output is implementation-defined.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
};

/// Independent stream for one trial of an experiment.
Rng derive_stream(std::uint64_t master_seed, std::uint64_t trial);

}  // namespace cmjtree

namespace cmjtree {

/// Stream for one trial of one sub-experiment, e.g. one tree size in a scan.
inline Rng derive_stream(std::uint64_t master_seed, std::uint64_t tag, std::uint64_t trial) {
  return derive_stream(splitmix64(master_seed ^ splitmix64(tag + 0x5bd1e995ULL)), trial);
}

}  // namespace cmjtree
