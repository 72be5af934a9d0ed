#pragma once

#include <cstdint>

namespace ctqec {

/// Counter-based random stream. The i-th raw output is mix64(key + i*GAMMA)
/// (splitmix64), with the key derived from (seed, stream id), so trajectory
/// streams are independent of each other and of evaluation order. Gaussian
/// variates use the Box-Muller transform on fixed 53-bit uniforms; the
/// documented transform makes runs reproducible across platforms up to the
/// IEEE-754 double model.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform on (0, 1].
  double uniform01();

  /// Standard normal. Pairs are generated by Box-Muller; the second value of
  /// each pair is cached and returned by the next call.
  double normal();

  /// Deterministic derived seed for sub-runs (sweeps, ensembles).
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ctqec
