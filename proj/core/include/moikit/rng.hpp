#pragma once

#include <cstdint>
#include <vector>

#include "moikit/matrix.hpp"

namespace moikit {

/// Counter-based 64-bit generator.
///
/// Draw i (i = 0, 1, ...) of stream s under seed x is
///   mix64(x ^ mix64(s) + (i + 1) * 0x9E3779B97F4A7C15)
/// where mix64 is the SplitMix64 finalizer. Reals are (draw >> 11) * 2^-53 and
/// normals use the cosine branch of Box-Muller on two consecutive reals, so
/// any implementation of these three formulas reproduces the fixtures.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1).
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n > 0.
  std::size_t index(std::size_t n) noexcept;
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) noexcept;
  double normal() noexcept;
  /// Standard complex Gaussian: E|z|^2 = 1.
  Complex complex_normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Entries iid standard complex Gaussian.
Matrix random_complex_matrix(CounterRng& rng, std::size_t n);
/// (G + G*) / 2 for a complex Gaussian G.
Matrix random_hermitian(CounterRng& rng, std::size_t n);
/// Random Hermitian rescaled to operator norm `norm`.
Matrix random_hermitian_with_norm(CounterRng& rng, std::size_t n, double norm);
std::vector<double> random_distinct_nodes(CounterRng& rng, std::size_t count, double lo, double hi,
                                          double min_gap);

}  // namespace moikit
