#include "moikit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moikit/error.hpp"
#include "moikit/spectral.hpp"

namespace moikit {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(seed ^ mix64(stream)) {}

std::uint64_t CounterRng::next_u64() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t CounterRng::index(std::size_t n) noexcept {
  auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return std::min(i, n - 1);
}

int CounterRng::integer(int lo, int hi) noexcept {
  return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo + 1)));
}

double CounterRng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex CounterRng::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Matrix random_complex_matrix(CounterRng& rng, std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

Matrix random_hermitian(CounterRng& rng, std::size_t n) {
  Matrix g = random_complex_matrix(rng, n);
  Matrix h = g + g.adjoint();
  h *= 0.5;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();
  return h;
}

Matrix random_hermitian_with_norm(CounterRng& rng, std::size_t n, double norm) {
  Matrix h = random_hermitian(rng, n);
  const auto values = jacobi_eigensolve(h).values;
  double op = 0.0;
  for (double v : values) op = std::max(op, std::abs(v));
  if (op > 0.0) h *= norm / op;
  return h;
}

std::vector<double> random_distinct_nodes(CounterRng& rng, std::size_t count, double lo, double hi,
                                          double min_gap) {
  if (count > 1 && min_gap * static_cast<double>(count - 1) > (hi - lo)) {
    throw Error(ErrorCode::InvalidArgument, "node gap too large for interval");
  }
  std::vector<double> nodes;
  nodes.reserve(count);
  while (nodes.size() < count) {
    const double x = rng.uniform(lo, hi);
    const bool ok = std::all_of(nodes.begin(), nodes.end(),
                                [&](double y) { return std::abs(x - y) >= min_gap; });
    if (ok) nodes.push_back(x);
    // Rejection may stall for tight packings; restart from scratch.
    if (!ok && rng.uniform() < 0.01) nodes.clear();
  }
  return nodes;
}

}  // namespace moikit
