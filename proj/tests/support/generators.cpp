#include "generators.hpp"

#include "oracles.hpp"

namespace moikit::testing {

Polynomial random_polynomial(CounterRng& rng, int max_degree) {
  const int degree = rng.integer(0, max_degree);
  std::vector<Complex> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return Polynomial(std::move(c));
}

Polynomial random_real_polynomial(CounterRng& rng, int max_degree) {
  const int degree = rng.integer(0, max_degree);
  std::vector<Complex> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(rng.uniform(-1.0, 1.0), 0.0);
  return Polynomial(std::move(c));
}

WienerAtomic random_wiener(CounterRng& rng, int atoms) {
  std::vector<WienerAtom> out;
  for (int i = 0; i < atoms; ++i)
    out.push_back({rng.uniform(-2.0, 2.0), {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}});
  return WienerAtomic(std::move(out));
}

Matrix hermitian_with_random_norm(CounterRng& rng, std::size_t n, double lo, double hi) {
  return random_hermitian_with_norm(rng, n, rng.uniform(lo, hi));
}

std::vector<Matrix> hermitian_directions(CounterRng& rng, std::size_t count, std::size_t n, double lo, double hi) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(hermitian_with_random_norm(rng, n, lo, hi));
  return out;
}

Matrix hermitian_with_spectrum(CounterRng& rng, const std::vector<double>& values) {
  const std::size_t n = values.size();
  // Q from a QR factorization of a complex Gaussian matrix is Haar-like unitary.
  const Eigen::MatrixXcd g = to_eigen(random_complex_matrix(rng, n));
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
  Eigen::VectorXcd d(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) d(static_cast<Eigen::Index>(i)) = values[i];
  Eigen::MatrixXcd h = q * d.asDiagonal() * q.adjoint();
  h = 0.5 * (h + h.adjoint()).eval();
  return from_eigen(h);
}

}  // namespace moikit::testing
