#include "moikit/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "moikit/error.hpp"
#include "moikit/gauss_legendre.hpp"
#include "moikit/schatten.hpp"

namespace moikit {

namespace {

void require_directions(const Matrix& a, std::span<const Matrix> dirs) {
  if (dirs.empty()) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 1");
  for (const auto& b : dirs) require_same_size(a, b, "derivative direction");
}

void require_hermitian(const Matrix& m, const char* what) {
  const double tol = 1e-10 * (1.0 + m.max_abs());
  if (m.hermiticity_defect() > tol)
    throw Error(ErrorCode::NotHermitian, std::string(what) + " is not Hermitian");
}

std::vector<Matrix> permuted(std::span<const Matrix> dirs, const std::vector<int>& perm) {
  std::vector<Matrix> out;
  out.reserve(perm.size());
  for (int i : perm) out.push_back(dirs[static_cast<std::size_t>(i)]);
  return out;
}

Matrix moi_derivative(const DerivativeRequest& req) {
  const int k = static_cast<int>(req.directions.size());
  if (const auto order = req.f.max_order(); order && *order < k) {
    throw Error(ErrorCode::InsufficientDerivatives,
                req.f.describe() + " has " + std::to_string(*order) + " derivatives, order " + std::to_string(k) +
                    " requested");
  }
  const auto d = hermitian_eigendecompose(req.a, req.eigensolver);
  const auto symbol = MoiSymbol::divided_difference(req.f, k, req.divided_difference);
  const MoiOperands base = MoiOperands::repeated(d, req.directions);
  const auto grid = evaluate_symbol_grid(symbol, base.decompositions(), req.moi);
  Matrix acc(req.a.size());
  for (const auto& perm : permutations_lexicographic(k)) acc += moi_evaluate(grid, base.with_middles(permuted(req.directions, perm)));
  return acc;
}

Matrix power_derivative(const DerivativeRequest& req) {
  const auto* p = req.f.polynomial();
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, "power closed form needs a polynomial function");
  Matrix acc(req.a.size());
  for (int m = 0; m <= p->degree(); ++m) {
    const Complex c = p->coeff(m);
    if (c == Complex(0.0)) continue;
    Matrix term = power_map_derivative(m, req.a, req.directions);
    term *= c;
    acc += term;
  }
  return acc;
}

Matrix fd_stencil(const ScalarFunction& f, const Matrix& a, std::span<const Matrix> dirs, double h) {
  const std::size_t k = dirs.size();
  const std::size_t n = a.size();
  Matrix acc(n);
  // s runs over {-1,1}^k with -1 < 1 in lexicographic order.
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Matrix point = a;
    double sign = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const bool plus = (mask >> (k - 1 - i)) & 1U;
      const double s = plus ? 1.0 : -1.0;
      sign *= s;
      Matrix step = dirs[i];
      step *= s * h;
      point += step;
    }
    Matrix value = functional_calculus(f, hermitian_eigendecompose(point));
    value *= sign;
    acc += value;
  }
  acc *= 1.0 / std::pow(2.0 * h, static_cast<double>(k));
  return acc;
}

}  // namespace

FiniteDifferenceOptions FiniteDifferenceOptions::for_order(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 1");
  FiniteDifferenceOptions o;
  o.step = std::pow(1e-15, 1.0 / (k + 4));
  o.richardson = true;
  return o;
}

Matrix power_map_derivative(int m, const Matrix& a, std::span<const Matrix> dirs) {
  require_directions(a, dirs);
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "power must be >= 0");
  const std::size_t k = dirs.size();
  const std::vector<Matrix> bases(k + 1, a);
  Matrix acc(a.size());
  if (static_cast<int>(k) > m) return acc;
  for (const auto& perm : permutations_lexicographic(static_cast<int>(k))) {
    const auto middles = permuted(dirs, perm);
    acc += moi_polynomial(m, bases, middles);
  }
  return acc;
}

Matrix matrix_function_derivative(const DerivativeRequest& req) {
  require_directions(req.a, req.directions);
  require_hermitian(req.a, "base point");
  for (const auto& b : req.directions) require_hermitian(b, "direction");
  switch (req.strategy) {
    case DerivativeStrategy::Moi: return moi_derivative(req);
    case DerivativeStrategy::FiniteDifference:
      return finite_difference_derivative(req.f, req.a, req.directions, req.finite_difference);
    case DerivativeStrategy::PowerClosedForm: return power_derivative(req);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown derivative strategy");
}

Matrix matrix_function_derivative(const ScalarFunction& f, const Matrix& a, std::span<const Matrix> dirs,
                                  DerivativeStrategy strategy) {
  DerivativeRequest req(f, a, std::vector<Matrix>(dirs.begin(), dirs.end()));
  req.strategy = strategy;
  return matrix_function_derivative(req);
}

Matrix finite_difference_derivative(const ScalarFunction& f, const Matrix& a, std::span<const Matrix> dirs,
                                    const FiniteDifferenceOptions& options) {
  require_directions(a, dirs);
  if (!(options.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const double h = options.scale_step_by_norm ? options.step * (1.0 + operator_norm(a)) : options.step;
  if (!options.richardson) return fd_stencil(f, a, dirs, h);
  Matrix fine = fd_stencil(f, a, dirs, 0.5 * h);
  fine *= 4.0 / 3.0;
  Matrix coarse = fd_stencil(f, a, dirs, h);
  coarse *= 1.0 / 3.0;
  return fine - coarse;
}

std::vector<std::vector<int>> permutations_lexicographic(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "permutation length must be >= 0");
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Matrix symmetrize(const PermutationEvaluations& evaluations, int k) {
  if (evaluations.empty()) throw Error(ErrorCode::MissingPermutation, "no evaluations");
  std::optional<Matrix> acc;
  for (const auto& perm : permutations_lexicographic(k)) {
    const auto it = evaluations.find(perm);
    if (it == evaluations.end()) {
      std::string label;
      for (int i : perm) label += std::to_string(i + 1);
      throw Error(ErrorCode::MissingPermutation, "missing permutation " + label);
    }
    if (!acc) acc = it->second;
    else {
      require_same_size(*acc, it->second, "symmetrize");
      *acc += it->second;
    }
  }
  return *acc;
}

Matrix taylor_remainder_direct(const ScalarFunction& f, int k, const Matrix& a, const Matrix& b,
                               const DividedDifferenceOptions& dd) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "remainder order must be >= 1");
  require_same_size(a, b, "taylor remainder");
  Matrix r = functional_calculus(f, hermitian_eigendecompose(a + b)) - functional_calculus(f, hermitian_eigendecompose(a));
  double factorial = 1.0;
  for (int j = 1; j < k; ++j) {
    factorial *= j;
    DerivativeRequest req(f, a, std::vector<Matrix>(static_cast<std::size_t>(j), b));
    req.divided_difference = dd;
    Matrix term = matrix_function_derivative(req);
    term *= 1.0 / factorial;
    r -= term;
  }
  return r;
}

Matrix taylor_remainder_moi(const ScalarFunction& f, int k, const Matrix& a, const Matrix& b,
                            const DividedDifferenceOptions& dd) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "remainder order must be >= 1");
  require_same_size(a, b, "taylor remainder");
  const auto shifted = hermitian_eigendecompose(a + b);
  const auto base = hermitian_eigendecompose(a);
  std::vector<MoiOperands::DecompositionRef> decomps{std::cref(shifted)};
  decomps.insert(decomps.end(), static_cast<std::size_t>(k), std::cref(base));
  const MoiOperands ops(std::move(decomps), std::vector<Matrix>(static_cast<std::size_t>(k), b));
  return moi_evaluate(MoiSymbol::divided_difference(f, k, dd), ops);
}

Matrix taylor_remainder_integral(const ScalarFunction& f, int k, const Matrix& a, const Matrix& b, int steps,
                                 const DividedDifferenceOptions& dd) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "remainder order must be >= 1");
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "need at least one quadrature step");
  require_same_size(a, b, "taylor remainder");
  const auto rule = gauss_legendre_unit(steps);
  const auto symbol = MoiSymbol::divided_difference(f, k, dd);
  const std::vector<Matrix> middles(static_cast<std::size_t>(k), b);
  Matrix acc(a.size());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    Matrix point = b;
    point *= t;
    point += a;
    const auto d = hermitian_eigendecompose(point);
    Matrix value = moi_evaluate(symbol, MoiOperands::repeated(d, middles));
    value *= rule.weights[q] * k * std::pow(1.0 - t, k - 1);
    acc += value;
  }
  return acc;
}

double remainder_radius(const Matrix& a, const Matrix& b, int steps) {
  require_same_size(a, b, "remainder radius");
  std::vector<double> ts{0.0, 1.0};
  for (double t : gauss_legendre_unit(steps).nodes) ts.push_back(t);
  double r = 0.0;
  for (double t : ts) {
    Matrix point = b;
    point *= t;
    point += a;
    r = std::max(r, operator_norm(point));
  }
  return r;
}

}  // namespace moikit
