#pragma once

#include <optional>
#include <span>
#include <vector>

#include "moikit/matrix.hpp"
#include "moikit/scalar_function.hpp"

namespace moikit {

/// Ordered nodes (x_1, ..., x_{k+1}) of a k-th divided difference.
class NodeTuple {
 public:
  explicit NodeTuple(std::vector<double> nodes);
  NodeTuple(std::initializer_list<double> nodes) : NodeTuple(std::vector<double>(nodes)) {}

  int order() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double operator[](std::size_t i) const { return nodes_[i]; }
  /// min_{i != j} |x_i - x_j|; +inf for a single node, 0 with repeats.
  double min_gap() const noexcept { return min_gap_; }
  double max_abs() const noexcept;
  /// Nodes i..j inclusive.
  NodeTuple slice(std::size_t first, std::size_t last) const;

 private:
  std::vector<double> nodes_;
  double min_gap_;
};

/// Cubature for the simplex measure on {t in R^{k+1}: t_j >= 0, sum t_j = 1}
/// with total mass 1/k!.
class SimplexQuadratureRule {
 public:
  /// Tensor Gauss-Legendre on [0,1]^k pushed onto the simplex by the
  /// collapsed map s_j = u_j (1 - s_1 - ... - s_{j-1}).
  static SimplexQuadratureRule collapsed_gauss_legendre(int dimension, int points_per_axis = 16);
  /// Process-wide cache of collapsed_gauss_legendre rules.
  static const SimplexQuadratureRule& cached(int dimension, int points_per_axis = 16);

  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return weights_.size(); }
  /// Barycentric coordinates of node q (dimension + 1 entries).
  std::span<const double> node(std::size_t q) const {
    const auto stride = static_cast<std::size_t>(dimension_) + 1;
    return {points_.data() + q * stride, stride};
  }
  double weight(std::size_t q) const { return weights_[q]; }
  double total_weight() const noexcept;

 private:
  int dimension_ = 0;
  std::vector<double> points_;
  std::vector<double> weights_;
};

enum class DividedDifferenceStrategy {
  Automatic,   ///< closed form / Wiener quadrature / derivative quadrature / recursion
  ClosedForm,  ///< polynomials only
  Recursive,
  Quadrature,
};

struct DividedDifferenceOptions {
  DividedDifferenceStrategy strategy = DividedDifferenceStrategy::Automatic;
  /// Node grouping tolerance for the recursion; default 1e-8 (1 + max|x|).
  std::optional<double> coincidence_tol;
  int quadrature_points = 16;
};

double default_coincidence_tol(const NodeTuple& nodes) noexcept;

/// sum_n c_n h_{n-k}(x_1..x_{k+1}) with complete homogeneous symmetric
/// polynomials h_m accumulated by dynamic programming.
Complex poly_divided_difference(const Polynomial& p, const NodeTuple& nodes);

/// Newton table on the sorted nodes. Nodes closer than coincidence_tol are
/// merged and handled with f^(j)/j! (confluent table); throws
/// CoincidentNodes when f lacks the needed derivatives.
Complex divided_difference_recursive(const ScalarFunction& f, const NodeTuple& nodes,
                                     std::optional<double> coincidence_tol = std::nullopt);

/// sum_q w_q f^(k)(t_q . x); throws InsufficientDerivatives if f has no k-th derivative.
Complex divided_difference_quadrature(const ScalarFunction& f, const NodeTuple& nodes,
                                      const SimplexQuadratureRule& rule);

/// sum_j c_j (i xi_j)^k sum_q w_q exp(i xi_j t_q . x)
Complex wiener_divided_difference(const WienerAtomic& f, const NodeTuple& nodes,
                                  const SimplexQuadratureRule& rule);

/// Strategy dispatch used by the MOI and derivative code.
Complex divided_difference(const ScalarFunction& f, const NodeTuple& nodes,
                           const DividedDifferenceOptions& options = {});

/// Leibniz rule: sum_{j=0}^k f^[j](x_1..x_{j+1}) g^[k-j](x_{j+1}..x_{k+1}).
Complex divided_difference_product(const ScalarFunction& f, const ScalarFunction& g, const NodeTuple& nodes,
                                   const DividedDifferenceOptions& options = {});

/// (1/k!) max_{|x| <= r} |f^(k)(x)| from a uniform grid. For polynomials and
/// Wiener functions the grid maximum is raised by half a grid step times a
/// bound on |f^(k+1)|, which makes the result a true upper bound; callables
/// get the plain sampled maximum.
double divided_difference_sup_bound(const ScalarFunction& f, int k, double r, int grid_points = 4097);

/// mu_(k) = sum_j |c_j| |xi_j|^k
double wiener_moment(const WienerAtomic& f, int k);

/// mu_(j) / j!; upper bound for the projective-tensor norm of f^[j].
double wiener_iptp_bound(const WienerAtomic& f, int j);

struct MultiIndex {
  std::vector<int> exponents;
  int weight() const noexcept;
};

struct MultivariateTerm {
  MultiIndex index;
  Complex coeff;
};

/// sum_alpha |c_alpha| r^|alpha|
double poly_iptp_bound(std::span<const MultivariateTerm> terms, double r);

/// Expansion of p^[k] as sum_n c_n sum_{|g| = n-k} x^g.
std::vector<MultivariateTerm> poly_divided_difference_terms(const Polynomial& p, int k);

/// poly_iptp_bound of p^[k] in closed form: sum_n |c_n| C(n, k) r^(n-k).
double poly_divided_difference_bound(const Polynomial& p, int k, double r);

struct TaylorTruncation {
  Polynomial polynomial;
  /// mu_(0) sum_{m > n} (r R)^m / m!, R = max |xi_j|
  double tail_bound;
};

/// q_n(x) = sum_{m <= n} (i x)^m / m! sum_j c_j xi_j^m with its certified sup
/// error on [-r, r].
TaylorTruncation wiener_taylor_truncate(const WienerAtomic& f, int n, double r);

}  // namespace moikit
