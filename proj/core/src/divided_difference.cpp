#include "moikit/divided_difference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "moikit/error.hpp"
#include "moikit/gauss_legendre.hpp"

namespace moikit {

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::vector<double> sorted_nodes(const NodeTuple& nodes) {
  std::vector<double> z(nodes.nodes().begin(), nodes.nodes().end());
  std::sort(z.begin(), z.end());
  return z;
}

Complex i_power(int m) {
  switch (m % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void require_rule_dimension(const SimplexQuadratureRule& rule, int k) {
  if (rule.dimension() != k) {
    throw Error(ErrorCode::DimensionMismatch, "simplex rule has dimension " + std::to_string(rule.dimension()) +
                                                  " but the divided difference has order " + std::to_string(k));
  }
}

}  // namespace

// ------------------------------------------------------------------ NodeTuple

NodeTuple::NodeTuple(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::InvalidArgument, "a node tuple needs at least one node");
  for (double x : nodes_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "node is not finite");
  }
  auto z = nodes_;
  std::sort(z.begin(), z.end());
  min_gap_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < z.size(); ++i) min_gap_ = std::min(min_gap_, z[i] - z[i - 1]);
}

double NodeTuple::max_abs() const noexcept {
  double m = 0.0;
  for (double x : nodes_) m = std::max(m, std::abs(x));
  return m;
}

NodeTuple NodeTuple::slice(std::size_t first, std::size_t last) const {
  return NodeTuple(std::vector<double>(nodes_.begin() + first, nodes_.begin() + last + 1));
}

// ------------------------------------------------------ SimplexQuadratureRule

SimplexQuadratureRule SimplexQuadratureRule::collapsed_gauss_legendre(int dimension, int points_per_axis) {
  if (dimension < 0) throw Error(ErrorCode::InvalidArgument, "simplex dimension must be non-negative");
  SimplexQuadratureRule rule;
  rule.dimension_ = dimension;
  const auto k = static_cast<std::size_t>(dimension);
  if (dimension == 0) {
    rule.points_ = {1.0};
    rule.weights_ = {1.0};
    return rule;
  }
  const auto gl = gauss_legendre_unit(points_per_axis);
  const auto m = static_cast<std::size_t>(points_per_axis);
  std::size_t total = 1;
  for (std::size_t j = 0; j < k; ++j) total *= m;
  rule.points_.reserve(total * (k + 1));
  rule.weights_.reserve(total);

  std::vector<std::size_t> digit(k, 0);
  for (std::size_t q = 0; q < total; ++q) {
    double remaining = 1.0;
    double weight = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double u = gl.nodes[digit[j]];
      weight *= gl.weights[digit[j]] * remaining;  // Jacobian factor of the collapse
      const double s = remaining * u;
      rule.points_.push_back(s);
      remaining -= s;
    }
    rule.points_.push_back(remaining);
    rule.weights_.push_back(weight);
    for (std::size_t j = k; j-- > 0;) {
      if (++digit[j] < m) break;
      digit[j] = 0;
    }
  }
  return rule;
}

const SimplexQuadratureRule& SimplexQuadratureRule::cached(int dimension, int points_per_axis) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<SimplexQuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{dimension, points_per_axis}];
  if (!slot) slot = std::make_unique<SimplexQuadratureRule>(collapsed_gauss_legendre(dimension, points_per_axis));
  return *slot;
}

double SimplexQuadratureRule::total_weight() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

// ----------------------------------------------------------- divided differences

double default_coincidence_tol(const NodeTuple& nodes) noexcept { return 1e-8 * (1.0 + nodes.max_abs()); }

Complex poly_divided_difference(const Polynomial& p, const NodeTuple& nodes) {
  const int k = nodes.order();
  const int d = p.degree();
  if (k > d) return 0.0;
  const auto z = sorted_nodes(nodes);
  // h[m] = complete homogeneous symmetric polynomial of degree m in the
  // variables processed so far.
  std::vector<double> h(static_cast<std::size_t>(d - k) + 1, 0.0);
  h[0] = 1.0;
  for (double x : z) {
    for (std::size_t m = 1; m < h.size(); ++m) h[m] += x * h[m - 1];
  }
  Complex acc = 0.0;
  for (int n = k; n <= d; ++n) acc += p.coeff(n) * h[static_cast<std::size_t>(n - k)];
  return acc;
}

Complex divided_difference_recursive(const ScalarFunction& f, const NodeTuple& nodes,
                                     std::optional<double> coincidence_tol) {
  const double tol = coincidence_tol.value_or(default_coincidence_tol(nodes));
  auto z = sorted_nodes(nodes);
  const std::size_t count = z.size();

  // Snap chains of nodes closer than tol onto their group mean.
  int max_multiplicity = 1;
  for (std::size_t start = 0; start < count;) {
    std::size_t end = start + 1;
    while (end < count && z[end] - z[end - 1] < tol) ++end;
    if (end - start > 1) {
      const double mean = std::accumulate(z.begin() + start, z.begin() + end, 0.0) / (end - start);
      std::fill(z.begin() + start, z.begin() + end, mean);
      max_multiplicity = std::max(max_multiplicity, static_cast<int>(end - start));
    }
    start = end;
  }
  if (max_multiplicity > 1 && !f.has_derivative(max_multiplicity - 1)) {
    throw Error(ErrorCode::CoincidentNodes,
                "nodes coincide with multiplicity " + std::to_string(max_multiplicity) + " but " + f.describe() +
                    " lacks derivative order " + std::to_string(max_multiplicity - 1));
  }

  std::vector<Complex> table(count);
  for (std::size_t i = 0; i < count; ++i) table[i] = f(z[i]);
  for (std::size_t level = 1; level < count; ++level) {
    for (std::size_t i = 0; i + level < count; ++i) {
      const double lo = z[i];
      const double hi = z[i + level];
      if (hi == lo) {
        table[i] = f.derivative(static_cast<int>(level), lo) / factorial(static_cast<int>(level));
      } else {
        table[i] = (table[i + 1] - table[i]) / (hi - lo);
      }
    }
  }
  return table[0];
}

Complex divided_difference_quadrature(const ScalarFunction& f, const NodeTuple& nodes,
                                      const SimplexQuadratureRule& rule) {
  const int k = nodes.order();
  require_rule_dimension(rule, k);
  if (!f.has_derivative(k)) {
    throw Error(ErrorCode::InsufficientDerivatives,
                f.describe() + " has no derivative of order " + std::to_string(k));
  }
  const auto z = sorted_nodes(nodes);
  Complex acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto t = rule.node(q);
    double x = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) x += t[j] * z[j];
    acc += rule.weight(q) * f.derivative(k, x);
  }
  return acc;
}

Complex wiener_divided_difference(const WienerAtomic& f, const NodeTuple& nodes, const SimplexQuadratureRule& rule) {
  const int k = nodes.order();
  require_rule_dimension(rule, k);
  const auto z = sorted_nodes(nodes);
  std::vector<double> projected(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto t = rule.node(q);
    double x = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) x += t[j] * z[j];
    projected[q] = x;
  }
  Complex acc = 0.0;
  for (const auto& atom : f.atoms()) {
    if (k > 0 && atom.frequency == 0.0) continue;
    Complex inner = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) inner += rule.weight(q) * std::polar(1.0, atom.frequency * projected[q]);
    acc += atom.weight * i_power(k) * std::pow(atom.frequency, k) * inner;
  }
  return acc;
}

Complex divided_difference(const ScalarFunction& f, const NodeTuple& nodes, const DividedDifferenceOptions& options) {
  const int k = nodes.order();
  using S = DividedDifferenceStrategy;
  switch (options.strategy) {
    case S::ClosedForm:
      if (const auto* p = f.polynomial()) return poly_divided_difference(*p, nodes);
      throw Error(ErrorCode::InvalidArgument, "closed-form divided differences need a polynomial");
    case S::Recursive:
      return divided_difference_recursive(f, nodes, options.coincidence_tol);
    case S::Quadrature: {
      const auto& rule = SimplexQuadratureRule::cached(k, options.quadrature_points);
      if (const auto* w = f.wiener()) return wiener_divided_difference(*w, nodes, rule);
      return divided_difference_quadrature(f, nodes, rule);
    }
    case S::Automatic:
      break;
  }
  if (k == 0) return f(nodes[0]);
  if (const auto* p = f.polynomial()) return poly_divided_difference(*p, nodes);
  // The simplex integral is insensitive to node gaps; beyond k = 3 the
  // tensor rule gets expensive and the recursion takes over.
  if (k <= 3 && f.has_derivative(k)) {
    const auto& rule = SimplexQuadratureRule::cached(k, options.quadrature_points);
    if (const auto* w = f.wiener()) return wiener_divided_difference(*w, nodes, rule);
    return divided_difference_quadrature(f, nodes, rule);
  }
  return divided_difference_recursive(f, nodes, options.coincidence_tol);
}

Complex divided_difference_product(const ScalarFunction& f, const ScalarFunction& g, const NodeTuple& nodes,
                                   const DividedDifferenceOptions& options) {
  const auto k = static_cast<std::size_t>(nodes.order());
  Complex acc = 0.0;
  for (std::size_t j = 0; j <= k; ++j) {
    acc += divided_difference(f, nodes.slice(0, j), options) * divided_difference(g, nodes.slice(j, k), options);
  }
  return acc;
}

double divided_difference_sup_bound(const ScalarFunction& f, int k, double r, int grid_points) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "order must be non-negative");
  if (!f.has_derivative(k)) {
    throw Error(ErrorCode::InsufficientDerivatives,
                f.describe() + " has no derivative of order " + std::to_string(k));
  }
  grid_points = std::max(grid_points, 2);
  double m = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = -r + 2.0 * r * i / (grid_points - 1);
    m = std::max(m, std::abs(f.derivative(k, x)));
  }
  const double half_step = r / (grid_points - 1);
  if (const auto* p = f.polynomial()) {
    double slope = 0.0;  // sup |p^(k+1)| <= sum |c_n| n!/(n-k-1)! r^(n-k-1)
    for (int n = k + 1; n <= p->degree(); ++n)
      slope += std::abs(p->coeff(n)) * factorial(n) / factorial(n - k - 1) * std::pow(r, n - k - 1);
    m += half_step * slope;
  } else if (const auto* w = f.wiener()) {
    m += half_step * wiener_moment(*w, k + 1);
  }
  return m / factorial(k);
}

double wiener_moment(const WienerAtomic& f, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be non-negative");
  double acc = 0.0;
  for (const auto& a : f.atoms()) acc += std::abs(a.weight) * std::pow(std::abs(a.frequency), k);
  return acc;
}

double wiener_iptp_bound(const WienerAtomic& f, int j) { return wiener_moment(f, j) / factorial(j); }

int MultiIndex::weight() const noexcept { return std::accumulate(exponents.begin(), exponents.end(), 0); }

double poly_iptp_bound(std::span<const MultivariateTerm> terms, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  double acc = 0.0;
  for (const auto& t : terms) acc += std::abs(t.coeff) * std::pow(r, t.index.weight());
  return acc;
}

std::vector<MultivariateTerm> poly_divided_difference_terms(const Polynomial& p, int k) {
  std::vector<MultivariateTerm> terms;
  const auto vars = static_cast<std::size_t>(k) + 1;
  for (int n = k; n <= p.degree(); ++n) {
    const Complex c = p.coeff(n);
    if (c == Complex(0.0)) continue;
    const int total = n - k;
    // compositions of `total` into `vars` parts, lexicographically descending
    std::vector<int> g(vars, 0);
    auto emit = [&](auto&& self, std::size_t pos, int remaining) -> void {
      if (pos + 1 == vars) {
        g[pos] = remaining;
        terms.push_back({MultiIndex{g}, c});
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        g[pos] = v;
        self(self, pos + 1, remaining - v);
      }
    };
    emit(emit, 0, total);
  }
  return terms;
}

double poly_divided_difference_bound(const Polynomial& p, int k, double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  double acc = 0.0;
  for (int n = k; n <= p.degree(); ++n) {
    // C(n, k) multi-indices of weight n - k in k + 1 variables
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
    acc += std::abs(p.coeff(n)) * binom * std::pow(r, n - k);
  }
  return acc;
}

TaylorTruncation wiener_taylor_truncate(const WienerAtomic& f, int n, double r) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "truncation degree must be non-negative");
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  std::vector<Complex> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  double inv_fact = 1.0;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) inv_fact /= m;
    Complex moment = 0.0;
    for (const auto& a : f.atoms()) moment += a.weight * std::pow(a.frequency, m);
    coeffs[static_cast<std::size_t>(m)] = i_power(m) * inv_fact * moment;
  }

  const double x = r * f.max_abs_frequency();
  double tail = 0.0;
  if (x > 0.0) {
    double term = 1.0;
    for (int m = 1; m <= n + 1; ++m) term *= x / m;
    for (int m = n + 1; m < n + 2000; ++m) {
      tail += term;
      term *= x / (m + 1);
      if (term < 1e-18 * tail || term == 0.0) break;
    }
  }
  return {Polynomial(std::move(coeffs)), wiener_moment(f, 0) * tail};
}

}  // namespace moikit
