#include "verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "log.hpp"
#include "moikit/divided_difference.hpp"
#include "moikit/frechet.hpp"
#include "moikit/moi.hpp"
#include "moikit/rng.hpp"
#include "moikit/schatten.hpp"
#include "moikit/spectral.hpp"

namespace moikit::cli {

namespace {

struct Context {
  CounterRng rng;
  const std::map<std::string, double>& tol;
  unsigned threads;
  VerificationReport& report;

  double t(const std::string& name) const { return tol.at(name); }
};

std::string case_name(const std::string& prefix, int i) { return prefix + "/" + std::to_string(i); }

Polynomial random_polynomial(CounterRng& rng, int max_degree) {
  const int degree = rng.integer(0, max_degree);
  std::vector<Complex> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return Polynomial(std::move(c));
}

/// Cycles through a polynomial, cos, sin and a two-atom Wiener function.
ScalarFunction function_for_case(CounterRng& rng, int i) {
  switch (i % 4) {
    case 0: return random_polynomial(rng, 6);
    case 1: return WienerAtomic::cosine(rng.uniform(0.5, 2.0));
    case 2: return WienerAtomic::sine(rng.uniform(0.5, 2.0));
    default:
      return WienerAtomic({{rng.uniform(-2.0, 2.0), {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}},
                           {rng.uniform(-2.0, 2.0), {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}}});
  }
}

std::vector<Matrix> hermitian_list(CounterRng& rng, std::size_t count, std::size_t n) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_hermitian_with_norm(rng, n, rng.uniform(0.1, 1.0)));
  return out;
}

void absorb(Context& c, const VerificationReport& sub, int i) {
  for (auto record : sub.checks()) {
    record.name = case_name(record.name, i);
    c.report.add(std::move(record));
  }
}

void relative_check(Context& c, std::string name, std::string anchor, const Matrix& value, const Matrix& reference,
                    double tol, double floor = 0.0) {
  const double scale = std::max(reference.frobenius_norm(), value.frobenius_norm());
  c.report.add(equality_check(std::move(name), std::move(anchor), value.frobenius_norm(), reference.frobenius_norm(),
                              frobenius_distance(value, reference), tol * scale + floor));
}

int divided_differences(Context& c) {
  const double tol = c.t("divided_difference");
  const int cases = 40;
  for (int i = 0; i < cases; ++i) {
    const Polynomial p = random_polynomial(c.rng, 8);
    const ScalarFunction f(p);
    const int k = c.rng.integer(1, 8);
    const NodeTuple nodes(random_distinct_nodes(c.rng, static_cast<std::size_t>(k + 1), -2.0, 2.0, 0.1));
    const Complex closed = poly_divided_difference(p, nodes);
    const Complex recursive = divided_difference_recursive(f, nodes);
    const double scale = std::max(1.0, std::abs(closed));
    c.report.add(equality_check(case_name("dd_recursion_vs_closed_form", i),
                                "Newton recursion equals the complete-homogeneous closed form", std::abs(recursive),
                                std::abs(closed), std::abs(recursive - closed), tol * scale));

    std::vector<double> shuffled(nodes.nodes().begin(), nodes.nodes().end());
    for (std::size_t j = shuffled.size(); j > 1; --j) std::swap(shuffled[j - 1], shuffled[c.rng.index(j)]);
    const Complex permuted = divided_difference_recursive(f, NodeTuple(shuffled));
    c.report.add(equality_check(case_name("dd_symmetry", i), "f^[k] is symmetric in its nodes", std::abs(permuted),
                                std::abs(recursive), std::abs(permuted - recursive), tol * scale));

    const double x = c.rng.uniform(-2.0, 2.0);
    const Complex confluent = divided_difference_recursive(f, NodeTuple(std::vector<double>(k + 1, x)));
    const Complex expected = p.derivative(k, x) / std::tgamma(k + 1.0);
    c.report.add(equality_check(case_name("dd_confluent", i), "f^[k](x, ..., x) = f^(k)(x) / k!",
                                std::abs(confluent), std::abs(expected), std::abs(confluent - expected),
                                tol * std::max(1.0, std::abs(expected))));

    const double bound = divided_difference_sup_bound(f, k, 2.0);
    c.report.add(bound_check(case_name("dd_sup_bound", i), "|f^[k]| <= sup |f^(k)| / k! on the node hull",
                             std::abs(closed), bound, tol * std::max(1.0, bound)));
  }
  return cases;
}

int quadrature(Context& c) {
  double factorial = 1.0;
  for (int k = 0; k <= 4; ++k) {
    if (k > 0) factorial *= k;
    const auto& rule = SimplexQuadratureRule::cached(k, 16);
    c.report.add(equality_check("simplex_weight/k" + std::to_string(k), "simplex rule weights sum to 1/k!",
                                rule.total_weight(), 1.0 / factorial, std::abs(rule.total_weight() - 1.0 / factorial),
                                c.t("simplex_weight")));
  }
  const int cases = 24;
  const ScalarFunction functions[] = {builtin::exp(), builtin::sin(), builtin::cos()};
  for (int i = 0; i < cases; ++i) {
    const auto& f = functions[i % 3];
    const int k = c.rng.integer(1, 4);
    const NodeTuple nodes(random_distinct_nodes(c.rng, static_cast<std::size_t>(k + 1), -1.0, 1.0, 0.1));
    const Complex quad = divided_difference_quadrature(f, nodes, SimplexQuadratureRule::cached(k, 16));
    const Complex rec = divided_difference_recursive(f, nodes);
    c.report.add(equality_check(case_name("quadrature_vs_recursion", i),
                                "f^[k] = integral of f^(k) over the simplex", std::abs(quad), std::abs(rec),
                                std::abs(quad - rec), c.t("quadrature")));
  }
  return cases;
}

int spectral(Context& c) {
  const int cases = 12;
  for (int i = 0; i < cases; ++i) {
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 6));
    Matrix a = random_hermitian(c.rng, n);
    if (i % 3 == 2 && n > 1) {
      // Force a repeated eigenvalue: U diag(1, 1, 2, ...) U*.
      const auto pairs = jacobi_eigensolve(a);
      std::vector<double> values(n);
      for (std::size_t j = 0; j < n; ++j) values[j] = j < 2 ? 1.0 : static_cast<double>(j);
      a = pairs.vectors * Matrix::diagonal(values) * pairs.vectors.adjoint();
      a = 0.5 * (a + a.adjoint());
    }
    auto checks = validate_decomposition(hermitian_eigendecompose(a));
    for (auto record : checks.checks()) {
      record.name = case_name("spectral_" + record.name, i);
      c.report.add(std::move(record));
    }
  }
  return cases;
}

int perturbation(Context& c) {
  const int cases = 20;
  PerturbationOptions options;
  options.relative_tolerance = c.t("perturbation");
  for (int i = 0; i < cases; ++i) {
    const ScalarFunction f = function_for_case(c.rng, i);
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 6));
    const Matrix a = random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 2.0));
    const Matrix b = random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 2.0));
    absorb(c, moi_perturbation(f, a, b, options), i);
  }
  return cases;
}

int derivative(Context& c) {
  const int fd_cases = 12;
  for (int i = 0; i < fd_cases; ++i) {
    const ScalarFunction f = function_for_case(c.rng, i);
    const int k = 1 + i % 3;
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 6));
    DerivativeRequest req(f, random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 1.0)),
                          hermitian_list(c.rng, static_cast<std::size_t>(k), n));
    req.moi.threads = c.threads;
    const Matrix moi = matrix_function_derivative(req);
    const Matrix fd = finite_difference_derivative(f, req.a, req.directions, FiniteDifferenceOptions::for_order(k));
    relative_check(c, case_name("derivative_moi_vs_fd_k" + std::to_string(k), i),
                   "D^k f(A)[B] = sum_pi (I^{A..A} f^[k])[B_pi] (finite-difference oracle)", moi, fd,
                   c.t("finite_difference"), 1e-8);
  }
  const int power_cases = 9;
  for (int i = 0; i < power_cases; ++i) {
    const int m = c.rng.integer(0, 8);
    const int k = 1 + i % 3;
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 6));
    DerivativeRequest req(Polynomial::monomial(m), random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 1.0)),
                          hermitian_list(c.rng, static_cast<std::size_t>(k), n));
    const Matrix moi = matrix_function_derivative(req);
    const Matrix power = power_map_derivative(m, req.a, req.directions);
    relative_check(c, case_name("derivative_moi_vs_power_m" + std::to_string(m) + "_k" + std::to_string(k), i),
                   "D^k p_m(A)[B] = sum_pi sum_|g|=m-k A^g1 B_pi1 ... A^g(k+1)", moi, power, c.t("power_map"));
  }
  return fd_cases + power_cases;
}

int symmetry(Context& c) {
  const int cases = 6;
  for (int i = 0; i < cases; ++i) {
    const ScalarFunction f = function_for_case(c.rng, i);
    const int k = 2 + i % 2;
    const auto n = static_cast<std::size_t>(c.rng.integer(2, 5));
    const Matrix a = random_hermitian_with_norm(c.rng, n, 1.0);
    auto dirs = hermitian_list(c.rng, static_cast<std::size_t>(k), n);
    const Matrix base = matrix_function_derivative(f, a, dirs);
    std::reverse(dirs.begin(), dirs.end());
    const Matrix swapped = matrix_function_derivative(f, a, dirs);
    relative_check(c, case_name("derivative_direction_symmetry_k" + std::to_string(k), i),
                   "D^k f(A) is symmetric in its directions", swapped, base, c.t("symmetry"));
  }
  return cases;
}

int remainder(Context& c) {
  const int cases = 9;
  for (int i = 0; i < cases; ++i) {
    const ScalarFunction f = function_for_case(c.rng, i);
    const int k = 1 + i % 3;
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 5));
    const Matrix a = random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 1.0));
    const Matrix b = random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 1.0));
    const Matrix direct = taylor_remainder_direct(f, k, a, b);
    const Matrix moi = taylor_remainder_moi(f, k, a, b);
    const Matrix integral = taylor_remainder_integral(f, k, a, b, 32);
    const double scale = 1.0 + direct.frobenius_norm();
    const std::string suffix = "_k" + std::to_string(k);
    c.report.add(equality_check(case_name("remainder_direct_vs_moi" + suffix, i),
                                "R_k f(a; b) = (I^{a+b, a, ..., a} f^[k])[b, ..., b]", direct.frobenius_norm(),
                                moi.frobenius_norm(), frobenius_distance(direct, moi), c.t("remainder_moi") * scale));
    c.report.add(equality_check(case_name("remainder_direct_vs_integral" + suffix, i),
                                "R_k f(a; b) = k int_0^1 (1-t)^{k-1} (I^{a+tb} f^[k])[b, ..., b] dt",
                                direct.frobenius_norm(), integral.frobenius_norm(),
                                frobenius_distance(direct, integral), c.t("remainder_integral") * scale));
    if (k == 1) {
      const auto sides = perturbation_sides(f, a + b, a);
      c.report.add(equality_check(case_name("remainder_first_order", i), "R_1 f(a; b) = f(a + b) - f(a)",
                                  direct.frobenius_norm(), sides.difference.frobenius_norm(),
                                  frobenius_distance(direct, sides.difference), 0.0));
    }
  }
  return cases;
}

int schatten(Context& c) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double p : {1.0, 2.0, 3.0, kInfinity}) {
      const double norm = schatten_norm(Matrix::identity(n), {p});
      const double expected = p == kInfinity ? 1.0 : std::pow(static_cast<double>(n), 1.0 / p);
      c.report.add(equality_check("schatten_identity/n" + std::to_string(n) + "_p" +
                                      (p == kInfinity ? std::string("inf") : std::to_string(static_cast<int>(p))),
                                  "||I_n||_p = n^{1/p}", norm, expected, std::abs(norm - expected),
                                  c.t("schatten_identity") * expected));
    }
  }
  const int cases = 12;
  for (int i = 0; i < cases; ++i) {
    const int k = 1 + i % 3;
    const double p = (i % 2 == 0) ? 1.0 : 2.0;
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 5));
    const Matrix a = random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 1.0));
    const Matrix b = random_hermitian_with_norm(c.rng, n, c.rng.uniform(0.1, 1.0));
    const auto report = (i % 3 == 2) ? remainder_schatten_check(random_polynomial(c.rng, 6), k, a, b, p)
                                     : remainder_schatten_check(WienerAtomic::cosine(c.rng.uniform(0.5, 2.0)), k, a, b, p);
    absorb(c, report, i);
  }
  for (int i = 0; i < cases; ++i) {
    const int k = 1 + i % 2;
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 5));
    const Matrix a = random_hermitian(c.rng, n);
    const auto d = hermitian_eigendecompose(a);
    const ScalarFunction f = (i % 2 == 0) ? ScalarFunction(WienerAtomic::cosine()) : random_polynomial(c.rng, 6);
    const auto symbol = MoiSymbol::divided_difference(f, k);
    const MoiOperands ops = MoiOperands::repeated(d, hermitian_list(c.rng, static_cast<std::size_t>(k), n));
    const std::vector<double> slots = k == 1 ? std::vector<double>{1.0} : std::vector<double>{2.0, 2.0};
    absorb(c, moi_schatten_check(symbol, ops, 1.0, slots), i);
  }
  return 2 * cases;
}

int opnorm(Context& c) {
  const int cases = 10;
  for (int i = 0; i < cases; ++i) {
    const int k = 1 + i % 3;
    const auto n = static_cast<std::size_t>(c.rng.integer(1, 6));
    const auto d = hermitian_eigendecompose(random_hermitian(c.rng, n));
    const auto symbol = MoiSymbol::divided_difference(function_for_case(c.rng, i), k);
    const MoiOperands ops = MoiOperands::repeated(d, hermitian_list(c.rng, static_cast<std::size_t>(k), n));
    absorb(c, moi_opnorm_bound_check(symbol, ops, 4, c.rng.next_u64()), i);
  }
  return cases;
}

int truncation(Context& c) {
  const WienerAtomic f = WienerAtomic::cosine();
  for (int n = 2; n <= 12; ++n) {
    const auto q = wiener_taylor_truncate(f, n, 1.0);
    double err = 0.0;
    for (int g = 0; g < 1001; ++g) {
      const double x = -1.0 + 2.0 * g / 1000.0;
      err = std::max(err, std::abs(f(x) - q.polynomial(x)));
    }
    c.report.add(bound_check("truncation_tail_bound/n" + std::to_string(n),
                             "sup |f - q_n| <= mu_(0) sum_{m>n} (rR)^m / m!", err, q.tail_bound,
                             c.t("bound_slack") * (1.0 + q.tail_bound)));
    if (n == 10) {
      c.report.add(bound_check("truncation_n10", "degree-10 truncation of cos on [-1, 1]", err, c.t("truncation_n10"),
                               0.0));
    }
  }
  return 11;
}

using GroupFn = int (*)(Context&);

const std::vector<std::pair<std::string, GroupFn>>& group_table() {
  static const std::vector<std::pair<std::string, GroupFn>> table{
      {"divided_differences", divided_differences},
      {"quadrature", quadrature},
      {"spectral", spectral},
      {"perturbation", perturbation},
      {"derivative", derivative},
      {"symmetry", symmetry},
      {"remainder", remainder},
      {"schatten", schatten},
      {"opnorm", opnorm},
      {"truncation", truncation},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : group_table()) out.push_back(name);
    return out;
  }();
  return names;
}

VerificationReport run_verify_suite(const VerifyOptions& options, nlohmann::ordered_json& details) {
  VerificationReport report("verify");
  details["groups"] = nlohmann::ordered_json::object();
  std::uint64_t stream = 0;
  for (const auto& [name, fn] : group_table()) {
    ++stream;
    if (!options.groups.empty() &&
        std::find(options.groups.begin(), options.groups.end(), name) == options.groups.end())
      continue;
    VerificationReport group(name);
    Context context{CounterRng(options.seed, stream), options.tolerances, options.threads, group};
    const int cases = fn(context);
    logger().info("verify group {}: {} cases, {} checks, {} failures", name, cases, group.checks().size(),
                  group.failures());
    details["groups"][name] = {{"cases", cases}, {"checks", group.checks().size()}, {"failures", group.failures()}};
    report.append(group);
  }
  return report;
}

}  // namespace moikit::cli
