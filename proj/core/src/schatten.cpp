#include "moikit/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "moikit/divided_difference.hpp"
#include "moikit/error.hpp"
#include "moikit/frechet.hpp"
#include "moikit/spectral.hpp"
#include "moikit/tolerances.hpp"

namespace moikit {

namespace {

std::string p_label(double p) {
  if (p == kInfinity) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

}  // namespace

void SchattenSpec::validate() const {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidP, "Schatten exponent must be >= 1, got " + p_label(p));
}

std::vector<double> singular_values(const Matrix& m) {
  const auto pairs = jacobi_eigensolve(m.adjoint() * m);
  std::vector<double> s;
  s.reserve(pairs.values.size());
  for (auto it = pairs.values.rbegin(); it != pairs.values.rend(); ++it) s.push_back(std::sqrt(std::max(0.0, *it)));
  return s;
}

double schatten_norm(const Matrix& m, SchattenSpec spec) {
  spec.validate();
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0.0;
  if (spec.is_operator_norm()) return s.front();
  // Scale by the largest value so large p cannot overflow.
  const double top = s.front();
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / top, spec.p);
  return top * std::pow(acc, 1.0 / spec.p);
}

double operator_norm(const Matrix& m) { return schatten_norm(m, {kInfinity}); }

namespace {

VerificationReport remainder_bound_report(const ScalarFunction& f, int k, const Matrix& a, const Matrix& b, double p,
                                          double symbol_bound, const std::string& kind) {
  const Matrix r = taylor_remainder_direct(f, k, a, b);
  const double lhs = schatten_norm(r, {p});
  const double bound = symbol_bound * std::pow(schatten_norm(b, {k * p}), k);
  VerificationReport report("remainder_schatten");
  report.add(bound_check("remainder_schatten_k" + std::to_string(k) + "_p" + p_label(p),
                         "||R_k f(a; b)||_p <= ||f^[k]||_proj ||b||_{kp}^k (" + kind + " bound)", lhs, bound,
                         tolerances::bound_slack * (1.0 + bound)));
  return report;
}

void require_remainder_args(int k, double p) {
  SchattenSpec{p}.validate();
  if (p == kInfinity) throw Error(ErrorCode::InvalidP, "remainder estimate needs finite p");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "remainder order must be >= 1");
}

}  // namespace

VerificationReport remainder_schatten_check(const WienerAtomic& f, int k, const Matrix& a, const Matrix& b, double p) {
  require_remainder_args(k, p);
  return remainder_bound_report(ScalarFunction(f), k, a, b, p, wiener_iptp_bound(f, k), "wiener");
}

VerificationReport remainder_schatten_check(const Polynomial& f, int k, const Matrix& a, const Matrix& b, double p) {
  require_remainder_args(k, p);
  const double r = remainder_radius(a, b);
  return remainder_bound_report(ScalarFunction(f), k, a, b, p, poly_divided_difference_bound(f, k, r), "polynomial");
}

VerificationReport moi_schatten_check(const MoiSymbol& symbol, const MoiOperands& ops, double p,
                                      std::span<const double> slot_p) {
  SchattenSpec{p}.validate();
  if (static_cast<int>(slot_p.size()) != ops.order())
    throw Error(ErrorCode::ArityMismatch, "need one Schatten exponent per middle matrix");
  double inverse_sum = 0.0;
  for (double q : slot_p) {
    SchattenSpec{q}.validate();
    inverse_sum += 1.0 / q;
  }
  if (std::abs(inverse_sum - 1.0 / p) > 1e-12)
    throw Error(ErrorCode::HolderMismatch, "1/p = " + std::to_string(1.0 / p) + " but sum 1/p_j = " +
                                               std::to_string(inverse_sum));
  const auto ipd = ipd_upper_bound(symbol, ops);
  double rhs = ipd.value;
  for (std::size_t j = 0; j < slot_p.size(); ++j) rhs *= schatten_norm(ops.middles()[j], {slot_p[j]});
  const double lhs = schatten_norm(moi_evaluate(symbol, ops), {p});

  std::string name = "moi_schatten_k" + std::to_string(ops.order()) + "_p" + p_label(p);
  VerificationReport report("moi_schatten");
  report.add(bound_check(std::move(name),
                         "||(I^A phi)[b]||_p <= ||phi||_proj prod_j ||b_j||_{p_j} (" + ipd.kind + " bound)", lhs, rhs,
                         tolerances::bound_slack * (1.0 + rhs)));
  return report;
}

}  // namespace moikit
