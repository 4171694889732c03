#pragma once

#include <limits>
#include <span>
#include <vector>

#include "moikit/matrix.hpp"
#include "moikit/moi.hpp"
#include "moikit/report.hpp"
#include "moikit/scalar_function.hpp"

namespace moikit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Schatten exponent p in [1, inf]; p = inf is the operator norm.
struct SchattenSpec {
  double p = 2.0;

  /// Throws InvalidP unless p >= 1.
  void validate() const;
  bool is_operator_norm() const noexcept { return p == kInfinity; }
};

/// Descending; square roots of the eigenvalues of M* M.
std::vector<double> singular_values(const Matrix& m);
double schatten_norm(const Matrix& m, SchattenSpec spec);
double operator_norm(const Matrix& m);

/// ||R_{k,f,a}(b)||_p <= (mu_(k) / k!) ||b||_{kp}^k for p in [1, inf).
VerificationReport remainder_schatten_check(const WienerAtomic& f, int k, const Matrix& a, const Matrix& b, double p);
/// Same inequality with the polynomial surrogate sum |c_alpha| r^|alpha| for
/// ||f^[k]||, r = remainder_radius(a, b).
VerificationReport remainder_schatten_check(const Polynomial& f, int k, const Matrix& a, const Matrix& b, double p);

/// ||(I^A phi)[b]||_p <= bound(phi) prod_j ||b_j||_{p_j} with 1/p = sum_j 1/p_j.
/// bound(phi) comes from ipd_upper_bound.
VerificationReport moi_schatten_check(const MoiSymbol& symbol, const MoiOperands& ops, double p,
                                      std::span<const double> slot_p);

}  // namespace moikit
