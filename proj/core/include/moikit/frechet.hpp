#pragma once

#include <map>
#include <span>
#include <vector>

#include "moikit/divided_difference.hpp"
#include "moikit/matrix.hpp"
#include "moikit/moi.hpp"
#include "moikit/scalar_function.hpp"
#include "moikit/spectral.hpp"

namespace moikit {

enum class DerivativeStrategy { Moi, FiniteDifference, PowerClosedForm };

struct FiniteDifferenceOptions {
  double step = 1e-4;
  /// use step * (1 + ||A||) so the stencil scales with the base point
  bool scale_step_by_norm = true;
  /// combine steps h and h/2 as (4 D(h/2) - D(h)) / 3
  bool richardson = false;

  /// Richardson-refined stencil with h = 1e-15^{1/(k+4)}, which balances the
  /// O(h^4) truncation error against ~1e-15 rounding in each f(A + ...)
  /// evaluation amplified by h^{-k}.
  static FiniteDifferenceOptions for_order(int k);
};

struct DerivativeRequest {
  DerivativeRequest(ScalarFunction f_, Matrix a_, std::vector<Matrix> directions_)
      : f(std::move(f_)), a(std::move(a_)), directions(std::move(directions_)) {}

  ScalarFunction f;
  Matrix a;
  std::vector<Matrix> directions;
  DerivativeStrategy strategy = DerivativeStrategy::Moi;
  FiniteDifferenceOptions finite_difference;
  DividedDifferenceOptions divided_difference;
  EigensolverOptions eigensolver;
  MoiOptions moi;
};

/// sum_pi sum_{|g| = m-k} a^{g_1} b_pi(1) ... a^{g_k} b_pi(k) a^{g_{k+1}}.
/// Valid in any matrix algebra, so a and dirs need not be Hermitian.
Matrix power_map_derivative(int m, const Matrix& a, std::span<const Matrix> dirs);

/// D^k f(A)[B_1, ..., B_k]. The MOI strategy sums (I^{A..A} f^[k])[B_pi(1), ..., B_pi(k)]
/// over all permutations in lexicographic order.
Matrix matrix_function_derivative(const DerivativeRequest& request);
Matrix matrix_function_derivative(const ScalarFunction& f, const Matrix& a, std::span<const Matrix> dirs,
                                  DerivativeStrategy strategy = DerivativeStrategy::Moi);

/// (2h)^{-k} sum_{s in {-1,1}^k} (prod s) f(A + h sum_i s_i B_i)
Matrix finite_difference_derivative(const ScalarFunction& f, const Matrix& a, std::span<const Matrix> dirs,
                                    const FiniteDifferenceOptions& options = {});

/// All permutations of 0..k-1 in lexicographic order.
std::vector<std::vector<int>> permutations_lexicographic(int k);

using PermutationEvaluations = std::map<std::vector<int>, Matrix>;
/// Sum of T(b_pi(1), ..., b_pi(k)) over all k! permutations, in lexicographic
/// order. Throws MissingPermutation when one is absent.
Matrix symmetrize(const PermutationEvaluations& evaluations, int k);

/// f(a+b) - f(a) - sum_{j<k} D^j f(a)[b, ..., b] / j!
Matrix taylor_remainder_direct(const ScalarFunction& f, int k, const Matrix& a, const Matrix& b,
                               const DividedDifferenceOptions& dd = {});
/// (I^{a+b, a, ..., a} f^[k])[b, ..., b]
Matrix taylor_remainder_moi(const ScalarFunction& f, int k, const Matrix& a, const Matrix& b,
                            const DividedDifferenceOptions& dd = {});
/// k int_0^1 (1-t)^{k-1} (I^{a+tb, ..., a+tb} f^[k])[b, ..., b] dt by Gauss-Legendre.
Matrix taylor_remainder_integral(const ScalarFunction& f, int k, const Matrix& a, const Matrix& b, int steps = 32,
                                 const DividedDifferenceOptions& dd = {});

/// max ||a + t b|| over the Gauss-Legendre nodes and both endpoints.
double remainder_radius(const Matrix& a, const Matrix& b, int steps = 32);

}  // namespace moikit
