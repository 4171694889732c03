#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moikit/divided_difference.hpp"
#include "moikit/matrix.hpp"
#include "moikit/report.hpp"
#include "moikit/scalar_function.hpp"
#include "moikit/spectral.hpp"

namespace moikit {

/// One term w * phi_1(x_1) ... phi_{k+1}(x_{k+1}) of a finite separated
/// (projective) decomposition of a symbol.
struct SeparatedTerm {
  Complex weight;
  std::vector<ScalarFunction> factors;
};

/// The symbol phi of a multiple operator integral, a function of k+1
/// eigenvalues. Only its values on the spectral grid are ever read.
class MoiSymbol {
 public:
  using Evaluator = std::function<Complex(std::span<const double>)>;

  MoiSymbol(int arity, Evaluator evaluator, bool symmetric = false);

  static MoiSymbol constant(int arity, Complex value);
  /// phi = f^[k], arity k + 1. Remembers f so that certified norm bounds
  /// are available for polynomial and Wiener f.
  static MoiSymbol divided_difference(ScalarFunction f, int k, DividedDifferenceOptions options = {});
  /// phi(x) = sum_terms w prod_j phi_j(x_j)
  static MoiSymbol separated(int arity, std::vector<SeparatedTerm> terms);

  int arity() const noexcept { return arity_; }
  int order() const noexcept { return arity_ - 1; }
  bool symmetric() const noexcept { return symmetric_; }
  Complex operator()(std::span<const double> x) const;

  const std::vector<SeparatedTerm>* separated_form() const noexcept {
    return separated_ ? &*separated_ : nullptr;
  }
  /// Attach a separated form to an evaluator-defined symbol.
  MoiSymbol& set_separated_form(std::vector<SeparatedTerm> terms);
  /// max over samples of |evaluator - recombined separated form|; 0 without a separated form.
  double separated_form_mismatch(std::span<const std::vector<double>> samples) const;

  /// Function whose divided difference this symbol is, if any.
  const std::optional<ScalarFunction>& source_function() const noexcept { return source_; }

 private:
  int arity_;
  Evaluator evaluator_;
  bool symmetric_;
  std::optional<std::vector<SeparatedTerm>> separated_;
  std::optional<ScalarFunction> source_;
};

/// Spectral decompositions A_1..A_{k+1} and middle matrices B_1..B_k.
/// Decompositions are borrowed; they must outlive the operands.
class MoiOperands {
 public:
  using DecompositionRef = std::reference_wrapper<const SpectralDecomposition>;

  MoiOperands(std::vector<DecompositionRef> decomps, std::vector<Matrix> middles);
  /// Every slot uses the same decomposition.
  static MoiOperands repeated(const SpectralDecomposition& d, std::vector<Matrix> middles);

  int order() const noexcept { return static_cast<int>(middles_.size()); }
  std::size_t dimension() const noexcept { return decomps_.front().get().dimension(); }
  const SpectralDecomposition& decomposition(std::size_t slot) const { return decomps_[slot].get(); }
  std::span<const DecompositionRef> decompositions() const noexcept { return decomps_; }
  std::span<const Matrix> middles() const noexcept { return middles_; }
  /// Same decompositions, different middle matrices.
  MoiOperands with_middles(std::vector<Matrix> middles) const;

 private:
  std::vector<DecompositionRef> decomps_;
  std::vector<Matrix> middles_;
};

struct MoiOptions {
  /// Worker threads for symbol evaluation. The sum itself is always reduced
  /// in lexicographic order, so results do not depend on this.
  unsigned threads = 1;
};

/// Symbol values on sigma(A_1) x ... x sigma(A_{k+1}), last index fastest.
class SymbolGrid {
 public:
  SymbolGrid(std::vector<std::size_t> extents, std::vector<Complex> values);

  std::span<const std::size_t> extents() const noexcept { return extents_; }
  std::span<const Complex> values() const noexcept { return values_; }
  double max_abs() const noexcept;
  /// sum |phi| over the grid.
  double l1_norm() const noexcept;

 private:
  std::vector<std::size_t> extents_;
  std::vector<Complex> values_;
};

SymbolGrid evaluate_symbol_grid(const MoiSymbol& symbol, std::span<const MoiOperands::DecompositionRef> decomps,
                                const MoiOptions& options = {});

/// sum_lambda phi(lambda) P_{l1} B_1 P_{l2} ... B_k P_{l_{k+1}}
Matrix moi_evaluate(const MoiSymbol& symbol, const MoiOperands& ops, const MoiOptions& options = {});
Matrix moi_evaluate(const SymbolGrid& grid, const MoiOperands& ops);

/// sum_terms w phi_1(A_1) B_1 ... phi_{k+1}(A_{k+1})
Matrix moi_separated(std::span<const SeparatedTerm> terms, const MoiOperands& ops);

/// sum_{|g| = n-k} a_1^{g_1} b_1 ... a_k^{g_k} b_k a_{k+1}^{g_{k+1}}; zero when n < k.
Matrix moi_polynomial(int n, std::span<const Matrix> a, std::span<const Matrix> b);
/// Uses each decomposition's source matrix (or its reconstruction).
Matrix moi_polynomial(int n, const MoiOperands& ops);

/// sum_atoms sum_q c w_q (i xi)^k e^{i t_1 xi A_1} B_1 ... e^{i t_{k+1} xi A_{k+1}}
Matrix moi_wiener(const WienerAtomic& f, const MoiOperands& ops, const SimplexQuadratureRule& rule);

struct PerturbationSides {
  Matrix difference;  ///< f(A) - f(B)
  Matrix integral;    ///< (I^{A,B} f^[1])[A - B]
  double scale;       ///< 1 + ||f(A)||_F
};

struct PerturbationOptions {
  double relative_tolerance = 1e-8;
  DividedDifferenceOptions divided_difference;
  EigensolverOptions eigensolver;
};

PerturbationSides perturbation_sides(const ScalarFunction& f, const Matrix& a, const Matrix& b,
                                     const PerturbationOptions& options = {});

/// f(A) - f(B) = (I^{A,B} f^[1])[A - B] within tol (1 + ||f(A)||_F).
VerificationReport moi_perturbation(const ScalarFunction& f, const Matrix& a, const Matrix& b,
                                    const PerturbationOptions& options = {});

/// Probes ||I^A phi|| with the operands' middles plus random unit-norm
/// directions and checks it against n^k max |phi| on the spectral grid.
VerificationReport moi_opnorm_bound_check(const MoiSymbol& symbol, const MoiOperands& ops, int probes,
                                          std::uint64_t seed = 42);

struct IpdBound {
  double value;
  std::string kind;  ///< "wiener", "polynomial", "separated" or "grid_l1"
};

/// A certified upper bound for the projective tensor norm of the symbol on
/// the operands' spectra.
IpdBound ipd_upper_bound(const MoiSymbol& symbol, const MoiOperands& ops);

}  // namespace moikit
