#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "moikit/matrix.hpp"
#include "moikit/report.hpp"
#include "moikit/scalar_function.hpp"

namespace moikit {

struct SpectralCluster {
  double eigenvalue;
  Matrix projection;
  int multiplicity;
};

/// A = sum_i lambda_i P_i over distinct (clustered) eigenvalues.
///
/// Hand-built decompositions are accepted as long as the eigenvalues are
/// strictly increasing and the projections share a dimension; the algebraic
/// invariants are checked by validate_decomposition, not here.
class SpectralDecomposition {
 public:
  SpectralDecomposition(std::vector<SpectralCluster> clusters, double source_norm, double cluster_tol,
                        std::optional<Matrix> source = std::nullopt);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t cluster_count() const noexcept { return clusters_.size(); }
  std::span<const SpectralCluster> clusters() const noexcept { return clusters_; }
  double eigenvalue(std::size_t i) const { return clusters_[i].eigenvalue; }
  const Matrix& projection(std::size_t i) const { return clusters_[i].projection; }
  std::vector<double> eigenvalues() const;

  /// Operator-norm estimate of the source matrix (max |lambda|).
  double source_norm() const noexcept { return source_norm_; }
  double cluster_tol() const noexcept { return cluster_tol_; }
  /// The decomposed matrix, when known.
  const std::optional<Matrix>& source() const noexcept { return source_; }
  /// sum_i lambda_i P_i
  Matrix reconstruct() const;

 private:
  std::vector<SpectralCluster> clusters_;
  std::size_t dimension_ = 0;
  double source_norm_;
  double cluster_tol_;
  std::optional<Matrix> source_;
};

struct EigenPairs {
  std::vector<double> values;  ///< ascending
  Matrix vectors;              ///< column j is the eigenvector of values[j]
};

struct EigensolverOptions {
  /// default 1e-7 (1 + ||A||_F)
  std::optional<double> cluster_tol;
  /// default 1e-10 (1 + max |A_ij|)
  std::optional<double> hermiticity_tol;
  int max_sweeps = 30;
  /// stop once the off-diagonal Frobenius norm is below this times ||A||_F
  double off_diagonal_rtol = 1e-13;
};

/// Cyclic complex Jacobi. Only the Hermitian part of `a` is used; throws
/// ConvergenceFailure after max_sweeps.
EigenPairs jacobi_eigensolve(const Matrix& a, int max_sweeps = 30, double off_diagonal_rtol = 1e-13);

double default_cluster_tol(const Matrix& a) noexcept;

/// Throws NotHermitian when ||A - A*||_max exceeds the tolerance.
SpectralDecomposition hermitian_eigendecompose(const Matrix& a, const EigensolverOptions& options = {});

/// sum_i f(lambda_i) P_i; throws EvaluationDomain if some f(lambda_i) is not finite.
Matrix functional_calculus(const ScalarFunction& f, const SpectralDecomposition& d);
Matrix functional_calculus(const std::function<Complex(double)>& f, const SpectralDecomposition& d);
// The concrete representations convert to both parameter types above.
inline Matrix functional_calculus(const Polynomial& f, const SpectralDecomposition& d) {
  return functional_calculus(ScalarFunction(f), d);
}
inline Matrix functional_calculus(const WienerAtomic& f, const SpectralDecomposition& d) {
  return functional_calculus(ScalarFunction(f), d);
}
inline Matrix functional_calculus(const CallableFunction& f, const SpectralDecomposition& d) {
  return functional_calculus(ScalarFunction(f), d);
}

/// Residuals of every decomposition invariant against its tolerance.
VerificationReport validate_decomposition(const SpectralDecomposition& d);

}  // namespace moikit
