#include "moikit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "moikit/error.hpp"

namespace moikit {

namespace {

double off_diagonal_norm(const Matrix& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j)
      if (i != j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

}  // namespace

// ------------------------------------------------------ SpectralDecomposition

SpectralDecomposition::SpectralDecomposition(std::vector<SpectralCluster> clusters, double source_norm,
                                             double cluster_tol, std::optional<Matrix> source)
    : clusters_(std::move(clusters)), source_norm_(source_norm), cluster_tol_(cluster_tol), source_(std::move(source)) {
  if (clusters_.empty()) throw Error(ErrorCode::InvalidArgument, "a decomposition needs at least one cluster");
  dimension_ = clusters_.front().projection.size();
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    if (clusters_[i].projection.size() != dimension_)
      throw Error(ErrorCode::DimensionMismatch, "projections must share a dimension");
    if (i > 0 && !(clusters_[i].eigenvalue > clusters_[i - 1].eigenvalue))
      throw Error(ErrorCode::InvalidArgument, "cluster eigenvalues must be strictly increasing");
  }
  if (source_ && source_->size() != dimension_)
    throw Error(ErrorCode::DimensionMismatch, "source matrix dimension differs from projections");
}

std::vector<double> SpectralDecomposition::eigenvalues() const {
  std::vector<double> out;
  out.reserve(clusters_.size());
  for (const auto& c : clusters_) out.push_back(c.eigenvalue);
  return out;
}

Matrix SpectralDecomposition::reconstruct() const {
  return functional_calculus([](double x) { return Complex(x); }, *this);
}

// ------------------------------------------------------------------- Jacobi

EigenPairs jacobi_eigensolve(const Matrix& a, int max_sweeps, double off_diagonal_rtol) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cannot decompose an empty matrix");

  Matrix h = a + a.adjoint();
  h *= 0.5;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();
  Matrix v = Matrix::identity(n);

  const double threshold = off_diagonal_rtol * h.frobenius_norm();
  bool converged = off_diagonal_norm(h) <= threshold;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = h(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Remove the phase of a_pq, then apply the real symmetric rotation.
        const Complex phase = apq / mag;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex cp = std::conj(phase);

        for (std::size_t r = 0; r < n; ++r) {
          const Complex hp = h(r, p);
          const Complex hq = h(r, q);
          h(r, p) = c * hp - s * cp * hq;
          h(r, q) = s * hp + c * cp * hq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Complex hp = h(p, r);
          const Complex hq = h(q, r);
          h(p, r) = c * hp - s * phase * hq;
          h(q, r) = s * hp + c * phase * hq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vp = v(r, p);
          const Complex vq = v(r, q);
          v(r, p) = c * vp - s * cp * vq;
          v(r, q) = s * vp + c * cp * vq;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
    converged = off_diagonal_norm(h) <= threshold;
  }
  if (!converged) {
    throw Error(ErrorCode::ConvergenceFailure,
                "Jacobi sweeps exceeded budget of " + std::to_string(max_sweeps));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });
  EigenPairs out{std::vector<double>(n), Matrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = h(order[j], order[j]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

double default_cluster_tol(const Matrix& a) noexcept { return 1e-7 * (1.0 + a.frobenius_norm()); }

SpectralDecomposition hermitian_eigendecompose(const Matrix& a, const EigensolverOptions& options) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cannot decompose an empty matrix");
  const double herm_tol = options.hermiticity_tol.value_or(1e-10 * (1.0 + a.max_abs()));
  const double defect = a.hermiticity_defect();
  if (defect > herm_tol) {
    throw Error(ErrorCode::NotHermitian,
                "||A - A*||_max = " + std::to_string(defect) + " exceeds " + std::to_string(herm_tol));
  }
  const double cluster_tol = options.cluster_tol.value_or(default_cluster_tol(a));
  const auto pairs = jacobi_eigensolve(a, options.max_sweeps, options.off_diagonal_rtol);

  std::vector<SpectralCluster> clusters;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && pairs.values[end] - pairs.values[end - 1] <= cluster_tol) ++end;
    double mean = 0.0;
    Matrix proj(n);
    for (std::size_t j = start; j < end; ++j) {
      mean += pairs.values[j];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) proj(r, c) += pairs.vectors(r, j) * std::conj(pairs.vectors(c, j));
    }
    mean /= static_cast<double>(end - start);
    clusters.push_back({mean, std::move(proj), static_cast<int>(end - start)});
    start = end;
  }
  double norm = 0.0;
  for (double x : pairs.values) norm = std::max(norm, std::abs(x));
  return SpectralDecomposition(std::move(clusters), norm, cluster_tol, a);
}

// ------------------------------------------------------- functional calculus

Matrix functional_calculus(const std::function<Complex(double)>& f, const SpectralDecomposition& d) {
  Matrix out(d.dimension());
  for (const auto& c : d.clusters()) {
    const Complex fx = f(c.eigenvalue);
    if (!std::isfinite(fx.real()) || !std::isfinite(fx.imag())) {
      throw Error(ErrorCode::EvaluationDomain, "function is not finite at eigenvalue " + std::to_string(c.eigenvalue));
    }
    if (fx == Complex(0.0)) continue;
    const auto src = c.projection.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += fx * src[i];
  }
  return out;
}

Matrix functional_calculus(const ScalarFunction& f, const SpectralDecomposition& d) {
  return functional_calculus([&f](double x) { return f(x); }, d);
}

// ---------------------------------------------------------------- validation

VerificationReport validate_decomposition(const SpectralDecomposition& d) {
  VerificationReport report("spectral_decomposition");
  const std::size_t n = d.dimension();
  const double dn = static_cast<double>(n);
  const auto clusters = d.clusters();

  double ordering = 0.0;
  for (std::size_t i = 1; i < clusters.size(); ++i)
    if (!(clusters[i].eigenvalue > clusters[i - 1].eigenvalue)) ordering = 1.0;
  report.add(equality_check("eigenvalues_increasing", "eigenvalues strictly increasing", ordering, 0.0, ordering, 0.0));

  Matrix sum(n);
  for (const auto& c : clusters) sum += c.projection;
  const Matrix id = Matrix::identity(n);
  report.add(equality_check("resolution_of_identity", "sum_i P_i = I", sum.frobenius_norm(), id.frobenius_norm(),
                            frobenius_distance(sum, id), 1e-10 * dn));

  double orth = 0.0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      Matrix prod = clusters[i].projection * clusters[j].projection;
      if (i == j) prod -= clusters[i].projection;
      orth = std::max(orth, prod.frobenius_norm());
    }
  }
  report.add(equality_check("orthogonal_idempotent", "P_i P_j = delta_ij P_i", orth, 0.0, orth, 1e-10));

  double herm = 0.0;
  double trace = 0.0;
  for (const auto& c : clusters) {
    herm = std::max(herm, c.projection.hermiticity_defect());
    trace = std::max(trace, std::abs(c.projection.trace() - Complex(c.multiplicity)));
  }
  report.add(equality_check("projection_hermitian", "P_i = P_i*", herm, 0.0, herm, 1e-10));
  report.add(equality_check("projection_trace", "trace(P_i) = multiplicity_i", trace, 0.0, trace, 1e-8));

  if (d.source()) {
    const Matrix recon = d.reconstruct();
    report.add(equality_check("reconstruction", "A = sum_i lambda_i P_i", d.source()->frobenius_norm(),
                              recon.frobenius_norm(), frobenius_distance(*d.source(), recon),
                              1e-10 * dn * (1.0 + d.source_norm())));
  }
  return report;
}

}  // namespace moikit
