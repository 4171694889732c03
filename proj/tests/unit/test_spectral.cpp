#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "moikit/rng.hpp"
#include "moikit/spectral.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace moikit;
using moikit::testing::relative_distance;

namespace {

double max_entry_distance(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST(Eigendecompose, DiagonalGivesCoordinateProjections) {
  EigensolverOptions opt;
  opt.cluster_tol = 1e-8;
  const auto d = hermitian_eigendecompose(Matrix::diagonal({1.0, 2.0, 3.0}), opt);
  ASSERT_EQ(d.cluster_count(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(d.eigenvalue(i), i + 1.0, 1e-15);
    EXPECT_EQ(d.clusters()[i].multiplicity, 1);
    Matrix e(3);
    e(i, i) = 1.0;
    EXPECT_LT(max_entry_distance(d.projection(i), e), 1e-15);
  }
}

TEST(Eigendecompose, ScalarMatrixIsOneCluster) {
  for (double tol : {1e-14, 1e-8, 1.0}) {
    EigensolverOptions opt;
    opt.cluster_tol = tol;
    const auto d = hermitian_eigendecompose(Matrix::identity(2), opt);
    ASSERT_EQ(d.cluster_count(), 1u);
    EXPECT_EQ(d.eigenvalue(0), 1.0);
    EXPECT_EQ(d.clusters()[0].multiplicity, 2);
    EXPECT_LT(max_entry_distance(d.projection(0), Matrix::identity(2)), 1e-15);
  }
}

TEST(Eigendecompose, SwapMatrix) {
  const auto d = hermitian_eigendecompose(Matrix{{0.0, 1.0}, {1.0, 0.0}});
  ASSERT_EQ(d.cluster_count(), 2u);
  EXPECT_NEAR(d.eigenvalue(0), -1.0, 1e-15);
  EXPECT_NEAR(d.eigenvalue(1), 1.0, 1e-15);
  EXPECT_LT(max_entry_distance(d.projection(0), Matrix{{0.5, -0.5}, {-0.5, 0.5}}), 1e-15);
  EXPECT_LT(max_entry_distance(d.projection(1), Matrix{{0.5, 0.5}, {0.5, 0.5}}), 1e-15);
}

TEST(Eigendecompose, RejectsNonHermitian) {
  EXPECT_THROW_CODE(hermitian_eigendecompose(Matrix{{0.0, 1.0}, {0.0, 0.0}}), ErrorCode::NotHermitian);
  EXPECT_THROW_CODE(hermitian_eigendecompose(Matrix{{Complex(0.0, 1.0)}}), ErrorCode::NotHermitian);
}

TEST(Eigendecompose, SweepBudgetIsEnforced) {
  CounterRng rng(1, 2);
  const Matrix a = random_hermitian(rng, 8);
  EXPECT_THROW_CODE(jacobi_eigensolve(a, 1), ErrorCode::ConvergenceFailure);
}

TEST(FunctionalCalculus, Examples) {
  CounterRng rng(3, 1);
  const Matrix a = random_hermitian(rng, 5);
  const auto d = hermitian_eigendecompose(a);
  EXPECT_LT(frobenius_distance(functional_calculus(Polynomial::monomial(1), d), a), 1e-12 * a.frobenius_norm());
  EXPECT_LT(frobenius_distance(functional_calculus(Polynomial({1.0}), d), Matrix::identity(5)), 1e-12);

  const auto swap = hermitian_eigendecompose(Matrix{{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_LT(frobenius_distance(functional_calculus(Polynomial::monomial(2), swap), Matrix::identity(2)), 1e-14);
}

TEST(FunctionalCalculus, NonFiniteValueIsADomainError) {
  const auto d = hermitian_eigendecompose(Matrix::diagonal({0.0, 1.0}));
  const std::function<Complex(double)> inv = [](double x) { return Complex(1.0 / x); };
  EXPECT_THROW_CODE(functional_calculus(inv, d), ErrorCode::EvaluationDomain);
}

TEST(FunctionalCalculus, PolynomialMatchesHorner) {
  CounterRng rng(3, 2);
  for (int i = 0; i < 20; ++i) {
    const Matrix a = random_hermitian(rng, 4);
    const Polynomial p = moikit::testing::random_polynomial(rng, 6);
    Matrix horner = Matrix::zero(4);
    for (int n = p.degree(); n >= 0; --n) {
      horner = horner * a;
      horner += p.coeff(n) * Matrix::identity(4);
    }
    const double norm = std::max(1.0, a.frobenius_norm());
    EXPECT_LT(frobenius_distance(functional_calculus(p, hermitian_eigendecompose(a)), horner),
              1e-8 * std::pow(norm, p.degree()));
  }
}

TEST(ValidateDecomposition, EigensolverOutputPasses) {
  const auto small = validate_decomposition(hermitian_eigendecompose(Matrix::diagonal({1.0, 2.0})));
  EXPECT_TRUE(small.passed());
  for (const auto& c : small.checks()) EXPECT_LT(c.residual, 1e-12) << c.name;

  CounterRng rng(42, 0);
  EXPECT_TRUE(validate_decomposition(hermitian_eigendecompose(random_hermitian(rng, 8))).passed());
}

TEST(ValidateDecomposition, HandBuiltViolationFails) {
  const Matrix eye = Matrix::identity(2);
  const SpectralDecomposition d({{1.0, eye, 1}, {2.0, eye, 1}}, 2.0, 1e-8);
  const auto report = validate_decomposition(d);
  EXPECT_FALSE(report.passed());
  bool projection_failure = false;
  for (const auto& c : report.checks()) {
    if (!c.pass && (c.name.find("orthogonal") != std::string::npos || c.name.find("idempot") != std::string::npos)) {
      projection_failure = true;
    }
  }
  EXPECT_TRUE(projection_failure);
}

TEST(SpectralProperties, ReconstructionAgainstEigen) {
  CounterRng rng(42, 21);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 12));
    const Matrix a = random_hermitian(rng, n);
    const auto d = hermitian_eigendecompose(a);
    EXPECT_LE(frobenius_distance(a, d.reconstruct()) / a.frobenius_norm(), 1e-10) << "case " << i;

    // Eigen's self-adjoint solver is the independent reference for the spectrum.
    const auto ref = moikit::testing::eigen_eigenvalues(a);
    std::vector<double> ours;
    for (const auto& c : d.clusters())
      for (int m = 0; m < c.multiplicity; ++m) ours.push_back(c.eigenvalue);
    ASSERT_EQ(ours.size(), ref.size());
    for (std::size_t j = 0; j < ours.size(); ++j) EXPECT_NEAR(ours[j], ref[j], 1e-10 * (1.0 + a.frobenius_norm()));
  }
}

TEST(SpectralProperties, FunctionAgreesWithEigenOracle) {
  CounterRng rng(42, 22);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = random_hermitian(rng, static_cast<std::size_t>(rng.integer(2, 8)));
    const auto ours = functional_calculus(builtin::cos(), hermitian_eigendecompose(a));
    const auto ref = moikit::testing::eigen_function([](double x) { return Complex(std::cos(x)); }, a);
    EXPECT_LT(relative_distance(ours, ref), 1e-10);
  }
}

TEST(SpectralProperties, MultiplicativeCalculus) {
  CounterRng rng(42, 23);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = random_hermitian(rng, static_cast<std::size_t>(rng.integer(2, 6)));
    const auto d = hermitian_eigendecompose(a);
    const Polynomial f = moikit::testing::random_polynomial(rng, 4);
    const Polynomial g = moikit::testing::random_polynomial(rng, 4);
    const Matrix fg = functional_calculus(f * g, d);
    EXPECT_LT(frobenius_distance(fg, functional_calculus(f, d) * functional_calculus(g, d)),
              1e-8 * (1.0 + fg.frobenius_norm()));
  }
}

TEST(SpectralProperties, SpectralMapping) {
  CounterRng rng(42, 24);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = random_hermitian(rng, static_cast<std::size_t>(rng.integer(2, 6)));
    const auto d = hermitian_eigendecompose(a);
    const Polynomial p = moikit::testing::random_real_polynomial(rng, 5);
    std::vector<double> expected;
    for (const auto& c : d.clusters())
      for (int m = 0; m < c.multiplicity; ++m) expected.push_back(p(c.eigenvalue).real());
    std::sort(expected.begin(), expected.end());
    const auto mapped = moikit::testing::eigen_eigenvalues(functional_calculus(p, d));
    ASSERT_EQ(mapped.size(), expected.size());
    for (std::size_t j = 0; j < mapped.size(); ++j) EXPECT_NEAR(mapped[j], expected[j], 1e-8);
  }
}

TEST(SpectralProperties, ExactDegeneracyMergesAndSplitIsEquivalent) {
  CounterRng rng(42, 25);
  for (int i = 0; i < 20; ++i) {
    const Matrix a = moikit::testing::hermitian_with_spectrum(rng, {-1.0, 0.5, 0.5, 0.5, 2.0});
    const auto merged = hermitian_eigendecompose(a);
    ASSERT_EQ(merged.cluster_count(), 3u);
    EXPECT_EQ(merged.clusters()[1].multiplicity, 3);

    // Same matrix with clustering disabled: the triple eigenvalue may come
    // back as up to three rank-one clusters separated by rounding.
    EigensolverOptions split_options;
    split_options.cluster_tol = 0.0;
    const auto split = hermitian_eigendecompose(a, split_options);
    EXPECT_GE(split.cluster_count(), merged.cluster_count());

    const auto f = builtin::exp();
    EXPECT_LT(relative_distance(functional_calculus(f, merged), functional_calculus(f, split)), 1e-12);
  }
}
