#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "moikit/moi.hpp"
#include "moikit/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace moikit;
using moikit::testing::relative_distance;
using std::numbers::pi;

namespace {

const Matrix kSwap{{0.0, 1.0}, {1.0, 0.0}};

MoiSymbol first_coordinate(int arity) {
  return MoiSymbol(arity, [](std::span<const double> x) { return Complex(x[0]); });
}

}  // namespace

TEST(MoiEvaluate, ConstantSymbolReturnsMiddle) {
  CounterRng rng(8, 1);
  const auto d = hermitian_eigendecompose(random_hermitian(rng, 4));
  const Matrix b = random_complex_matrix(rng, 4);
  const auto ops = MoiOperands::repeated(d, {b});
  EXPECT_LT(frobenius_distance(moi_evaluate(MoiSymbol::constant(2, 1.0), ops), b), 1e-13 * b.frobenius_norm());
}

TEST(MoiEvaluate, FirstCoordinateSymbolIsLeftProduct) {
  CounterRng rng(8, 2);
  const Matrix a = random_hermitian(rng, 4);
  const Matrix b = random_complex_matrix(rng, 4);
  const auto d = hermitian_eigendecompose(a);
  const Matrix expected = a * b;
  EXPECT_LT(frobenius_distance(moi_evaluate(first_coordinate(2), MoiOperands::repeated(d, {b})), expected),
            1e-12 * expected.frobenius_norm());
}

TEST(MoiEvaluate, DaletskiiKreinOnDiagonal) {
  const auto d = hermitian_eigendecompose(Matrix::diagonal({1.0, 2.0}));
  const auto sym = MoiSymbol::divided_difference(Polynomial::monomial(2), 1);
  const Matrix got = moi_evaluate(sym, MoiOperands::repeated(d, {kSwap}));
  EXPECT_LT(frobenius_distance(got, Matrix{{0.0, 3.0}, {3.0, 0.0}}), 1e-14);
}

TEST(MoiEvaluate, Errors) {
  const auto d2 = hermitian_eigendecompose(Matrix::diagonal({1.0, 2.0}));
  const auto d3 = hermitian_eigendecompose(Matrix::diagonal({1.0, 2.0, 3.0}));
  EXPECT_THROW_CODE(moi_evaluate(MoiSymbol::constant(3, 1.0), MoiOperands::repeated(d2, {kSwap})),
                    ErrorCode::ArityMismatch);
  EXPECT_THROW_CODE(MoiOperands({std::cref(d2), std::cref(d3)}, {kSwap}), ErrorCode::DimensionMismatch);
  EXPECT_THROW_CODE(MoiOperands::repeated(d2, {Matrix::identity(3)}), ErrorCode::DimensionMismatch);
  EXPECT_THROW(MoiOperands::repeated(d2, {}), Error);
}

TEST(MoiSeparated, Examples) {
  CounterRng rng(8, 3);
  const Matrix a1 = random_hermitian(rng, 3);
  const Matrix a2 = random_hermitian(rng, 3);
  const Matrix b = random_complex_matrix(rng, 3);
  const auto d1 = hermitian_eigendecompose(a1);
  const auto d2 = hermitian_eigendecompose(a2);
  const MoiOperands ops({std::cref(d1), std::cref(d2)}, {b});
  const ScalarFunction one = Polynomial({1.0});
  const ScalarFunction x = Polynomial::monomial(1);

  EXPECT_LT(frobenius_distance(moi_separated(std::vector{SeparatedTerm{1.0, {one, one}}}, ops), b), 1e-13);
  EXPECT_LT(frobenius_distance(moi_separated(std::vector{SeparatedTerm{1.0, {x, one}}}, ops), a1 * b), 1e-12);

  const std::vector<SeparatedTerm> sum{{1.0, {x, one}}, {1.0, {one, x}}};
  const Matrix expected = a1 * b + b * a2;
  EXPECT_LT(frobenius_distance(moi_separated(sum, ops), expected), 1e-12 * expected.frobenius_norm());
  const auto sym = MoiSymbol::separated(2, sum);
  EXPECT_LT(frobenius_distance(moi_evaluate(sym, ops), expected), 1e-12 * expected.frobenius_norm());
}

TEST(MoiSymbol, SeparatedFormMustMatchEvaluator) {
  MoiSymbol sum(2, [](std::span<const double> x) { return Complex(x[0] + x[1]); }, true);
  const ScalarFunction one = Polynomial({1.0});
  const ScalarFunction x = Polynomial::monomial(1);
  sum.set_separated_form({{1.0, {x, one}}, {1.0, {one, x}}});
  const std::vector<std::vector<double>> samples{{0.0, 1.0}, {-2.0, 0.7}, {3.0, 3.0}};
  EXPECT_LT(sum.separated_form_mismatch(samples), 1e-15);
  sum.set_separated_form({{1.0, {x, one}}});
  EXPECT_GT(sum.separated_form_mismatch(samples), 0.5);
}

TEST(MoiPolynomial, Examples) {
  CounterRng rng(8, 4);
  const Matrix a = random_hermitian(rng, 3);
  const Matrix b = random_complex_matrix(rng, 3);
  const Matrix b2 = random_complex_matrix(rng, 3);
  const std::vector<Matrix> as{a, a};
  const std::vector<Matrix> bs{b};
  EXPECT_LT(frobenius_distance(moi_polynomial(2, as, bs), a * b + b * a), 1e-13);

  const std::vector<Matrix> as3{a, a, a};
  const std::vector<Matrix> bs2{b, b2};
  EXPECT_LT(frobenius_distance(moi_polynomial(2, as3, bs2), b * b2), 1e-14);
  EXPECT_EQ(moi_polynomial(1, as3, bs2), Matrix::zero(3));
}

TEST(MoiWiener, Examples) {
  const auto d = hermitian_eigendecompose(Matrix::diagonal({0.0, pi}));
  const Matrix ones{{1.0, 1.0}, {1.0, 1.0}};
  const auto ops = MoiOperands::repeated(d, {ones});
  const auto& rule = SimplexQuadratureRule::cached(1);
  EXPECT_EQ(moi_wiener(WienerAtomic(), ops, rule), Matrix::zero(2));
  EXPECT_LT(moi_wiener(WienerAtomic::exponential(0.0, 2.5), ops, rule).max_abs(), 1e-300);
  const Matrix got = moi_wiener(WienerAtomic::cosine(), ops, rule);
  EXPECT_NEAR(std::abs(got(0, 1) + 2.0 / pi), 0.0, 1e-7);
}

TEST(MoiPerturbation, Examples) {
  CounterRng rng(8, 5);
  const Matrix a = random_hermitian(rng, 4);
  const auto same = perturbation_sides(builtin::cos(), a, a);
  EXPECT_LT(same.difference.max_abs(), 1e-300);
  EXPECT_LT(same.integral.max_abs(), 1e-13);

  const Matrix b = random_hermitian(rng, 4);
  const auto square = perturbation_sides(Polynomial::monomial(2), a, b);
  EXPECT_LT(frobenius_distance(square.difference, square.integral), 1e-12 * square.scale);

  CounterRng rng5(42, 5);
  const Matrix a5 = random_hermitian(rng5, 5);
  const Matrix b5 = random_hermitian(rng5, 5);
  EXPECT_TRUE(moi_perturbation(WienerAtomic::cosine(), a5, b5).passed());
  EXPECT_THROW_CODE(moi_perturbation(WienerAtomic::cosine(), a5, random_complex_matrix(rng5, 5)),
                    ErrorCode::NotHermitian);
}

TEST(MoiOpnormBound, Examples) {
  CounterRng rng(8, 6);
  const auto d = hermitian_eigendecompose(random_hermitian(rng, 4));
  const auto ops = MoiOperands::repeated(d, {random_complex_matrix(rng, 4)});
  const auto one = moi_opnorm_bound_check(MoiSymbol::constant(2, 1.0), ops, 20);
  EXPECT_TRUE(one.passed());
  EXPECT_NEAR(one.checks().front().lhs, 1.0, 1e-10);
  EXPECT_DOUBLE_EQ(one.checks().front().rhs, 4.0);

  const auto diag = hermitian_eigendecompose(Matrix::diagonal({1.0, 2.0}));
  const auto sq = moi_opnorm_bound_check(MoiSymbol::divided_difference(Polynomial::monomial(2), 1),
                                         MoiOperands::repeated(diag, {kSwap}), 100);
  EXPECT_TRUE(sq.passed());
  // p_2^[1](x, y) = x + y has grid maximum 4 on {1, 2}^2, so the bound is 2 * 4.
  EXPECT_DOUBLE_EQ(sq.checks().front().rhs, 8.0);

  const auto zero = moi_opnorm_bound_check(MoiSymbol::constant(2, 0.0), ops, 10);
  EXPECT_TRUE(zero.passed());
  EXPECT_EQ(zero.checks().front().lhs, 0.0);
  EXPECT_EQ(zero.checks().front().rhs, 0.0);
}

TEST(IpdBound, KindsFollowSymbolProvenance) {
  const auto d = hermitian_eigendecompose(Matrix::diagonal({-0.5, 1.0}));
  const auto ops = MoiOperands::repeated(d, {kSwap});
  EXPECT_EQ(ipd_upper_bound(MoiSymbol::divided_difference(WienerAtomic::cosine(), 1), ops).kind, "wiener");
  const auto poly = ipd_upper_bound(MoiSymbol::divided_difference(Polynomial::monomial(2), 1), ops);
  EXPECT_EQ(poly.kind, "polynomial");
  EXPECT_DOUBLE_EQ(poly.value, 2.0);  // 2 * r with r = 1
  EXPECT_EQ(ipd_upper_bound(MoiSymbol::constant(2, 3.0), ops).kind, "separated");
  EXPECT_EQ(ipd_upper_bound(first_coordinate(2), ops).kind, "grid_l1");
}

// ---- properties ----

TEST(MoiProperties, MultilinearInEachSlot) {
  CounterRng rng(42, 31);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 5));
    const int k = rng.integer(1, 3);
    const auto d = hermitian_eigendecompose(random_hermitian(rng, n));
    const auto sym = MoiSymbol::divided_difference(builtin::exp(), k);
    std::vector<Matrix> middles;
    for (int j = 0; j < k; ++j) middles.push_back(random_complex_matrix(rng, n));
    const auto slot = static_cast<std::size_t>(rng.integer(0, k - 1));
    const Complex alpha = rng.complex_normal();
    const Matrix other = random_complex_matrix(rng, n);

    const auto ops = MoiOperands::repeated(d, middles);
    auto swapped = middles;
    swapped[slot] = other;
    auto combined = middles;
    combined[slot] = alpha * middles[slot] + other;

    const Matrix lhs = moi_evaluate(sym, ops.with_middles(combined));
    const Matrix rhs = alpha * moi_evaluate(sym, ops) + moi_evaluate(sym, ops.with_middles(swapped));
    EXPECT_LT(frobenius_distance(lhs, rhs), 1e-9 * (1.0 + rhs.frobenius_norm()));
  }
}

TEST(MoiProperties, LinearInSymbol) {
  CounterRng rng(42, 32);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 5));
    const auto d = hermitian_eigendecompose(random_hermitian(rng, n));
    const auto ops = MoiOperands::repeated(d, {random_complex_matrix(rng, n), random_complex_matrix(rng, n)});
    const auto phi = MoiSymbol::divided_difference(builtin::sin(), 2);
    const auto psi = MoiSymbol::divided_difference(moikit::testing::random_polynomial(rng, 5), 2);
    const Complex alpha = rng.complex_normal();
    const MoiSymbol combo(3, [&](std::span<const double> x) { return alpha * phi(x) + psi(x); });
    const Matrix lhs = moi_evaluate(combo, ops);
    const Matrix rhs = alpha * moi_evaluate(phi, ops) + moi_evaluate(psi, ops);
    EXPECT_LT(frobenius_distance(lhs, rhs), 1e-9 * (1.0 + rhs.frobenius_norm()));
  }
}

TEST(MoiProperties, EntrywiseFormulaForDiagonalBase) {
  CounterRng rng(42, 33);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 6));
    auto values = random_distinct_nodes(rng, n, -2.0, 2.0, 0.05);
    const auto d = hermitian_eigendecompose(Matrix::diagonal(values));
    const Matrix b = random_complex_matrix(rng, n);
    const MoiSymbol phi(2, [](std::span<const double> x) { return Complex(std::sin(x[0]) * x[1], x[0] - x[1]); });
    const Matrix got = moi_evaluate(phi, MoiOperands::repeated(d, {b}));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const double lv[] = {values[r], values[c]};
        EXPECT_LT(std::abs(got(r, c) - phi(lv) * b(r, c)), 1e-14 * (1.0 + std::abs(b(r, c))));
      }
  }
}

TEST(MoiProperties, AgreesWithRankOneEigenOracle) {
  CounterRng rng(42, 34);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 5));
    const int k = rng.integer(1, 3);
    std::vector<Matrix> bases;
    std::vector<SpectralDecomposition> decomps;
    for (int j = 0; j <= k; ++j) {
      bases.push_back(random_hermitian(rng, n));
      decomps.push_back(hermitian_eigendecompose(bases.back()));
    }
    std::vector<MoiOperands::DecompositionRef> refs(decomps.begin(), decomps.end());
    std::vector<Matrix> middles;
    for (int j = 0; j < k; ++j) middles.push_back(random_complex_matrix(rng, n));
    const auto phi = MoiSymbol::divided_difference(builtin::cos(), k);
    const MoiOperands ops(refs, middles);
    const Matrix ours = moi_evaluate(phi, ops);
    const Matrix ref = moikit::testing::eigen_moi([&](std::span<const double> x) { return phi(x); }, bases, middles);
    EXPECT_LT(relative_distance(ours, ref), 1e-9) << "case " << i;
  }
}

TEST(MoiProperties, PolynomialStrategyAgrees) {
  CounterRng rng(42, 35);
  for (int i = 0; i < 60; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 6));
    const int k = rng.integer(1, 3);
    const int power = rng.integer(0, 6);
    const auto d = hermitian_eigendecompose(random_hermitian_with_norm(rng, n, 1.0));
    std::vector<Matrix> middles;
    for (int j = 0; j < k; ++j) middles.push_back(random_hermitian(rng, n));
    const auto ops = MoiOperands::repeated(d, middles);
    const Matrix closed = moi_polynomial(power, ops);
    const Matrix summed = moi_evaluate(MoiSymbol::divided_difference(Polynomial::monomial(power), k), ops);
    EXPECT_LE(frobenius_distance(closed, summed), 1e-8 * std::max(1.0, closed.frobenius_norm()));
  }
}

TEST(MoiProperties, WienerStrategyAgrees) {
  CounterRng rng(42, 36);
  const WienerAtomic functions[] = {WienerAtomic::cosine(), WienerAtomic::sine(), WienerAtomic::exponential(1.3)};
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 5));
    const int k = rng.integer(1, 3);
    const auto d = hermitian_eigendecompose(random_hermitian_with_norm(rng, n, 1.0));
    std::vector<Matrix> middles;
    for (int j = 0; j < k; ++j) middles.push_back(random_hermitian(rng, n));
    const auto ops = MoiOperands::repeated(d, middles);
    const auto& f = functions[i % 3];
    const Matrix quad = moi_wiener(f, ops, SimplexQuadratureRule::cached(k));
    const Matrix summed = moi_evaluate(MoiSymbol::divided_difference(f, k), ops);
    EXPECT_LE(frobenius_distance(quad, summed), 1e-7 * (1.0 + summed.frobenius_norm()));
  }
}

TEST(MoiProperties, PerturbationIdentityHolds) {
  CounterRng rng(42, 37);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 6));
    const Matrix a = random_hermitian(rng, n);
    const Matrix b = random_hermitian(rng, n);
    const ScalarFunction f = (i % 2 == 0) ? ScalarFunction(moikit::testing::random_polynomial(rng, 6))
                                          : ScalarFunction(moikit::testing::random_wiener(rng, 2));
    EXPECT_TRUE(moi_perturbation(f, a, b).passed()) << "case " << i;
  }
}

TEST(MoiProperties, OpnormBoundHolds) {
  CounterRng rng(42, 38);
  for (int i = 0; i < 20; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 5));
    const int k = rng.integer(1, 3);
    const auto d = hermitian_eigendecompose(random_hermitian(rng, n));
    std::vector<Matrix> middles;
    for (int j = 0; j < k; ++j) middles.push_back(random_complex_matrix(rng, n));
    const auto sym = MoiSymbol::divided_difference(moikit::testing::random_polynomial(rng, 5), k);
    EXPECT_TRUE(moi_opnorm_bound_check(sym, MoiOperands::repeated(d, middles), 10, 7).passed());
  }
}

TEST(MoiProperties, ThreadCountDoesNotChangeBits) {
  CounterRng rng(42, 39);
  const auto d = hermitian_eigendecompose(random_hermitian(rng, 6));
  const auto ops = MoiOperands::repeated(
      d, {random_complex_matrix(rng, 6), random_complex_matrix(rng, 6), random_complex_matrix(rng, 6)});
  const auto sym = MoiSymbol::divided_difference(builtin::exp(), 3);
  const Matrix serial = moi_evaluate(sym, ops, {1});
  for (unsigned t : {2u, 3u, 8u}) EXPECT_EQ(moi_evaluate(sym, ops, {t}), serial);
}

TEST(SymbolGrid, RejectsNonFiniteSymbolValues) {
  const auto d = hermitian_eigendecompose(Matrix::diagonal({0.0, 1.0}));
  const MoiSymbol bad(2, [](std::span<const double> x) { return Complex(1.0 / x[0]); });
  const auto ops = MoiOperands::repeated(d, {kSwap});
  EXPECT_THROW_CODE(evaluate_symbol_grid(bad, ops.decompositions()), ErrorCode::EvaluationDomain);
}
