#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "moikit/scalar_function.hpp"
#include "test_util.hpp"

using namespace moikit;

TEST(Polynomial, TrailingZerosAreTrimmed) {
  const Polynomial p({1.0, 2.0, 0.0, 0.0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p.coeffs().size(), 2u);
}

TEST(Polynomial, ZeroPolynomialIsCanonical) {
  const Polynomial p({0.0, 0.0});
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(p, Polynomial());
}

TEST(Polynomial, EvaluatesAndDifferentiates) {
  const Polynomial p({1.0, -2.0, 3.0});  // 1 - 2x + 3x^2
  EXPECT_EQ(p(2.0), Complex(9.0));
  EXPECT_EQ(p.derivative(1, 2.0), Complex(10.0));
  EXPECT_EQ(p.derivative(2, 5.0), Complex(6.0));
  EXPECT_EQ(p.derivative(3, 5.0), Complex(0.0));
  EXPECT_EQ(p.derivative(1), Polynomial({-2.0, 6.0}));
}

TEST(Polynomial, ArithmeticMatchesPointwise) {
  const Polynomial a({1.0, Complex(0.0, 1.0)});
  const Polynomial b({-1.0, 0.0, 2.0});
  for (double x : {-1.5, 0.0, 0.3, 2.0}) {
    EXPECT_NEAR(std::abs((a * b)(x) - a(x) * b(x)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs((a + b)(x) - (a(x) + b(x))), 0.0, 1e-14);
  }
  EXPECT_EQ(Polynomial::monomial(3, 2.0), Polynomial({0.0, 0.0, 0.0, 2.0}));
}

TEST(Polynomial, RejectsNonFiniteCoefficients) {
  EXPECT_THROW_CODE(Polynomial({1.0, std::nan("")}), ErrorCode::NonFinite);
}

TEST(WienerAtomic, MergesEqualFrequenciesAndDropsZeros) {
  const WienerAtomic w({{1.0, 0.5}, {-1.0, 0.25}, {1.0, 0.5}, {2.0, 0.0}});
  ASSERT_EQ(w.atoms().size(), 2u);
  EXPECT_EQ(w.atoms()[0].frequency, -1.0);
  EXPECT_EQ(w.atoms()[1].weight, Complex(1.0));
}

TEST(WienerAtomic, CosineAndSineEvaluate) {
  const auto c = WienerAtomic::cosine(2.0);
  const auto s = WienerAtomic::sine(2.0);
  for (double x : {-1.0, 0.0, 0.7, 3.0}) {
    EXPECT_NEAR(std::abs(c(x) - std::cos(2.0 * x)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s(x) - std::sin(2.0 * x)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.derivative(1, x) + 2.0 * std::sin(2.0 * x)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.derivative(3, x) + 8.0 * std::cos(2.0 * x)), 0.0, 1e-13);
  }
}

TEST(WienerAtomic, EmptyIsZeroFunction) {
  const WienerAtomic w;
  EXPECT_EQ(w(1.3), Complex(0.0));
  EXPECT_EQ(w.max_abs_frequency(), 0.0);
}

TEST(CallableFunction, DerivativesBeyondMaxOrderThrow) {
  const CallableFunction f([](double x) { return Complex(x * x); }, {[](double x) { return Complex(2 * x); }}, "sq");
  EXPECT_EQ(f.max_order(), 1);
  EXPECT_EQ(f.derivative(1, 3.0), Complex(6.0));
  EXPECT_THROW_CODE(f.derivative(2, 3.0), ErrorCode::InsufficientDerivatives);
}

TEST(ScalarFunction, MaxOrderByKind) {
  EXPECT_FALSE(ScalarFunction(Polynomial({1.0})).max_order().has_value());
  EXPECT_FALSE(ScalarFunction(WienerAtomic::cosine()).max_order().has_value());
  EXPECT_EQ(ScalarFunction(builtin::exp(1.0, 5)).max_order(), 5);
  EXPECT_TRUE(ScalarFunction(builtin::exp(1.0, 5)).has_derivative(5));
  EXPECT_FALSE(ScalarFunction(builtin::exp(1.0, 5)).has_derivative(6));
}

TEST(Builtins, ExpSinCosDerivatives) {
  const auto e = builtin::exp(0.5);
  const auto s = builtin::sin(2.0);
  const auto c = builtin::cos();
  EXPECT_NEAR(std::abs(e.derivative(3, 1.0) - 0.125 * std::exp(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.derivative(2, 0.3) + 4.0 * std::sin(0.6)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(c.derivative(4, 0.3) - std::cos(0.3)), 0.0, 1e-15);
}

TEST(Builtins, AbsPowDefaultOrderKeepsDerivativesContinuous) {
  EXPECT_EQ(builtin::abs_pow(2.5).max_order(), 2);
  EXPECT_EQ(builtin::abs_pow(3.0).max_order(), 2);
  EXPECT_EQ(builtin::abs_pow(0.5).max_order(), 0);
  const auto f = builtin::abs_pow(2.5);
  EXPECT_NEAR(f(-2.0).real(), std::pow(2.0, 2.5), 1e-12);
  EXPECT_NEAR(f.derivative(1, -2.0).real(), -2.5 * std::pow(2.0, 1.5), 1e-12);
}
