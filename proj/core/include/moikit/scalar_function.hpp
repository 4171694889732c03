#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "moikit/matrix.hpp"

namespace moikit {

/// Polynomial c_0 + c_1 x + ... + c_d x^d with complex coefficients.
/// Stored canonically: the leading coefficient is nonzero unless the
/// polynomial is identically zero, which is stored as {0}.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<Complex> coeffs);

  /// c * x^n
  static Polynomial monomial(int n, Complex c = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Complex(0.0); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex coeff(int n) const noexcept;

  Complex operator()(double x) const;
  Complex derivative(int order, double x) const;
  Polynomial derivative(int order) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Complex> coeffs_;
};

struct WienerAtom {
  double frequency;
  Complex weight;
};

/// f(x) = sum_j c_j exp(i x xi_j) for a finite atomic measure.
/// Atoms are sorted by frequency; exactly equal frequencies are merged.
class WienerAtomic {
 public:
  WienerAtomic() = default;
  explicit WienerAtomic(std::vector<WienerAtom> atoms);

  /// cos(omega x) = (e^{i omega x} + e^{-i omega x}) / 2
  static WienerAtomic cosine(double omega = 1.0);
  /// sin(omega x) = (e^{i omega x} - e^{-i omega x}) / 2i
  static WienerAtomic sine(double omega = 1.0);
  /// c e^{i omega x}
  static WienerAtomic exponential(double omega, Complex c = 1.0);

  std::span<const WienerAtom> atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }
  double max_abs_frequency() const noexcept;

  Complex operator()(double x) const;
  Complex derivative(int order, double x) const;

 private:
  std::vector<WienerAtom> atoms_;
};

/// Black-box function with evaluators for derivatives 1..max_order.
class CallableFunction {
 public:
  using Evaluator = std::function<Complex(double)>;

  CallableFunction(Evaluator value, std::vector<Evaluator> derivatives, std::string name = "callable");

  int max_order() const noexcept { return static_cast<int>(derivatives_.size()); }
  const std::string& name() const noexcept { return name_; }

  Complex operator()(double x) const { return value_(x); }
  /// Throws InsufficientDerivatives when order > max_order().
  Complex derivative(int order, double x) const;

 private:
  Evaluator value_;
  std::vector<Evaluator> derivatives_;
  std::string name_;
};

/// Tagged union of the three function representations.
class ScalarFunction {
 public:
  using Variant = std::variant<Polynomial, WienerAtomic, CallableFunction>;

  ScalarFunction(Polynomial p) : impl_(std::move(p)) {}
  ScalarFunction(WienerAtomic w) : impl_(std::move(w)) {}
  ScalarFunction(CallableFunction c) : impl_(std::move(c)) {}

  const Variant& variant() const noexcept { return impl_; }
  const Polynomial* polynomial() const noexcept { return std::get_if<Polynomial>(&impl_); }
  const WienerAtomic* wiener() const noexcept { return std::get_if<WienerAtomic>(&impl_); }
  const CallableFunction* callable() const noexcept { return std::get_if<CallableFunction>(&impl_); }

  Complex operator()(double x) const;
  Complex derivative(int order, double x) const;
  /// Highest available derivative order; nullopt means unbounded.
  std::optional<int> max_order() const noexcept;
  bool has_derivative(int order) const noexcept;
  std::string describe() const;

 private:
  Variant impl_;
};

namespace builtin {
CallableFunction exp(double rate = 1.0, int max_order = 16);
CallableFunction sin(double omega = 1.0, int max_order = 16);
CallableFunction cos(double omega = 1.0, int max_order = 16);
/// |x|^p with derivatives p(p-1)..(p-j+1)|x|^{p-j} sgn(x)^j; default order is
/// the largest j for which the j-th derivative is continuous.
CallableFunction abs_pow(double p, std::optional<int> max_order = std::nullopt);
}  // namespace builtin

}  // namespace moikit
