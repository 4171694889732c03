#include "moikit/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "moikit/error.hpp"

namespace moikit {

namespace {

// n (n-1) ... (n - order + 1)
double falling_factorial(int n, int order) {
  double r = 1.0;
  for (int i = 0; i < order; ++i) r *= static_cast<double>(n - i);
  return r;
}

Complex i_power(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::NonFinite, "polynomial coefficient is not finite");
  }
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::monomial(int n, Complex c) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "monomial degree must be non-negative");
  std::vector<Complex> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Complex Polynomial::coeff(int n) const noexcept {
  if (n < 0 || n > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(n)];
}

Complex Polynomial::operator()(double x) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex Polynomial::derivative(int order, double x) const {
  if (order == 0) return (*this)(x);
  Complex acc = 0.0;
  for (int n = degree(); n >= order; --n) acc = acc * x + coeffs_[n] * falling_factorial(n, order);
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  if (order > degree()) return Polynomial();
  std::vector<Complex> out;
  for (int n = order; n <= degree(); ++n) out.push_back(coeffs_[n] * falling_factorial(n, order));
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> out(static_cast<std::size_t>(std::max(a.degree(), b.degree())) + 1, 0.0);
  for (int n = 0; n <= a.degree(); ++n) out[n] += a.coeffs_[n];
  for (int n = 0; n <= b.degree(); ++n) out[n] += b.coeffs_[n];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> out(static_cast<std::size_t>(a.degree() + b.degree()) + 1, 0.0);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> out(p.coeffs_);
  for (auto& c : out) c *= s;
  return Polynomial(std::move(out));
}

// -------------------------------------------------------------- WienerAtomic

WienerAtomic::WienerAtomic(std::vector<WienerAtom> atoms) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.frequency) || !std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag()))
      throw Error(ErrorCode::NonFinite, "Wiener atom is not finite");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const WienerAtom& a, const WienerAtom& b) { return a.frequency < b.frequency; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().frequency == a.frequency) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
  std::erase_if(atoms_, [](const WienerAtom& a) { return a.weight == Complex(0.0); });
}

WienerAtomic WienerAtomic::cosine(double omega) {
  return WienerAtomic({{omega, 0.5}, {-omega, 0.5}});
}

WienerAtomic WienerAtomic::sine(double omega) {
  return WienerAtomic({{omega, Complex(0.0, -0.5)}, {-omega, Complex(0.0, 0.5)}});
}

WienerAtomic WienerAtomic::exponential(double omega, Complex c) { return WienerAtomic({{omega, c}}); }

double WienerAtomic::max_abs_frequency() const noexcept {
  double r = 0.0;
  for (const auto& a : atoms_) r = std::max(r, std::abs(a.frequency));
  return r;
}

Complex WienerAtomic::operator()(double x) const { return derivative(0, x); }

Complex WienerAtomic::derivative(int order, double x) const {
  Complex acc = 0.0;
  for (const auto& a : atoms_) {
    const Complex factor = i_power(order) * std::pow(a.frequency, order);
    acc += a.weight * factor * std::polar(1.0, a.frequency * x);
  }
  return acc;
}

// ---------------------------------------------------------- CallableFunction

CallableFunction::CallableFunction(Evaluator value, std::vector<Evaluator> derivatives, std::string name)
    : value_(std::move(value)), derivatives_(std::move(derivatives)), name_(std::move(name)) {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "callable function needs an evaluator");
  for (const auto& d : derivatives_) {
    if (!d) throw Error(ErrorCode::InvalidArgument, "callable derivative evaluator is empty");
  }
}

Complex CallableFunction::derivative(int order, double x) const {
  if (order == 0) return value_(x);
  if (order < 0 || order > max_order()) {
    throw Error(ErrorCode::InsufficientDerivatives,
                name_ + " provides derivatives up to order " + std::to_string(max_order()) +
                    ", order " + std::to_string(order) + " requested");
  }
  return derivatives_[static_cast<std::size_t>(order) - 1](x);
}

// ------------------------------------------------------------ ScalarFunction

Complex ScalarFunction::operator()(double x) const {
  return std::visit([x](const auto& f) { return f(x); }, impl_);
}

Complex ScalarFunction::derivative(int order, double x) const {
  return std::visit([&](const auto& f) { return f.derivative(order, x); }, impl_);
}

std::optional<int> ScalarFunction::max_order() const noexcept {
  if (const auto* c = callable()) return c->max_order();
  return std::nullopt;
}

bool ScalarFunction::has_derivative(int order) const noexcept {
  const auto k = max_order();
  return !k || order <= *k;
}

std::string ScalarFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* p = polynomial()) {
    os << "polynomial(degree=" << p->degree() << ")";
  } else if (const auto* w = wiener()) {
    os << "wiener(atoms=" << w->atoms().size() << ")";
  } else {
    os << callable()->name();
  }
  return os.str();
}

// ------------------------------------------------------------------ builtins

namespace builtin {

namespace {
std::string with_param(const char* name, double v) {
  std::ostringstream os;
  os.precision(17);
  os << name << "(" << v << ")";
  return os.str();
}
}  // namespace

CallableFunction exp(double rate, int max_order) {
  std::vector<CallableFunction::Evaluator> ds;
  for (int j = 1; j <= max_order; ++j) {
    ds.push_back([rate, j](double x) { return Complex(std::pow(rate, j) * std::exp(rate * x)); });
  }
  return CallableFunction([rate](double x) { return Complex(std::exp(rate * x)); }, std::move(ds),
                          with_param("exp", rate));
}

CallableFunction sin(double omega, int max_order) {
  std::vector<CallableFunction::Evaluator> ds;
  for (int j = 1; j <= max_order; ++j) {
    // d^j sin(wx) = w^j sin(wx + j pi/2); use the exact quarter-turn table.
    ds.push_back([omega, j](double x) {
      const double s = std::sin(omega * x);
      const double c = std::cos(omega * x);
      const double v = (j % 4 == 0) ? s : (j % 4 == 1) ? c : (j % 4 == 2) ? -s : -c;
      return Complex(std::pow(omega, j) * v);
    });
  }
  return CallableFunction([omega](double x) { return Complex(std::sin(omega * x)); }, std::move(ds),
                          with_param("sin", omega));
}

CallableFunction cos(double omega, int max_order) {
  std::vector<CallableFunction::Evaluator> ds;
  for (int j = 1; j <= max_order; ++j) {
    ds.push_back([omega, j](double x) {
      const double s = std::sin(omega * x);
      const double c = std::cos(omega * x);
      const double v = (j % 4 == 0) ? c : (j % 4 == 1) ? -s : (j % 4 == 2) ? -c : s;
      return Complex(std::pow(omega, j) * v);
    });
  }
  return CallableFunction([omega](double x) { return Complex(std::cos(omega * x)); }, std::move(ds),
                          with_param("cos", omega));
}

CallableFunction abs_pow(double p, std::optional<int> max_order) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "abs_pow exponent must be > 0");
  const int order = max_order.value_or(std::max(0, static_cast<int>(std::ceil(p)) - 1));
  auto eval = [p](int j, double x) -> Complex {
    double coeff = 1.0;
    for (int i = 0; i < j; ++i) coeff *= (p - i);
    if (coeff == 0.0) return 0.0;
    const double e = p - j;
    if (x == 0.0) {
      if (e > 0.0) return 0.0;
      if (e == 0.0 && j % 2 == 0) return coeff;
      throw Error(ErrorCode::EvaluationDomain, "abs_pow derivative undefined at 0");
    }
    const double sgn = (x < 0.0 && j % 2 == 1) ? -1.0 : 1.0;
    return coeff * sgn * std::pow(std::abs(x), e);
  };
  std::vector<CallableFunction::Evaluator> ds;
  for (int j = 1; j <= order; ++j) ds.push_back([eval, j](double x) { return eval(j, x); });
  return CallableFunction([eval](double x) { return eval(0, x); }, std::move(ds), with_param("abs_pow", p));
}

}  // namespace builtin

}  // namespace moikit
