#include "moikit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "moikit/error.hpp"

namespace moikit {

Matrix::Matrix(std::size_t n) : n_(n), data_(n * n) {}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
  if (data_.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n * n) + " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix rows must form a square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorCode::NonFinite, "diagonal entry is not finite");
    m(i, i) = values[i];
  }
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

Matrix Matrix::adjoint() const {
  Matrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double Matrix::hermiticity_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_size(*this, rhs, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_size(*this, rhs, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

void Matrix::add_product(const Matrix& a, const Matrix& b, Complex alpha) {
  require_same_size(a, b, "matrix product");
  require_same_size(*this, a, "matrix product accumulation");
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const Complex ail = alpha * a(i, l);
      if (ail == Complex(0.0)) continue;
      const Complex* brow = &b.data_[l * n];
      Complex* crow = &data_[i * n];
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.size());
  out.add_product(lhs, rhs);
  return out;
}

Matrix operator*(Complex scale, Matrix m) { return m *= scale; }
Matrix operator*(Matrix m, Complex scale) { return m *= scale; }

double frobenius_distance(const Matrix& a, const Matrix& b) {
  require_same_size(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

void require_same_size(const Matrix& a, const Matrix& b, const char* what) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": " + std::to_string(a.size()) +
                                                  " vs " + std::to_string(b.size()));
  }
}

}  // namespace moikit
