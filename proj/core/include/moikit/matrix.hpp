#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace moikit {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
///
/// Constructors that take caller data reject non-finite entries; the
/// arithmetic operators do not re-check their results.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n);
  Matrix(std::size_t n, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix zero(std::size_t n) { return Matrix(n); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix diagonal(std::initializer_list<double> values);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Matrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  /// max_{ij} |A_ij - conj(A_ji)|
  double hermiticity_defect() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex scale);

  /// this += alpha * a * b
  void add_product(const Matrix& a, const Matrix& b, Complex alpha = 1.0);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Complex scale, Matrix m);
Matrix operator*(Matrix m, Complex scale);

/// ||a - b||_F; throws DimensionMismatch on size mismatch.
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Throws DimensionMismatch unless a and b share a dimension.
void require_same_size(const Matrix& a, const Matrix& b, const char* what);

}  // namespace moikit
