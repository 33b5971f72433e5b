#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace framescale {

using Vector = std::vector<double>;

/// Dense row-major real matrix.
///
/// Empty shapes (zero rows or columns) are representable so that, for
/// example, a trivial kernel can be returned as an n x 0 basis. Operations
/// that need a nontrivial matrix validate their own input.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_columns(std::span<const Vector> columns);
  static Matrix from_rows(std::span<const Vector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row_span(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_row(std::size_t r, std::span<const double> values);
  void set_column(std::size_t c, std::span<const double> values);

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  bool all_finite() const noexcept;
  double max_abs() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Returns A^T y.
Vector transpose_times(const Matrix& a, std::span<const double> y);

/// Largest absolute entry of a - b; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);
double max_abs(std::span<const double> x);
bool all_finite(std::span<const double> x);

}  // namespace framescale
