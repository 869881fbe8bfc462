#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "btt/valfield.hpp"

namespace btt {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over K. Columns are the vectors of interest
/// throughout (basis columns, lattice generators).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t nrows);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);
  Vector row(std::size_t i) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix transpose() const;
  Matrix scaled(const Scalar& c) const;

  void swap_columns(std::size_t a, std::size_t b);
  /// col[dst] -= c * col[src]; c is copied, so it may alias an entry
  void axpy_column(std::size_t dst, Scalar c, std::size_t src);
  void scale_column(std::size_t j, Scalar c);
  void swap_rows(std::size_t a, std::size_t b);
  /// row[dst] -= c * row[src]
  void axpy_row(std::size_t dst, Scalar c, std::size_t src);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  static Matrix hconcat(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

std::size_t rank(const Matrix& m);
/// Throws Singular for non-square or non-invertible input.
Matrix inverse(const Matrix& m);
bool is_invertible(const Matrix& m);
/// Throws DimensionMismatch for non-square input.
Scalar determinant(const Matrix& m);
/// Some x with A x = b, or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

/// Canonical basis (reduced echelon) of the K-span of the columns.
Matrix column_space(const Matrix& m);
/// True iff span(sub) ⊆ span(super) over K.
bool span_contains(const Matrix& super, const Matrix& sub);
bool same_span(const Matrix& a, const Matrix& b);
/// Basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m);
/// Canonical basis of span(a) ∩ span(b).
Matrix subspace_intersection(const Matrix& a, const Matrix& b);

}  // namespace btt
