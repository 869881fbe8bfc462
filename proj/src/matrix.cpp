#include "btt/matrix.hpp"

#include <utility>

#include "btt/errors.hpp"

namespace btt {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t nrows) {
  Matrix m(nrows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw Error(Errc::DimensionMismatch, "column length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = x * c;
  return m;
}

void Matrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void Matrix::axpy_column(std::size_t dst, Scalar c, std::size_t src) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Scalar& s = (*this)(i, src);
    if (!s.is_zero()) (*this)(i, dst) -= c * s;
  }
}

void Matrix::scale_column(std::size_t j, Scalar c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) *= c;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::axpy_row(std::size_t dst, Scalar c, std::size_t src) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Scalar& s = (*this)(src, j);
    if (!s.is_zero()) (*this)(dst, j) -= c * s;
  }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product shapes");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) m(i, j) += aik * bkj;
      }
    }
  }
  return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shapes");
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
    }
  }
  return out;
}

Matrix Matrix::hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw Error(Errc::DimensionMismatch, "hconcat row counts");
  Matrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
  }
  return m;
}

namespace {

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Scalar inv = Scalar(1) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && !m(i, c).is_zero()) m.axpy_row(i, m(i, c), r);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Matrix w = m;
  return rref(w).size();
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::Singular, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug = Matrix::hconcat(m, Matrix::identity(n));
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw Error(Errc::Singular, "matrix is not invertible");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  }
  return inv;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const Scalar inv = Scalar(1) / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Scalar f = a(i, c) * inv;
      for (std::size_t j = c + 1; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  Matrix bm(b.size(), 1);
  bm.set_column(0, b);
  Matrix aug = Matrix::hconcat(a, bm);
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

Matrix column_space(const Matrix& m) {
  Matrix t = m.transpose();
  auto piv = rref(t);
  Matrix out(m.rows(), piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k) {
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, k) = t(k, i);
  }
  return out;
}

bool span_contains(const Matrix& super, const Matrix& sub) {
  if (sub.cols() == 0) return true;
  return rank(Matrix::hconcat(super, sub)) == rank(super);
}

bool same_span(const Matrix& a, const Matrix& b) { return column_space(a) == column_space(b); }

Matrix nullspace(const Matrix& m) {
  Matrix w = m;
  auto piv = rref(w);
  std::vector<std::size_t> free;
  for (std::size_t c = 0, k = 0; c < m.cols(); ++c) {
    if (k < piv.size() && piv[k] == c) {
      ++k;
    } else {
      free.push_back(c);
    }
  }
  Matrix out(m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    out(free[f], f) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) out(piv[r], f) = -w(r, free[f]);
  }
  return out;
}

Matrix subspace_intersection(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "subspaces of different ambient spaces");
  if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
  Matrix ab = Matrix::hconcat(a, b.scaled(Scalar(-1)));
  Matrix ker = nullspace(ab);
  Matrix out(a.rows(), ker.cols());
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Scalar s;
      for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * ker(j, k);
      out(i, k) = s;
    }
  }
  return column_space(out);
}

}  // namespace btt
