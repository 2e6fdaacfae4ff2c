#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metlie/errors.hpp"
#include "metlie/rational.hpp"

namespace metlie {

template <class T>
using Vec = std::vector<T>;

namespace detail {
template <class T>
bool scalar_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

/// Dense row-major matrix over an exact field. Column j of a matrix that
/// represents a linear map holds the image of the j-th basis vector.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw InputError("matrix data has the wrong size");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vec<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw InputError("column has the wrong length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<Vec<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("row has the wrong length");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> row(std::size_t i) const { return Vec<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vec<T> column(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const T& v : data_)
      if (!detail::scalar_is_zero(v)) return false;
    return true;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (T& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix l, const Matrix& r) { return l += r; }
  friend Matrix operator-(Matrix l, const Matrix& r) { return l -= r; }
  friend Matrix operator*(Matrix l, const T& s) { return l *= s; }
  friend Matrix operator*(const T& s, Matrix r) { return r *= s; }
  Matrix operator-() const {
    Matrix r = *this;
    for (T& v : r.data_) v = -v;
    return r;
  }

  friend Matrix operator*(const Matrix& l, const Matrix& r) {
    if (l.cols_ != r.rows_) throw InputError("matrix product with mismatched shapes");
    Matrix p(l.rows_, r.cols_);
    for (std::size_t i = 0; i < l.rows_; ++i)
      for (std::size_t k = 0; k < l.cols_; ++k) {
        const T& a = l(i, k);
        if (detail::scalar_is_zero(a)) continue;
        for (std::size_t j = 0; j < r.cols_; ++j) p(i, j) += a * r(k, j);
      }
    return p;
  }

  friend Vec<T> operator*(const Matrix& l, const Vec<T>& v) {
    if (l.cols_ != v.size()) throw InputError("matrix-vector product with mismatched shapes");
    Vec<T> out(l.rows_, T(0));
    for (std::size_t i = 0; i < l.rows_; ++i)
      for (std::size_t k = 0; k < l.cols_; ++k) out[i] += l(i, k) * v[k];
    return out;
  }

  friend bool operator==(const Matrix& l, const Matrix& r) {
    if (l.rows_ != r.rows_ || l.cols_ != r.cols_) return false;
    for (std::size_t i = 0; i < l.data_.size(); ++i)
      if (!(l.data_[i] == r.data_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& l, const Matrix& r) { return !(l == r); }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : ", [";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += to_string((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix sum with mismatched shapes");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers.

template <class T>
Vec<T> unit_vector(std::size_t n, std::size_t i) {
  Vec<T> v(n, T(0));
  v[i] = T(1);
  return v;
}

template <class T>
bool is_zero_vector(const Vec<T>& v) {
  for (const T& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <class T>
Vec<T> add(Vec<T> a, const Vec<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
Vec<T> subtract(Vec<T> a, const Vec<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T>
Vec<T> scale(Vec<T> a, const T& s) {
  for (T& x : a) x *= s;
  return a;
}

template <class T>
bool equal(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

template <class T>
std::string vector_str(const Vec<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Exact elimination.

template <class T>
struct RowEchelon {
  Matrix<T> reduced;               // reduced row echelon form, pivots equal to 1
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class T>
RowEchelon<T> row_reduce(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return row_reduce(m).pivots.size();
}

/// Basis of {x : m x = 0}; one vector per free column, that column set to 1.
template <class T>
std::vector<Vec<T>> nullspace(const Matrix<T>& m) {
  const RowEchelon<T> e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      const T f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class T>
std::optional<Matrix<T>> try_inverse(const Matrix<T>& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  const RowEchelon<T> e = row_reduce(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  auto inv = try_inverse(m);
  if (!inv) throw InputError("matrix is singular");
  return *inv;
}

/// Solution of A x = b. When inconsistent, `inconsistent_row` is the index of
/// an original equation that cannot be satisfied together with the earlier ones.
template <class T>
struct LinearSolution {
  bool consistent = false;
  Vec<T> particular;  // free variables set to zero
  std::size_t inconsistent_row = 0;
  std::size_t free_dimension = 0;
};

template <class T>
LinearSolution<T> solve_linear(const Matrix<T>& a, const Vec<T>& b) {
  if (a.rows() != b.size()) throw InputError("right-hand side has the wrong length");
  const std::size_t n = a.cols();
  Matrix<T> aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  LinearSolution<T> out;
  const RowEchelon<T> e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == n) {
    // Locate the first equation whose addition makes the prefix inconsistent.
    for (std::size_t k = 1; k <= a.rows(); ++k) {
      Matrix<T> prefix(k, n + 1);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j <= n; ++j) prefix(i, j) = aug(i, j);
      const RowEchelon<T> pe = row_reduce(prefix);
      if (!pe.pivots.empty() && pe.pivots.back() == n) {
        out.inconsistent_row = k - 1;
        break;
      }
    }
    return out;
  }
  out.consistent = true;
  out.particular.assign(n, T(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.particular[e.pivots[r]] = e.reduced(r, n);
  out.free_dimension = n - e.pivots.size();
  return out;
}

}  // namespace metlie
