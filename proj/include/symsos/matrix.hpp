// Dense matrices over the exact fields (Rational, AlgNum) and the float
// fallbacks, with the elimination routines shared by every module.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symsos/algnum.hpp"

namespace symsos {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionError("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (Field<T>::exact && Field<T>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  Matrix scaled(const T& s) const {
    Matrix out = *this;
    for (auto& v : out.data_) v *= s;
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  const std::vector<T>& data() const { return data_; }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!Field<T>::is_zero((*this)(i, j) - (*this)(j, i))) return false;
    return true;
  }

  template <class U, class Conv>
  Matrix<U> map(Conv conv) const {
    std::vector<U> d;
    d.reserve(data_.size());
    for (const auto& v : data_) d.push_back(conv(v));
    return Matrix<U>(rows_, cols_, std::move(d));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
using Vector = std::vector<T>;

template <class T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (Field<T>::exact && (Field<T>::is_zero(a[i]) || Field<T>::is_zero(b[i]))) continue;
    s += a[i] * b[i];
  }
  return s;
}

template <class T>
Vector<T> mat_vec(const Matrix<T>& m, const Vector<T>& v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector dimension mismatch");
  Vector<T> out(m.rows(), T(0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (Field<T>::exact && Field<T>::is_zero(v[c])) continue;
      out[r] += m(r, c) * v[c];
    }
  return out;
}

/// Row echelon data produced by row_reduce.
template <class T>
struct Echelon {
  Matrix<T> reduced;                 // reduced row echelon form (zero rows dropped)
  std::vector<std::size_t> pivots;   // pivot column per row of `reduced`
  std::vector<std::size_t> source;   // original row index that produced each pivot row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. Pivot choice is the first nonzero (exact fields)
/// or the largest magnitude (float fields).
template <class T>
Echelon<T> row_reduce(const Matrix<T>& input) {
  Matrix<T> m = input;
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> order(R);
  for (std::size_t i = 0; i < R; ++i) order[i] = i;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t best = R;
    if constexpr (Field<T>::exact) {
      for (std::size_t r = row; r < R; ++r)
        if (!Field<T>::is_zero(m(r, col))) {
          best = r;
          break;
        }
    } else {
      double bestv = 0;
      for (std::size_t r = row; r < R; ++r) {
        double v = std::abs(Field<T>::to_double(m(r, col)));
        if (!Field<T>::is_zero(m(r, col)) && v > bestv) {
          bestv = v;
          best = r;
        }
      }
    }
    if (best == R) continue;
    if (best != row) {
      for (std::size_t c = 0; c < C; ++c) std::swap(m(best, c), m(row, c));
      std::swap(order[best], order[row]);
    }
    T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < C; ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < R; ++r) {
      if (r == row || Field<T>::is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (std::size_t c = col; c < C; ++c) {
        if (Field<T>::exact && Field<T>::is_zero(m(row, c))) continue;
        m(r, c) -= f * m(row, c);
      }
      if constexpr (!Field<T>::exact) m(r, col) = T(0);
    }
    pivots.push_back(col);
    ++row;
  }
  Echelon<T> out;
  Matrix<T> red(row, C);
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < C; ++c) red(r, c) = m(r, c);
  out.reduced = std::move(red);
  out.pivots = std::move(pivots);
  out.source.assign(order.begin(), order.begin() + row);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return row_reduce(m).rank();
}

/// Basis of {v : m v = 0}, one vector per free column.
template <class T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m) {
  auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < ech.rank(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = rhs. Returns nullopt when inconsistent. When the solution is
/// not unique, `unique` (if given) is set to false and free variables are 0.
template <class T>
std::optional<Vector<T>> solve_linear(const Matrix<T>& m, const Vector<T>& rhs, bool* unique = nullptr) {
  if (rhs.size() != m.rows()) throw DimensionError("solve: rhs length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  auto ech = row_reduce(aug);
  Vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    if (ech.pivots[r] == m.cols()) return std::nullopt;
    x[ech.pivots[r]] = ech.reduced(r, m.cols());
  }
  if (unique) *unique = (ech.rank() == m.cols());
  return x;
}

/// Modified Gram-Schmidt without normalization: returns mutually orthogonal
/// vectors spanning the input set; dependent inputs are dropped.
template <class T>
std::vector<Vector<T>> orthogonal_basis(const std::vector<Vector<T>>& vectors) {
  std::vector<Vector<T>> basis;
  std::vector<T> norms;
  for (const auto& v0 : vectors) {
    Vector<T> v = v0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      T c = dot(basis[k], v) / norms[k];
      if (Field<T>::is_zero(c)) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * basis[k][i];
    }
    T n = dot(v, v);
    if (Field<T>::is_zero(n)) continue;
    if constexpr (!Field<T>::exact) {
      // relative test for the float fallback
      T n0 = dot(v0, v0);
      if (Field<T>::is_zero(n / (n0 == T(0) ? T(1) : n0))) continue;
    }
    basis.push_back(std::move(v));
    norms.push_back(std::move(n));
  }
  return basis;
}

/// Outcome of the exact PSD test.
struct PsdReport {
  bool psd = true;
  std::string reason;
};

/// Exact PSD test by LDL^T with diagonal pivoting: PSD iff every pivot is
/// nonnegative and zero pivots have identically zero rows/columns.
inline PsdReport exact_psd(const Matrix<Rational>& input) {
  PsdReport rep;
  if (!input.square() || !input.is_symmetric()) {
    rep.psd = false;
    rep.reason = "matrix is not symmetric";
    return rep;
  }
  Matrix<Rational> m = input;
  const std::size_t n = m.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (m(i, i) < 0) {
        rep.psd = false;
        rep.reason = "negative pivot at index " + std::to_string(i);
        return rep;
      }
      if (m(i, i) > 0 && (piv == n || m(i, i) > m(piv, piv))) piv = i;
    }
    if (piv == n) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && m(i, j) != 0) {
            rep.psd = false;
            rep.reason = "zero pivot with nonzero off-diagonal at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
            return rep;
          }
      return rep;
    }
    done[piv] = true;
    const Rational d = m(piv, piv);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || m(i, piv) == 0) continue;
      Rational f = m(i, piv) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        m(i, j) -= f * m(piv, j);
      }
    }
  }
  return rep;
}

template <class T>
Matrix<double> to_double_matrix(const Matrix<T>& m) {
  return m.template map<double>([](const T& v) { return Field<T>::to_double(v); });
}

}  // namespace symsos
