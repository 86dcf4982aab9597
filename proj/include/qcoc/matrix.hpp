#ifndef QCOC_MATRIX_HPP
#define QCOC_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcoc/error.hpp"

namespace qcoc {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("matrix dimension mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (bkj != 0) c(i, j) += aik * bkj;
        }
      }
    }
    return c;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(src, j) != 0) (*this)(dst, j) += k * (*this)(src, j);
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const T& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, src) != 0) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  std::string to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j);
      out << "\n";
    }
    return out.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<BigInt>;

template <class T>
Matrix<BigInt> to_big(const Matrix<T>& m) {
  Matrix<BigInt> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = BigInt(m(i, j));
  return out;
}

/**
 * U * M * V = D with D diagonal, d_1 | d_2 | ... | d_rank, all d_i > 0.
 * U_inv and V_inv are tracked alongside so unimodularity is checkable by
 * exact multiplication.
 */
template <class T>
struct SmithDecomposition {
  Matrix<T> U, D, V, U_inv, V_inv;
  std::size_t rank = 0;

  std::vector<T> invariant_factors() const {
    std::vector<T> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

struct SmithOptions {
  bool track_left = true;   // U and U_inv
  bool track_right = true;  // V and V_inv
};

namespace detail {

template <class T>
T abs_value(const T& v) {
  return v < 0 ? T(-v) : v;
}

// Truncated quotient; the remainder has the sign of the dividend and smaller magnitude.
template <class T>
T quotient(const T& a, const T& b) {
  return a / b;
}

}  // namespace detail

/**
 * Smith normal form by elementary unimodular operations. The pivot is always
 * the smallest-magnitude nonzero entry of the remaining block, which keeps
 * entry growth small on the sparse boundary matrices this library produces.
 */
template <class T>
SmithDecomposition<T> smith_normal_form(Matrix<T> m, SmithOptions opts = {}) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithDecomposition<T> out;
  if (opts.track_left) {
    out.U = Matrix<T>::identity(rows);
    out.U_inv = Matrix<T>::identity(rows);
  }
  if (opts.track_right) {
    out.V = Matrix<T>::identity(cols);
    out.V_inv = Matrix<T>::identity(cols);
  }
  auto row_add = [&](std::size_t dst, std::size_t src, const T& k) {  // row[dst] += k row[src]
    m.add_row(dst, src, k);
    if (opts.track_left) {
      out.U.add_row(dst, src, k);
      out.U_inv.add_col(src, dst, T(-k));
    }
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const T& k) {  // col[dst] += k col[src]
    m.add_col(dst, src, k);
    if (opts.track_right) {
      out.V.add_col(dst, src, k);
      out.V_inv.add_row(src, dst, T(-k));
    }
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    m.swap_rows(a, b);
    if (opts.track_left) {
      out.U.swap_rows(a, b);
      out.U_inv.swap_cols(a, b);
    }
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    m.swap_cols(a, b);
    if (opts.track_right) {
      out.V.swap_cols(a, b);
      out.V_inv.swap_rows(a, b);
    }
  };
  auto row_negate = [&](std::size_t r) {
    m.negate_row(r);
    if (opts.track_left) {
      out.U.negate_row(r);
      out.U_inv.negate_col(r);
    }
  };

  std::size_t t = 0;
  const std::size_t limit = std::min(rows, cols);
  while (t < limit) {
    // smallest nonzero magnitude in the trailing block
    std::optional<std::pair<std::size_t, std::size_t>> best;
    T best_val = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        const T& v = m(i, j);
        if (v == 0) continue;
        T a = detail::abs_value(v);
        if (!best || a < best_val) {
          best = {i, j};
          best_val = a;
          if (best_val == 1) break;
        }
      }
      if (best && best_val == 1) break;
    }
    if (!best) break;
    row_swap(t, best->first);
    col_swap(t, best->second);

    for (;;) {
      bool changed = false;
      // clear column t below the pivot
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        T q = detail::quotient(m(i, t), m(t, t));
        row_add(i, t, T(-q));
        if (m(i, t) != 0) {
          // remainder is smaller than the pivot: promote it
          row_swap(t, i);
          changed = true;
        }
      }
      if (changed) continue;
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        T q = detail::quotient(m(t, j), m(t, t));
        col_add(j, t, T(-q));
        if (m(t, j) != 0) {
          col_swap(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // divisibility of the remaining block by the pivot
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_add(t, *bad_row, T(1));
    }
    if (m(t, t) < 0) row_negate(t);
    ++t;
  }
  out.rank = t;
  out.D = std::move(m);
  return out;
}

/// Solves A x = b over Z/mZ (m >= 2) using a Smith decomposition of A.
/// Complete: returns a solution whenever one exists.
inline std::optional<std::vector<BigInt>> solve_mod(const IntegerMatrix& a, const std::vector<BigInt>& b, const BigInt& m) {
  if (b.size() != a.rows()) throw InternalError("solve_mod: right-hand side has wrong length");
  auto snf = smith_normal_form(a);
  auto reduce = [&](BigInt v) {
    v %= m;
    if (v < 0) v += m;
    return v;
  };
  // U A V = D  =>  D y = U b,  x = V y
  std::vector<BigInt> ub(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt s = 0;
    for (std::size_t k = 0; k < a.rows(); ++k)
      if (snf.U(i, k) != 0) s += snf.U(i, k) * b[k];
    ub[i] = reduce(s);
  }
  std::vector<BigInt> y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      BigInt d = reduce(snf.D(i, i));
      BigInt g = boost::multiprecision::gcd(d, m);
      if (g == 0) g = m;
      if (ub[i] % g != 0) return std::nullopt;
      BigInt mg = m / g;
      if (mg == 1) {
        y[i] = 0;
        continue;
      }
      // (d/g) y = ub/g  mod m/g
      BigInt dg = (d / g) % mg, r = (ub[i] / g) % mg;
      // modular inverse by extended Euclid
      BigInt t0 = 0, t1 = 1, r0 = mg, r1 = dg;
      while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
      }
      BigInt inv = reduce(t0) % mg;
      y[i] = (r * inv) % mg;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(a.cols(), 0);
  for (std::size_t i = 0; i < a.cols(); ++i) {
    BigInt s = 0;
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (snf.V(i, k) != 0 && y[k] != 0) s += snf.V(i, k) * y[k];
    x[i] = reduce(s);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Linear algebra over a prime field F_p.

namespace detail {

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::int64_t reduce_mod(const BigInt& v, std::int64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r);
}

}  // namespace detail

inline bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  for (std::int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

/// Reduced row echelon form over F_p; returns pivot columns.
inline std::vector<std::size_t> rref_mod_p(Matrix<std::int64_t>& a, std::int64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(r, piv);
    std::int64_t inv = detail::mod_pow(a(r, c), p - 2, p);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = a(r, j) * inv % p;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      std::int64_t f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(r, j) == 0) continue;
        a(i, j) = ((a(i, j) - f * a(r, j)) % p + p) % p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline Matrix<std::int64_t> reduce_mod_p(const IntegerMatrix& m, std::int64_t p) {
  Matrix<std::int64_t> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = detail::reduce_mod(m(i, j), p);
  return out;
}

inline std::size_t rank_mod_p(const IntegerMatrix& m, std::int64_t p) {
  auto a = reduce_mod_p(m, p);
  return rref_mod_p(a, p).size();
}

/// Basis of the null space {x : M x = 0} over F_p, one vector per free column,
/// in increasing order of the free column.
inline std::vector<std::vector<std::int64_t>> nullspace_mod_p(const IntegerMatrix& m, std::int64_t p) {
  auto a = reduce_mod_p(m, p);
  auto pivots = rref_mod_p(a, p);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - a(r, free)) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qcoc

#endif
