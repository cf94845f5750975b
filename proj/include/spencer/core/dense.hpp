#pragma once

#include <vector>

#include "spencer/core/error.hpp"
#include "spencer/core/rational.hpp"

namespace spencer {

/* Small dense rational matrix; only used where dimensions are the Lie
 * algebra dimension (<= 8 for the catalog). */
class RatDense {
 public:
  RatDense() = default;
  RatDense(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static RatDense identity(int n) {
    RatDense m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& operator()(int r, int c) { return a_[r * cols_ + c]; }
  const Rat& operator()(int r, int c) const { return a_[r * cols_ + c]; }

  RatDense operator*(const RatDense& rhs) const {
    if (cols_ != rhs.rows_) throw invariant_violation("RatDense: shape mismatch");
    RatDense out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& v = a_[i * cols_ + k];
        if (v == 0) continue;
        for (int j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
      }
    return out;
  }

  RatDense transpose() const {
    RatDense out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Rat trace() const {
    Rat t = 0;
    for (int i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_symmetric() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  int rank() const {
    RatDense m = *this;
    int rk = 0;
    for (int c = 0; c < cols_ && rk < rows_; ++c) {
      int piv = -1;
      for (int r = rk; r < rows_; ++r)
        if (m(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      for (int j = 0; j < cols_; ++j) std::swap(m(piv, j), m(rk, j));
      for (int r = 0; r < rows_; ++r) {
        if (r == rk || m(r, c) == 0) continue;
        Rat f = m(r, c) / m(rk, c);
        for (int j = 0; j < cols_; ++j) m(r, j) -= f * m(rk, j);
      }
      ++rk;
    }
    return rk;
  }

  /* Gauss-Jordan; throws if singular. */
  RatDense inverse() const {
    if (rows_ != cols_) throw invariant_violation("RatDense: inverse of non-square");
    RatDense m = *this;
    RatDense inv = identity(rows_);
    for (int c = 0; c < cols_; ++c) {
      int piv = -1;
      for (int r = c; r < rows_; ++r)
        if (m(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw unsupported_algebra_error("matrix is singular");
      for (int j = 0; j < cols_; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
      Rat d = m(c, c);
      for (int j = 0; j < cols_; ++j) {
        m(c, j) /= d;
        inv(c, j) /= d;
      }
      for (int r = 0; r < rows_; ++r) {
        if (r == c || m(r, c) == 0) continue;
        Rat f = m(r, c);
        for (int j = 0; j < cols_; ++j) {
          m(r, j) -= f * m(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  bool operator==(const RatDense& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace spencer
