#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "spencer/core/error.hpp"
#include "spencer/core/rational.hpp"

namespace spencer {

/* Sorted-by-index list of nonzero entries. */
using SparseVec = std::vector<std::pair<int, Rat>>;

/* y += c*x, both sorted; result stays sorted and zero-free. */
inline void sv_axpy(SparseVec& y, const Rat& c, const SparseVec& x) {
  if (c == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, c * x[j].second);
      ++j;
    } else {
      Rat v = y[i].second + c * x[j].second;
      if (v != 0) out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

inline void sv_scale(SparseVec& v, const Rat& c) {
  if (c == 0) {
    v.clear();
    return;
  }
  for (auto& e : v) e.second *= c;
}

inline Rat sv_get(const SparseVec& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const auto& e, int k) { return e.first < k; });
  return (it != v.end() && it->first == idx) ? it->second : Rat(0);
}

/* Entries re-indexed by +offset (block embedding). */
inline SparseVec sv_shift(const SparseVec& v, int offset) {
  SparseVec out = v;
  for (auto& e : out) e.first += offset;
  return out;
}

/* Column-major exact sparse matrix.  Optional domain/codomain tags make
 * compositions self-checking when complexes are wired together. */
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

  static SparseMat identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.col_[i].emplace_back(i, Rat(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const SparseVec& col(int j) const { return col_[j]; }
  SparseVec& col_mut(int j) { return col_[j]; }

  void set(int r, int c, Rat v) {
    auto& column = col_[c];
    auto it = std::lower_bound(column.begin(), column.end(), r,
                               [](const auto& e, int k) { return e.first < k; });
    if (it != column.end() && it->first == r) {
      if (v == 0)
        column.erase(it);
      else
        it->second = std::move(v);
    } else if (v != 0) {
      column.insert(it, {r, std::move(v)});
    }
  }

  void add_at(int r, int c, const Rat& v) {
    if (v == 0) return;
    auto& column = col_[c];
    auto it = std::lower_bound(column.begin(), column.end(), r,
                               [](const auto& e, int k) { return e.first < k; });
    if (it != column.end() && it->first == r) {
      it->second += v;
      if (it->second == 0) column.erase(it);
    } else {
      column.insert(it, {r, v});
    }
  }

  Rat get(int r, int c) const { return sv_get(col_[c], r); }

  std::size_t nnz() const {
    std::size_t s = 0;
    for (const auto& c : col_) s += c.size();
    return s;
  }

  bool is_zero() const {
    for (const auto& c : col_)
      if (!c.empty()) return false;
    return true;
  }

  /* Matrix-vector product. */
  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [j, v] : x) sv_axpy(y, v, col_[j]);
    return y;
  }

  /* this o rhs (apply rhs first).  Tags must chain when both are set. */
  SparseMat compose(const SparseMat& rhs) const {
    if (rhs.rows_ != cols_)
      throw invariant_violation("compose: dimension mismatch");
    if (!domain_.empty() && !rhs.codomain_.empty() && domain_ != rhs.codomain_)
      throw invariant_violation("compose: tag mismatch '" + domain_ + "' vs '" +
                                rhs.codomain_ + "'");
    SparseMat out(rows_, rhs.cols_);
    for (int j = 0; j < rhs.cols_; ++j) out.col_[j] = apply(rhs.col_[j]);
    out.domain_ = rhs.domain_;
    out.codomain_ = codomain_;
    return out;
  }

  SparseMat operator+(const SparseMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw invariant_violation("add: dimension mismatch");
    SparseMat out = *this;
    for (int j = 0; j < cols_; ++j) sv_axpy(out.col_[j], Rat(1), rhs.col_[j]);
    return out;
  }

  SparseMat scaled(const Rat& c) const {
    SparseMat out = *this;
    for (auto& column : out.col_) sv_scale(column, c);
    return out;
  }

  SparseMat transpose() const {
    SparseMat out(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : col_[j]) out.col_[i].emplace_back(j, v);
    /* columns were filled in increasing j, entries per row arrive sorted */
    return out;
  }

  /* Kronecker product; index pairing (iA, iB) -> iA*rowsB + iB so that
   * kron(I, B) is block diagonal with B blocks. */
  static SparseMat kron(const SparseMat& a, const SparseMat& b) {
    SparseMat out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int ja = 0; ja < a.cols_; ++ja)
      for (int jb = 0; jb < b.cols_; ++jb) {
        auto& column = out.col_[ja * b.cols_ + jb];
        for (const auto& [ia, va] : a.col_[ja])
          for (const auto& [ib, vb] : b.col_[jb])
            column.emplace_back(ia * b.rows_ + ib, va * vb);
        std::sort(column.begin(), column.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
      }
    return out;
  }

  void set_tags(std::string domain, std::string codomain) {
    domain_ = std::move(domain);
    codomain_ = std::move(codomain);
  }
  const std::string& domain_tag() const { return domain_; }
  const std::string& codomain_tag() const { return codomain_; }

  bool operator==(const SparseMat& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && col_ == rhs.col_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<SparseVec> col_;
  std::string domain_, codomain_;
};

}  // namespace spencer
