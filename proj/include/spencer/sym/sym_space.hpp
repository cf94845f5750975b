#pragma once

#include <map>
#include <string>
#include <vector>

#include "spencer/core/sparse.hpp"
#include "spencer/liealg/lie_algebra.hpp"

namespace spencer::sym {

using liealg::LieAlgebra;

/* Basis of Sym^k(g): nondecreasing index multisets, lexicographic. */
class SymSpace {
 public:
  SymSpace(int dim, int k) : dim_(dim), k_(k) {
    std::vector<int> cur;
    gen(0, k, cur);
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) index_[basis_[i]] = i;
  }

  int dim_space() const { return static_cast<int>(basis_.size()); }
  int tensor_rank() const { return k_; }
  int alg_dim() const { return dim_; }
  const std::vector<int>& element(int i) const { return basis_[i]; }

  int index_of(std::vector<int> m) const {
    std::sort(m.begin(), m.end());
    auto it = index_.find(m);
    if (it == index_.end()) throw invariant_violation("sym: multiset out of range");
    return it->second;
  }

  std::string format(int i, const std::vector<std::string>& labels) const {
    std::string s;
    for (std::size_t j = 0; j < basis_[i].size(); ++j) {
      if (j) s += "*";
      s += labels[basis_[i][j]];
    }
    return s.empty() ? "1" : s;
  }

 private:
  void gen(int lo, int left, std::vector<int>& cur) {
    if (left == 0) {
      basis_.push_back(cur);
      return;
    }
    for (int i = lo; i < dim_; ++i) {
      cur.push_back(i);
      gen(i, left - 1, cur);
      cur.pop_back();
    }
  }

  int dim_;
  int k_;
  std::vector<std::vector<int>> basis_;
  std::map<std::vector<int>, int> index_;
};

enum class DiffMode { Raw, KillingDual };

inline DiffMode diff_mode_from_string(const std::string& s) {
  if (s == "raw") return DiffMode::Raw;
  if (s == "killing_dual") return DiffMode::KillingDual;
  throw input_error("unknown differential mode '" + s + "' (raw|killing_dual)");
}

/* Degree-1 coefficients: delta(e_a) = sum_{i,m} w(i,a,m) e_i . e_m with
 *   raw:          w = c[i][a][m]                 (basis pairing e^i ~ e_i)
 *   killing_dual: w = sum_j Kinv(i,j) c[j][a][m] (pairing through K)      */
inline std::vector<std::vector<std::pair<std::pair<int, int>, Rat>>> degree_one_terms(
    const LieAlgebra& g, DiffMode mode) {
  RatDense Kinv(0, 0);
  if (mode == DiffMode::KillingDual) {
    try {
      Kinv = g.killing_form().inverse();
    } catch (const unsupported_algebra_error&) {
      throw unsupported_algebra_error(
          "killing_dual mode requires a nondegenerate Killing form");
    }
  }
  std::vector<std::vector<std::pair<std::pair<int, int>, Rat>>> out(g.dim);
  for (int a = 0; a < g.dim; ++a) {
    std::map<std::pair<int, int>, Rat> acc;
    for (int i = 0; i < g.dim; ++i)
      for (int m = 0; m < g.dim; ++m) {
        Rat w = 0;
        if (mode == DiffMode::Raw) {
          w = g.cc(i, a, m);
        } else {
          for (int j = 0; j < g.dim; ++j) {
            const Rat& c = g.cc(j, a, m);
            if (c != 0) w += Kinv(i, j) * c;
          }
        }
        if (w != 0) acc[{std::min(i, m), std::max(i, m)}] += w;
      }
    for (auto& [im, w] : acc)
      if (w != 0) out[a].push_back({im, w});
  }
  return out;
}

/* Derivation extension of the degree-1 map, as a sparse matrix
 * Sym^k -> Sym^{k+1}. */
inline SparseMat spencer_differential(const LieAlgebra& g, int k, DiffMode mode) {
  SymSpace dom(g.dim, k), cod(g.dim, k + 1);
  auto deg1 = degree_one_terms(g, mode);
  SparseMat d(cod.dim_space(), dom.dim_space());
  d.set_tags("sym:" + std::to_string(k), "sym:" + std::to_string(k + 1));
  for (int col = 0; col < dom.dim_space(); ++col) {
    const auto& m = dom.element(col);
    std::map<int, Rat> acc;
    for (std::size_t pos = 0; pos < m.size(); ++pos) {
      std::vector<int> rest;
      for (std::size_t j = 0; j < m.size(); ++j)
        if (j != pos) rest.push_back(m[j]);
      for (const auto& [im, w] : deg1[m[pos]]) {
        std::vector<int> nm = rest;
        nm.push_back(im.first);
        nm.push_back(im.second);
        acc[cod.index_of(std::move(nm))] += w;
      }
    }
    for (auto& [row, w] : acc)
      if (w != 0) d.add_at(row, col, w);
  }
  return d;
}

/* Independent application oracle: expands the derivation rule on one
 * multiset directly, no matrices.  Used to cross-check delta and
 * delta^2 against the sparse-matrix route. */
inline std::map<std::vector<int>, Rat> spencer_apply_bruteforce(
    const LieAlgebra& g, const std::map<std::vector<int>, Rat>& element, DiffMode mode) {
  auto deg1 = degree_one_terms(g, mode);
  std::map<std::vector<int>, Rat> out;
  for (const auto& [m, coeff] : element) {
    if (coeff == 0) continue;
    for (std::size_t pos = 0; pos < m.size(); ++pos) {
      std::vector<int> rest;
      for (std::size_t j = 0; j < m.size(); ++j)
        if (j != pos) rest.push_back(m[j]);
      for (const auto& [im, w] : deg1[m[pos]]) {
        std::vector<int> nm = rest;
        nm.push_back(im.first);
        nm.push_back(im.second);
        std::sort(nm.begin(), nm.end());
        out[nm] += coeff * w;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

struct NilpotencyReport {
  bool nilpotent = true;
  int first_failure_degree = -1;     /* k with delta_{k+1} . delta_k != 0 */
  int first_failure_column = -1;     /* basis index in Sym^k */
  std::string witness;               /* formatted delta^2 of that element */
  bool oracle_agrees = true;         /* matrix route == brute-force route */
};

/* Checks delta^2 = 0 on Sym^k for k = 1..kmax through both routes. */
inline NilpotencyReport nilpotency_check(const LieAlgebra& g, int kmax, DiffMode mode) {
  NilpotencyReport rep;
  for (int k = 1; k <= kmax; ++k) {
    SparseMat d1 = spencer_differential(g, k, mode);
    SparseMat d2 = spencer_differential(g, k + 1, mode);
    SparseMat dd = d2.compose(d1);
    SymSpace dom(g.dim, k), cod(g.dim, k + 2);
    for (int col = 0; col < dom.dim_space(); ++col) {
      /* brute-force route for the same column */
      std::map<std::vector<int>, Rat> x{{dom.element(col), Rat(1)}};
      auto once = spencer_apply_bruteforce(g, x, mode);
      auto twice = spencer_apply_bruteforce(g, once, mode);
      std::map<int, Rat> mat_col;
      for (const auto& [row, v] : dd.col(col)) mat_col[row] = v;
      std::map<int, Rat> oracle_col;
      for (const auto& [m, v] : twice) oracle_col[cod.index_of(m)] = v;
      if (mat_col != oracle_col) rep.oracle_agrees = false;
      if (!mat_col.empty() && rep.nilpotent) {
        rep.nilpotent = false;
        rep.first_failure_degree = k;
        rep.first_failure_column = col;
        std::string w;
        for (const auto& [row, v] : mat_col) {
          if (!w.empty()) w += " + ";
          w += "(" + rat_str(v) + ")*" + cod.format(row, g.labels);
        }
        rep.witness = dom.format(col, g.labels) + " -> " + w;
      }
    }
    if (!rep.nilpotent) break; /* report the lowest failing degree only */
  }
  return rep;
}

}  // namespace spencer::sym
