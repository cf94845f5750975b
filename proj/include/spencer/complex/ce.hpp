#pragma once

#include <map>
#include <string>
#include <vector>

#include "spencer/complex/cochain.hpp"
#include "spencer/liealg/lie_algebra.hpp"
#include "spencer/sym/sym_space.hpp"

namespace spencer::complex {

using liealg::LieAlgebra;

/* Basis of Lambda^q over n letters: strictly increasing tuples, lex. */
class AltSpace {
 public:
  AltSpace(int n, int q) : n_(n), q_(q) {
    std::vector<int> cur;
    gen(0, q, cur);
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) index_[basis_[i]] = i;
  }

  int dim_space() const { return static_cast<int>(basis_.size()); }
  const std::vector<int>& element(int i) const { return basis_[i]; }

  int index_of(const std::vector<int>& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) throw invariant_violation("alt: tuple out of range");
    return it->second;
  }

  /* Sort a tuple, return permutation sign, or 0 on a repeated index. */
  static int normalize(std::vector<int>& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
      for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
        if (t[j - 1] == t[j]) return 0;
        std::swap(t[j - 1], t[j]);
        sign = -sign;
      }
    return sign;
  }

 private:
  void gen(int lo, int left, std::vector<int>& cur) {
    if (left == 0) {
      basis_.push_back(cur);
      return;
    }
    for (int i = lo; i <= n_ - left; ++i) {
      cur.push_back(i);
      gen(i + 1, left - 1, cur);
      cur.pop_back();
    }
  }

  int n_, q_;
  std::vector<std::vector<int>> basis_;
  std::map<std::vector<int>, int> index_;
};

/* Linear action of the algebra on a finite-dimensional space, one
 * matrix per basis element. */
struct ModuleAction {
  std::string name;
  int dim = 0;
  std::vector<SparseMat> rho;

  /* rho([e_i,e_j]) == rho_i rho_j - rho_j rho_i, brute force. */
  bool is_representation(const LieAlgebra& g) const {
    for (int i = 0; i < g.dim; ++i)
      for (int j = i + 1; j < g.dim; ++j) {
        SparseMat lhs(dim, dim);
        for (int k = 0; k < g.dim; ++k) {
          const Rat& c = g.cc(i, j, k);
          if (c != 0) lhs = lhs + rho[k].scaled(c);
        }
        SparseMat comm = rho[i].compose(rho[j]) + rho[j].compose(rho[i]).scaled(Rat(-1));
        if (!(lhs == comm)) return false;
      }
    return true;
  }
};

inline ModuleAction trivial_module() {
  ModuleAction m;
  m.name = "trivial";
  m.dim = 1;
  return m;
}

/* Sym^k of the adjoint action, extended as a derivation. */
inline ModuleAction sym_power_module(const LieAlgebra& g,
                                     const std::vector<SparseMat>& base, int k,
                                     const std::string& name) {
  sym::SymSpace sp(g.dim, k);
  ModuleAction m;
  m.name = name + "^" + std::to_string(k);
  m.dim = sp.dim_space();
  for (int i = 0; i < g.dim; ++i) {
    SparseMat a(m.dim, m.dim);
    for (int col = 0; col < m.dim; ++col) {
      const auto& ms = sp.element(col);
      std::map<int, Rat> acc;
      for (std::size_t pos = 0; pos < ms.size(); ++pos)
        for (const auto& [r, v] : base[i].col(ms[pos])) {
          std::vector<int> nm = ms;
          nm[pos] = r;
          acc[sp.index_of(std::move(nm))] += v;
        }
      for (auto& [row, v] : acc)
        if (v != 0) a.add_at(row, col, v);
    }
    m.rho.push_back(std::move(a));
  }
  return m;
}

inline ModuleAction sym_adjoint_module(const LieAlgebra& g, int k) {
  if (k == 0) return trivial_module();
  std::vector<SparseMat> base;
  for (int i = 0; i < g.dim; ++i) {
    SparseMat a(g.dim, g.dim);
    for (int j = 0; j < g.dim; ++j)
      for (int r = 0; r < g.dim; ++r) a.add_at(r, j, g.cc(i, j, r));
    base.push_back(std::move(a));
  }
  ModuleAction m = sym_power_module(g, base, k, "sym_adjoint");
  if (!m.is_representation(g))
    throw invariant_violation("sym_adjoint_module: derivation extension failed");
  return m;
}

/* Coadjoint is minus the transpose of the adjoint. */
inline ModuleAction sym_coadjoint_module(const LieAlgebra& g, int j) {
  if (j == 0) return trivial_module();
  std::vector<SparseMat> base;
  for (int i = 0; i < g.dim; ++i) {
    SparseMat a(g.dim, g.dim);
    for (int col = 0; col < g.dim; ++col)
      for (int r = 0; r < g.dim; ++r) a.add_at(r, col, -g.cc(i, r, col));
    base.push_back(std::move(a));
  }
  ModuleAction m = sym_power_module(g, base, j, "sym_coadjoint");
  if (!m.is_representation(g))
    throw invariant_violation("sym_coadjoint_module: derivation extension failed");
  return m;
}

/* Lambda^q g* tensor M with the standard differential; forward rule on
 * generators:
 *   d(e^S (x) v) = sum_a (-1)^a e^{s_0}^..^(d e^{s_a})^..  (x) v
 *                + sum_i (e^i ^ e^S) (x) rho_i v,
 *   d e^k = - sum_{i<j} c(i,j,k) e^i ^ e^j.
 * Basis index at degree q: subset-major, (S, m) -> idx(S)*dim(M) + m. */
inline CochainComplex ce_complex(const LieAlgebra& g, const ModuleAction& M) {
  const int n = g.dim;
  CochainComplex C;
  C.name = "ce:" + g.name + ":" + M.name;
  std::vector<AltSpace> alt;
  for (int q = 0; q <= n; ++q) {
    alt.emplace_back(n, q);
    C.dims.push_back(alt[q].dim_space() * M.dim);
  }
  for (int q = 0; q < n; ++q) {
    SparseMat d(C.dims[q + 1], C.dims[q]);
    d.set_tags(C.name + ":" + std::to_string(q), C.name + ":" + std::to_string(q + 1));
    for (int s = 0; s < alt[q].dim_space(); ++s) {
      const auto& S = alt[q].element(s);
      /* Lie part: same module index, coefficient map over target subsets */
      std::map<int, Rat> lie;
      for (int a = 0; a < q; ++a)
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            const Rat& c = g.cc(i, j, S[a]);
            if (c == 0) continue;
            std::vector<int> t;
            t.reserve(q + 1);
            for (int b = 0; b < q; ++b)
              if (b != a) t.push_back(S[b]);
            t.push_back(i);
            t.push_back(j);
            int sgn = AltSpace::normalize(t);
            if (sgn == 0) continue;
            /* (-1)^a from passing d through a 1-forms, -1 from d e^k.
             * t holds (S minus s_a, i, j) with i^j appended instead of
             * sitting at slot a; moving the adjacent pair there is an
             * even permutation, so normalize() already gives the full
             * sign. */
            Rat coeff = Rat(((a % 2 ? -1 : 1) * -sgn)) * c;
            if (coeff != 0) lie[alt[q + 1].index_of(t)] += coeff;
          }
      for (int m = 0; m < M.dim; ++m) {
        const int colidx = s * M.dim + m;
        for (const auto& [ts, v] : lie)
          if (v != 0) d.add_at(ts * M.dim + m, colidx, v);
        /* module part */
        for (int i = 0; i < n; ++i) {
          if (M.rho.empty()) break; /* trivial module */
          std::vector<int> t;
          t.reserve(q + 1);
          t.push_back(i);
          for (int b = 0; b < q; ++b) t.push_back(S[b]);
          int sgn = AltSpace::normalize(t);
          if (sgn == 0) continue;
          const int ts = alt[q + 1].index_of(t);
          for (const auto& [r, v] : M.rho[i].col(m))
            d.add_at(ts * M.dim + r, colidx, Rat(sgn) * v);
        }
      }
    }
    C.d.push_back(std::move(d));
  }
  C.validate();
  int bad = -1;
  if (!C.is_nilpotent(&bad))
    throw invariant_violation("ce_complex: differential not nilpotent at degree " +
                              std::to_string(bad));
  return C;
}

/* Joint kernel of all rho_i, computed from the stacked action matrix.
 * Independent of the H^0 route through ce_complex/cohomology. */
inline int invariants_dimension(const LieAlgebra& g, const ModuleAction& M) {
  if (M.rho.empty()) return M.dim;
  SparseMat stacked(g.dim * M.dim, M.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int c = 0; c < M.dim; ++c)
      for (const auto& [r, v] : M.rho[i].col(c)) stacked.add_at(i * M.dim + r, c, v);
  return M.dim - sparse_rank(stacked);
}

}  // namespace spencer::complex
