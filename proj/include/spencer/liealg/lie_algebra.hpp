#pragma once

#include <string>
#include <vector>

#include "spencer/core/dense.hpp"
#include "spencer/core/error.hpp"
#include "spencer/core/rational.hpp"

namespace spencer::liealg {

/* Finite-dimensional Lie algebra over Q, given by structure constants:
 *   [e_i, e_j] = sum_k c[i][j][k] e_k.
 * Storage is the flattened dense tensor; algebra dimensions stay small. */
struct LieAlgebra {
  int dim = 0;
  std::string name;
  std::vector<std::string> labels;
  std::vector<Rat> c; /* (i*dim + j)*dim + k */

  const Rat& cc(int i, int j, int k) const { return c[(i * dim + j) * dim + k]; }
  Rat& cc(int i, int j, int k) { return c[(i * dim + j) * dim + k]; }

  /* [x, y] for coefficient vectors. */
  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    std::vector<Rat> z(dim, Rat(0));
    for (int i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim; ++j) {
        if (y[j] == 0) continue;
        const Rat f = x[i] * y[j];
        for (int k = 0; k < dim; ++k) {
          const Rat& s = cc(i, j, k);
          if (s != 0) z[k] += f * s;
        }
      }
    }
    return z;
  }

  /* Matrix of ad(e_i): column j holds [e_i, e_j]. */
  RatDense adjoint(int i) const {
    RatDense m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) m(k, j) = cc(i, j, k);
    return m;
  }

  RatDense adjoint_of(const std::vector<Rat>& x) const {
    RatDense m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) m(k, j) += x[i] * cc(i, j, k);
    }
    return m;
  }

  /* K(e_i, e_j) = tr(ad e_i o ad e_j). */
  RatDense killing_form() const {
    std::vector<RatDense> ad;
    ad.reserve(dim);
    for (int i = 0; i < dim; ++i) ad.push_back(adjoint(i));
    RatDense k(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        Rat t = (ad[i] * ad[j]).trace();
        k(i, j) = t;
        k(j, i) = t;
      }
    return k;
  }

  /* Coadjoint action on covectors: <ad*_xi lam, Y> = -<lam, [xi, Y]>. */
  std::vector<Rat> coadjoint_apply(const std::vector<Rat>& xi,
                                   const std::vector<Rat>& lam) const {
    std::vector<Rat> mu(dim, Rat(0));
    for (int k = 0; k < dim; ++k) {
      /* mu_k = -<lam, [xi, e_k]> */
      Rat acc = 0;
      for (int i = 0; i < dim; ++i) {
        if (xi[i] == 0) continue;
        for (int m = 0; m < dim; ++m) {
          const Rat& s = cc(i, k, m);
          if (s != 0) acc += xi[i] * s * lam[m];
        }
      }
      mu[k] = -acc;
    }
    return mu;
  }

  std::vector<Rat> basis_vector(int i) const {
    std::vector<Rat> v(dim, Rat(0));
    v[i] = 1;
    return v;
  }
};

struct StructureViolation {
  std::string kind; /* "antisymmetry" | "jacobi" */
  int i = 0, j = 0, k = 0;
};

struct StructureReport {
  bool antisymmetry_ok = true;
  bool jacobi_ok = true;
  bool killing_symmetric = true;
  int killing_rank = 0;
  std::vector<StructureViolation> violations; /* first few only */

  bool ok() const { return antisymmetry_ok && jacobi_ok && killing_symmetric; }
};

/* Brute force over all index tuples; this *is* the oracle, no shortcuts. */
inline StructureReport check_structure(const LieAlgebra& g) {
  StructureReport rep;
  const int n = g.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (g.cc(i, j, k) != -g.cc(j, i, k)) {
          rep.antisymmetry_ok = false;
          if (rep.violations.size() < 8) rep.violations.push_back({"antisymmetry", i, j, k});
        }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        /* [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0 */
        auto t1 = g.bracket(g.basis_vector(i), g.bracket(g.basis_vector(j), g.basis_vector(k)));
        auto t2 = g.bracket(g.basis_vector(j), g.bracket(g.basis_vector(k), g.basis_vector(i)));
        auto t3 = g.bracket(g.basis_vector(k), g.bracket(g.basis_vector(i), g.basis_vector(j)));
        for (int m = 0; m < n; ++m)
          if (t1[m] + t2[m] + t3[m] != 0) {
            rep.jacobi_ok = false;
            if (rep.violations.size() < 8) rep.violations.push_back({"jacobi", i, j, k});
            break;
          }
      }
  RatDense kf = g.killing_form();
  rep.killing_symmetric = kf.is_symmetric();
  rep.killing_rank = kf.rank();
  return rep;
}

}  // namespace spencer::liealg
