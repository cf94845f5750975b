#pragma once

#include <string>
#include <vector>

#include "spencer/complex/ce.hpp"
#include "spencer/complex/cochain.hpp"
#include "spencer/derham/base_model.hpp"
#include "spencer/sym/sym_space.hpp"

namespace spencer::specseq {

using complex::CochainComplex;
using liealg::LieAlgebra;

/* First-quadrant double complex K^{p,q} = A^p (x) V^q with
 *   d_h = dA (x) id          : (p,q) -> (p+1,q)
 *   d_v = (-1)^p id (x) dV   : (p,q) -> (p,q+1)
 * so that d_h d_v + d_v d_h = 0 and (d_h + d_v)^2 = 0 on the total
 * complex.  Inside K^{p,q} the index is base-major: i = iA*dimV + iV. */
struct DoubleComplex {
  std::string name;
  int pmax = 0, qmax = 0;
  std::vector<std::vector<int>> dim;      /* [p][q] */
  std::vector<std::vector<SparseMat>> dh; /* [p][q], zero-shaped at p = pmax */
  std::vector<std::vector<SparseMat>> dv; /* [p][q], zero-shaped at q = qmax */

  int dim_at(int p, int q) const {
    if (p < 0 || p > pmax || q < 0 || q > qmax) return 0;
    return dim[p][q];
  }

  struct IdentityReport {
    bool dh_squares_to_zero = true;
    bool dv_squares_to_zero = true;
    bool anticommute = true;
    std::string first_failure; /* "<identity> at (p,q)" for the earliest hit */
    bool ok() const { return dh_squares_to_zero && dv_squares_to_zero && anticommute; }
  };

  IdentityReport check_identities() const {
    IdentityReport rep;
    auto note = [&rep](const char* what, int p, int q) {
      if (rep.first_failure.empty())
        rep.first_failure = std::string(what) + " at (" + std::to_string(p) + "," +
                            std::to_string(q) + ")";
    };
    for (int p = 0; p <= pmax; ++p)
      for (int q = 0; q <= qmax; ++q) {
        if (p + 1 < pmax && !dh[p + 1][q].compose(dh[p][q]).is_zero()) {
          rep.dh_squares_to_zero = false;
          note("d_h.d_h != 0", p, q);
        }
        if (q + 1 < qmax && !dv[p][q + 1].compose(dv[p][q]).is_zero()) {
          rep.dv_squares_to_zero = false;
          note("d_v.d_v != 0", p, q);
        }
        if (p < pmax && q < qmax) {
          SparseMat a = dv[p + 1][q].compose(dh[p][q]);
          SparseMat b = dh[p][q + 1].compose(dv[p][q]);
          if (!(a + b).is_zero()) {
            rep.anticommute = false;
            note("d_h.d_v + d_v.d_h != 0", p, q);
          }
        }
      }
    return rep;
  }

  /* Tot^k = sum_{p+q=k} K^{p,q}, blocks by increasing p. */
  CochainComplex total() const {
    CochainComplex C;
    C.name = name + ":total";
    const int top = pmax + qmax;
    auto offsets = [&](int k) {
      std::vector<int> off(pmax + 2, 0);
      int run = 0;
      for (int p = 0; p <= pmax; ++p) {
        off[p] = run;
        run += dim_at(p, k - p);
      }
      off[pmax + 1] = run;
      return off;
    };
    for (int k = 0; k <= top; ++k) C.dims.push_back(offsets(k).back());
    for (int k = 0; k < top; ++k) {
      auto src = offsets(k), dst = offsets(k + 1);
      SparseMat d(C.dims[k + 1], C.dims[k]);
      for (int p = 0; p <= pmax; ++p) {
        int q = k - p;
        if (q < 0 || q > qmax || dim[p][q] == 0) continue;
        if (p < pmax)
          for (int c = 0; c < dim[p][q]; ++c)
            for (const auto& [r, v] : dh[p][q].col(c))
              d.add_at(dst[p + 1] + r, src[p] + c, v);
        if (q < qmax)
          for (int c = 0; c < dim[p][q]; ++c)
            for (const auto& [r, v] : dv[p][q].col(c))
              d.add_at(dst[p] + r, src[p] + c, v);
      }
      C.d.push_back(std::move(d));
    }
    return C;
  }
};

/* Assembles A (x) V from a base complex and a vertical complex. */
inline DoubleComplex build_double_complex(const CochainComplex& A,
                                          const CochainComplex& V,
                                          const std::string& name) {
  A.validate();
  V.validate();
  int bad = -1;
  if (!V.is_nilpotent(&bad))
    throw input_error("vertical differential is not nilpotent at degree " +
                      std::to_string(bad) +
                      "; this construction needs d.d = 0 (use killing_dual mode or "
                      "an algebra whose raw map already squares to zero)");
  DoubleComplex K;
  K.name = name;
  K.pmax = A.top();
  K.qmax = V.top();
  K.dim.assign(K.pmax + 1, std::vector<int>(K.qmax + 1, 0));
  K.dh.assign(K.pmax + 1, std::vector<SparseMat>(K.qmax + 1));
  K.dv.assign(K.pmax + 1, std::vector<SparseMat>(K.qmax + 1));
  for (int p = 0; p <= K.pmax; ++p)
    for (int q = 0; q <= K.qmax; ++q) {
      K.dim[p][q] = A.dims[p] * V.dims[q];
      K.dh[p][q] = (p < K.pmax)
                       ? SparseMat::kron(A.d[p], SparseMat::identity(V.dims[q]))
                       : SparseMat(0, K.dim[p][q]);
      K.dv[p][q] = (q < K.qmax)
                       ? SparseMat::kron(SparseMat::identity(A.dims[p]), V.d[q])
                             .scaled(Rat(p % 2 ? -1 : 1))
                       : SparseMat(0, K.dim[p][q]);
    }
  if (auto rep = K.check_identities(); !rep.ok())
    throw invariant_violation("double complex identities failed for " + name + ": " +
                              rep.first_failure);
  return K;
}

/* Vertical complex, weight-graded route: Sym^0 -> ... -> Sym^kmax with
 * the degree-raising map in the chosen mode. */
inline CochainComplex spencer_vertical(const LieAlgebra& g, int kmax,
                                       sym::DiffMode mode) {
  if (kmax < 1) throw input_error("vertical weight cutoff must be >= 1");
  CochainComplex V;
  V.name = "sym:" + g.name;
  for (int k = 0; k <= kmax; ++k) V.dims.push_back(sym::SymSpace(g.dim, k).dim_space());
  for (int k = 0; k < kmax; ++k) V.d.push_back(sym::spencer_differential(g, k, mode));
  return V;
}

/* Vertical complex, one coefficient slice of the cochain route. */
inline CochainComplex ce_vertical(const LieAlgebra& g, int k) {
  return complex::ce_complex(g, complex::sym_adjoint_module(g, k));
}

/* The full double-complex build for either vertical mode.  The weight-graded
 * route gives one complex spanning Sym^0..Sym^kmax; the cochain route splits
 * into one complex per conserved symmetric degree k <= kmax. */
struct SpencerBuild {
  std::string vertical;           /* "spencer" or "ce" */
  std::vector<int> ks;            /* CE: slice degrees; SPENCER: {kmax}   */
  std::vector<DoubleComplex> slices;
};

inline SpencerBuild build_spencer_double(const derham::BaseModel& base,
                                         const LieAlgebra& g, int kmax,
                                         const std::string& vertical_mode,
                                         sym::DiffMode pairing_mode) {
  if (kmax < 1) throw input_error("kmax must be >= 1");
  SpencerBuild out;
  if (vertical_mode == "spencer") {
    out.vertical = "spencer";
    out.ks = {kmax};
    out.slices.push_back(build_double_complex(
        base.complex, spencer_vertical(g, kmax, pairing_mode),
        base.spec + "(x)sym:" + g.name));
  } else if (vertical_mode == "ce") {
    out.vertical = "ce";
    for (int k = 0; k <= kmax; ++k) {
      out.ks.push_back(k);
      out.slices.push_back(build_double_complex(
          base.complex, ce_vertical(g, k),
          base.spec + "(x)ce:" + g.name + ":k=" + std::to_string(k)));
    }
  } else {
    throw input_error("vertical mode must be 'spencer' or 'ce', got '" + vertical_mode +
                      "'");
  }
  return out;
}

}  // namespace spencer::specseq
