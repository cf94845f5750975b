#pragma once

#include <map>
#include <string>
#include <vector>

#include "spencer/complex/ce.hpp"
#include "spencer/derham/base_model.hpp"
#include "spencer/specseq/pages.hpp"

namespace spencer::torsion {

using derham::BaseModel;
using liealg::LieAlgebra;

/* dim of the coadjoint-invariant subspace of Sym^j(g*). */
inline int invariants_dimension(const LieAlgebra& g, int j) {
  return complex::invariants_dimension(g, complex::sym_coadjoint_module(g, j));
}

/* Closed-form count of the correction classes in degree k: sum of
 * b_i * dim Inv(Sym^j g*) over i + 2j = k, j >= 1, gated by the j-th
 * cup power of the curvature class.  The proof-form variant, which
 * strides over every p < k instead of the even offsets only, is kept
 * side by side; the two shapes are not reconciled when they differ. */
struct TorsionReport {
  int k = 0;
  std::string mode; /* "formal" | "ring" */

  struct Term {
    int i = 0, j = 0;
    long long b_i = 0;
    long long inv_dim_j = 0;
    bool marker_nonzero = false;
    long long contribution = 0; /* b_i * inv_dim_j * [marker] */
  };
  std::vector<Term> terms;
  long long total_dim = 0;     /* statement form */
  long long classical_dim = 0; /* b_k */

  long long proof_form_total = 0; /* sum_{p<k} b_p * inv_dim(k-p) */
  bool forms_agree = false;
};

inline long long betti_of(const BaseModel& base, int i) {
  return (i >= 0 && i < static_cast<int>(base.betti.size())) ? base.betti[i] : 0;
}

inline TorsionReport torsion_case1(const BaseModel& base, const LieAlgebra& g, int k,
                                   const std::string& mode) {
  if (k < 0) throw input_error("torsion: k must be >= 0");
  if (mode != "formal" && mode != "ring")
    throw input_error("torsion: curvature mode must be formal|ring, got '" + mode + "'");
  if (mode == "ring" && !base.has_ring)
    throw input_error("torsion: base model '" + base.spec +
                      "' carries no ring table (ring mode)");

  TorsionReport rep;
  rep.k = k;
  rep.mode = mode;
  for (int j = 1; 2 * j <= k; ++j) {
    const int i = k - 2 * j;
    if (i > base.n) continue;
    TorsionReport::Term t;
    t.i = i;
    t.j = j;
    t.b_i = betti_of(base, i);
    t.inv_dim_j = invariants_dimension(g, j);
    t.marker_nonzero = derham::cup_power(base, j, mode == "ring");
    t.contribution = t.marker_nonzero ? t.b_i * t.inv_dim_j : 0;
    rep.total_dim += t.contribution;
    rep.terms.push_back(t);
  }
  rep.classical_dim = betti_of(base, k);
  for (int p = 0; p < k; ++p)
    rep.proof_form_total += betti_of(base, p) * invariants_dimension(g, k - p);
  rep.forms_agree = (rep.total_dim == rep.proof_form_total);
  return rep;
}

/* Regroups the Case 1 terms by curvature-power weight j. */
inline std::map<int, long long> weight_decomposition(const TorsionReport& rep) {
  std::map<int, long long> w;
  for (const auto& t : rep.terms) w[t.j] += t.contribution;
  return w;
}

/* Filtration count: everything in total degree k that survives to the
 * limit page strictly left of the classical column p = k. */
inline long long torsion_case2(const specseq::PageResult& pages, int k) {
  if (k < 0 || k > pages.pmax + pages.qmax)
    throw input_error("torsion: k = " + std::to_string(k) +
                      " exceeds the available total degree " +
                      std::to_string(pages.pmax + pages.qmax));
  long long s = 0;
  for (int p = 0; p < k && p <= pages.pmax; ++p) {
    int q = k - p;
    if (q >= 0 && q <= pages.qmax) s += pages.einf[p][q];
  }
  return s;
}

inline long long classical_part(const BaseModel& base, int k) {
  if (k < 0 || k > base.n)
    throw input_error("classical part: k must lie in 0..n = 0.." + std::to_string(base.n));
  return betti_of(base, k);
}

/* Both routes on one base/algebra pair: the closed form against the
 * aggregated limit-page count of the cochain-route coefficient slices
 * Sym^0..Sym^kmax. */
struct TorsionRun {
  TorsionReport case1;
  struct Slice {
    int k_slice = 0;
    long long contribution = 0;
    int degeneration_page = 0;
  };
  std::vector<Slice> slices;
  long long case2_total = 0;
  long long classical = 0;        /* b_k */
  bool classical_matches_page = false; /* b_k == E_inf^{k,0} of slice 0 */
};

inline TorsionRun torsion_run(const BaseModel& base, const LieAlgebra& g, int k,
                              int kmax, const std::string& mode) {
  if (kmax < 0) throw input_error("torsion: kmax must be >= 0");
  TorsionRun run;
  run.case1 = torsion_case1(base, g, k, mode);
  run.classical = betti_of(base, k);
  for (int j = 0; j <= kmax; ++j) {
    auto K = specseq::build_double_complex(base.complex, specseq::ce_vertical(g, j),
                                           base.spec + ":slice" + std::to_string(j));
    auto pages = specseq::compute_pages(K);
    TorsionRun::Slice sc;
    sc.k_slice = j;
    sc.degeneration_page = pages.degeneration_page;
    sc.contribution =
        (k <= pages.pmax + pages.qmax) ? torsion_case2(pages, k) : 0;
    run.case2_total += sc.contribution;
    if (j == 0) {
      long long e = (k <= pages.pmax) ? pages.einf[k][0] : 0;
      run.classical_matches_page = (e == run.classical);
    }
    run.slices.push_back(sc);
  }
  return run;
}

}  // namespace spencer::torsion
