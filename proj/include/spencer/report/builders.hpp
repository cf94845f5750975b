#pragma once

#include <string>

#include "spencer/complex/cochain.hpp"
#include "spencer/lattice/checks.hpp"
#include "spencer/lattice/evolve.hpp"
#include "spencer/lattice/ops.hpp"
#include "spencer/lattice/solver.hpp"
#include "spencer/liealg/lie_algebra.hpp"
#include "spencer/report/report.hpp"
#include "spencer/specseq/pages.hpp"
#include "spencer/torsion/torsion.hpp"

namespace spencer::report {

inline json structure_body(const liealg::LieAlgebra& g,
                           const liealg::StructureReport& rep) {
  int anti = 0, jac = 0;
  for (const auto& v : rep.violations) (v.kind == "antisymmetry" ? anti : jac)++;
  json b;
  b["algebra"] = g.name;
  b["dim"] = g.dim;
  b["labels"] = g.labels;
  b["antisymmetry_ok"] = rep.antisymmetry_ok;
  b["jacobi_ok"] = rep.jacobi_ok;
  b["antisymmetry_violations"] = rep.antisymmetry_ok ? 0 : anti;
  b["jacobi_violations"] = rep.jacobi_ok ? 0 : jac;
  b["killing_symmetric"] = rep.killing_symmetric;
  b["killing_rank"] = rep.killing_rank;
  b["killing_nondegenerate"] = (rep.killing_rank == g.dim);
  return b;
}

inline json cohomology_body(const std::string& mode, int k,
                            const complex::CohomologyResult& res) {
  json b;
  b["mode"] = mode;
  b["k"] = k;
  b["H"] = res.betti;
  b["euler"] = res.euler;
  return b;
}

/* Page report: tables r = 1..limit with per-cell dims and outgoing d_r
 * ranks, keyed "p,q"; N; the two structural bounds; the independent
 * total-complex cohomology. */
inline json pages_body(const std::string& mode, int k, const specseq::PageResult& res,
                       int base_dim) {
  json pages = json::array();
  for (const auto& pt : res.pages) {
    json dims = json::object(), ranks = json::object();
    for (int p = 0; p <= res.pmax; ++p)
      for (int q = 0; q <= res.qmax; ++q) {
        const std::string key = std::to_string(p) + "," + std::to_string(q);
        dims[key] = pt.dim[p][q];
        if (pt.rank_out[p][q] != 0) ranks[key] = pt.rank_out[p][q];
      }
    pages.push_back({{"r", pt.r}, {"dims", dims}, {"dr_ranks", ranks}});
  }
  bool e2_degenerate = true;
  for (const auto& pt : res.pages)
    if (pt.r >= 2)
      for (const auto& row : pt.rank_out)
        for (int v : row)
          if (v != 0) e2_degenerate = false;
  json b;
  b["mode"] = mode;
  b["k"] = k;
  b["pages"] = pages;
  b["N"] = res.degeneration_page;
  b["bounds"] = {{"N_le_n_plus_1", res.degeneration_page <= base_dim + 1},
                 {"E2_degenerate", e2_degenerate}};
  b["total_cohomology"] = res.total_betti;
  b["totals_match"] = res.totals_match;
  return b;
}

inline json torsion_body(const torsion::TorsionReport& rep) {
  json terms = json::array();
  for (const auto& t : rep.terms)
    terms.push_back({{"i", t.i},
                     {"j", t.j},
                     {"b_i", t.b_i},
                     {"inv_dim_j", t.inv_dim_j},
                     {"marker_nonzero", t.marker_nonzero},
                     {"contribution", t.contribution}});
  json wd = json::object();
  for (const auto& [j, c] : torsion::weight_decomposition(rep))
    wd[std::to_string(j)] = c;
  json b;
  b["k"] = rep.k;
  b["mode"] = rep.mode;
  b["terms"] = terms;
  b["total_dim"] = rep.total_dim;
  b["classical_dim"] = rep.classical_dim;
  b["proof_form_total"] = rep.proof_form_total;
  b["forms_agree"] = rep.forms_agree;
  b["weight_decomposition"] = wd;
  return b;
}

inline json torsion_run_body(const torsion::TorsionRun& run) {
  json b = torsion_body(run.case1);
  json slices = json::array();
  for (const auto& s : run.slices)
    slices.push_back({{"k_slice", s.k_slice},
                      {"contribution", s.contribution},
                      {"degeneration_page", s.degeneration_page}});
  b["page_slices"] = slices;
  b["page_route_total"] = run.case2_total;
  b["classical_matches_page"] = run.classical_matches_page;
  return b;
}

inline json solve_body(const lattice::SolveResult& res) {
  json b;
  b["converged"] = res.converged;
  b["iterations"] = res.iterations;
  b["final_residual"] = res.final_residual;
  b["final_functional"] = res.final_functional;
  b["functional_history"] = res.functional_history;
  b["lambda_max_abs"] = res.lambda.max_abs();
  return b;
}

/* The consistency check is a necessary condition, reported not asserted:
 * when the residual is already below tol, the obstruction must sit under
 * 10 * tol * |Omega|_max (trivially so when the curvature vanishes). */
inline json lattice_check_body(const lattice::LatticeSpec& L, const lattice::AlgebraD& g,
                               const lattice::Field& omega, const lattice::Field& lambda,
                               double tol, int identity_trials,
                               std::uint64_t identity_seed) {
  const auto sy = lattice::symplectic_check(L, g, omega, lambda);
  const auto ob = lattice::integrability_obstruction(L, g, omega, lambda);
  const auto fr = lattice::frobenius_defect(L, g, omega);
  const auto pi = lattice::pairing_identity_sample(g, identity_trials, identity_seed);

  const bool triggered = (sy.cartan_residual_max < tol);
  const double bound = 10.0 * tol * fr.max_curvature;
  json b;
  b["cartan_residual_max"] = sy.cartan_residual_max;
  b["obstruction_max"] = ob.max_abs;
  b["obstruction_mean"] = ob.mean_abs;
  b["symplectic_defect_max"] = sy.max_defect;
  b["symplectic_identity_gap"] = sy.max_identity_gap;
  b["frobenius_defect_max"] = fr.max_defect;
  b["curvature_max"] = fr.max_curvature;
  b["identity_samples"] = json::array(
      {{{"trials", identity_trials}, {"max_abs", pi.max_abs}, {"max_scale", pi.max_scale}}});
  b["consistency"] = {{"tol", tol},
                      {"triggered", triggered},
                      {"bound", bound},
                      {"holds", !triggered || ob.max_abs <= bound}};
  return b;
}

inline json evolve_body(const std::string& scheme, const lattice::EvolveResult& res) {
  json b;
  b["scheme"] = scheme;
  b["steps_done"] = res.steps_done;
  b["blew_up"] = res.blew_up;
  b["blowup_step"] = res.blowup_step;
  b["max_norm_history"] = res.max_norm_history;
  b["curvature_norm_history"] = res.curvature_norm_history;
  b["final_max_abs"] = res.omega.max_abs();
  return b;
}

}  // namespace spencer::report
