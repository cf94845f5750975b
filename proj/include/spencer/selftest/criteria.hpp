#pragma once

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spencer/complex/ce.hpp"
#include "spencer/derham/base_model.hpp"
#include "spencer/lattice/checks.hpp"
#include "spencer/lattice/evolve.hpp"
#include "spencer/lattice/solver.hpp"
#include "spencer/liealg/catalog.hpp"
#include "spencer/report/builders.hpp"
#include "spencer/specseq/double_complex.hpp"
#include "spencer/specseq/pages.hpp"
#include "spencer/sym/sym_space.hpp"
#include "spencer/torsion/torsion.hpp"

namespace spencer::selftest {

using liealg::LieAlgebra;
using report::json;

/* One acceptance criterion.  Pass/fail and details go into the report;
 * elapsed time is console-only so reports stay free of wall-clock data. */
struct Criterion {
  std::string id;
  std::string description;
  bool pass = false;
  std::string details;
  double limit_seconds = 0; /* 0 = no runtime requirement */
  double elapsed_seconds = 0;
};

namespace detail {

inline Criterion run_criterion(const std::string& id, const std::string& desc,
                               double limit, const std::function<void(Criterion&)>& body) {
  Criterion c;
  c.id = id;
  c.description = desc;
  c.limit_seconds = limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.pass = true;
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.details += std::string(c.details.empty() ? "" : "; ") + "exception: " + e.what();
  }
  c.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.pass && limit > 0 && c.elapsed_seconds > limit) {
    c.pass = false;
    c.details += std::string(c.details.empty() ? "" : "; ") + "exceeded runtime limit";
  }
  return c;
}

inline void require(Criterion& c, bool cond, const std::string& what) {
  if (!cond) {
    c.pass = false;
    c.details += std::string(c.details.empty() ? "" : "; ") + what;
  }
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

/* ---- shared page-run bookkeeping for criteria 6 and 7 ------------------ */
struct PageRun {
  std::string name;
  int base_dim = 0;
  specseq::PageResult pages;
};

inline std::vector<PageRun> standard_page_runs() {
  std::vector<PageRun> runs;
  auto add = [&runs](const std::string& base_spec, const LieAlgebra& g, int kmax,
                     const std::string& vertical, sym::DiffMode mode) {
    derham::BaseModel base = derham::base_model(base_spec);
    specseq::SpencerBuild b = specseq::build_spencer_double(base, g, kmax, vertical, mode);
    for (std::size_t i = 0; i < b.slices.size(); ++i)
      runs.push_back({b.slices[i].name, base.n, specseq::compute_pages(b.slices[i])});
  };
  const LieAlgebra su2 = liealg::su2();
  const LieAlgebra sl2 = liealg::sl2();
  add("torus:2:3", su2, 2, "spencer", sym::DiffMode::KillingDual);
  add("torus:2:3", su2, 2, "ce", sym::DiffMode::KillingDual);
  add("formal:1,2,1", sl2, 1, "ce", sym::DiffMode::KillingDual);
  add("quintic", su2, 1, "ce", sym::DiffMode::KillingDual);
  add("torus:4:3", su2, 2, "spencer", sym::DiffMode::KillingDual);
  return runs;
}

}  // namespace detail

/* 1. Exact structure validity for the whole preset catalog. */
inline Criterion criterion_1() {
  return detail::run_criterion(
      "AC1", "structure constants: antisymmetry + Jacobi exact for the catalog", 1.0,
      [](Criterion& c) {
        std::vector<std::string> names = {"su2", "sl2", "sl3", "heisenberg3"};
        for (int d = 1; d <= 6; ++d) names.push_back("abelian:" + std::to_string(d));
        for (const auto& n : names) {
          const auto rep = liealg::check_structure(liealg::catalog(n));
          detail::require(c, rep.ok(), n + ": structure violations found");
        }
        if (c.pass)
          c.details = std::to_string(names.size()) + " algebras, zero violations";
      });
}

/* 2. The three double-complex identities on the full build grid. */
inline Criterion criterion_2() {
  return detail::run_criterion(
      "AC2", "double-complex identities d_h^2 = d_v^2 = d_h d_v + d_v d_h = 0", 60.0,
      [](Criterion& c) {
        struct BaseCase {
          const char* spec;
          int kmax;
        };
        const BaseCase bases[] = {
            {"torus:2:3", 3}, {"torus:4:3", 2}, {"formal:1,2,1", 3}, {"quintic", 2}};
        const char* algebras[] = {"su2", "sl2", "abelian:2"};
        int built = 0;
        for (const auto& bc : bases)
          for (const char* an : algebras)
            for (const char* vertical : {"spencer", "ce"}) {
              const LieAlgebra g = liealg::catalog(an);
              /* the Killing-dual pairing needs a nondegenerate Killing form;
               * the abelian algebra runs the literal raw formula instead
               * (identically zero, so nilpotent) */
              const sym::DiffMode mode = std::string(an) == "abelian:2"
                                             ? sym::DiffMode::Raw
                                             : sym::DiffMode::KillingDual;
              derham::BaseModel base = derham::base_model(bc.spec);
              specseq::build_spencer_double(base, g, bc.kmax, vertical, mode);
              ++built; /* builder throws if any identity fails */
            }
        c.details = std::to_string(built) + " double complexes, identities exact";
      });
}

/* 3. Degree-raising nilpotency in killing_dual mode; raw-mode outcome is a
 * documented finding, with the brute-force oracle separating a violated
 * formula from an implementation bug. */
inline Criterion criterion_3() {
  return detail::run_criterion(
      "AC3", "degree-raising map squares to zero (killing_dual, k <= 4)", 0,
      [](Criterion& c) {
        std::string findings;
        for (const char* an : {"su2", "sl2"}) {
          const auto rep =
              sym::nilpotency_check(liealg::catalog(an), 4, sym::DiffMode::KillingDual);
          detail::require(c, rep.nilpotent,
                          std::string(an) + " killing_dual: delta^2 != 0");
          detail::require(c, rep.oracle_agrees,
                          std::string(an) + " killing_dual: matrix route disagrees with "
                                            "brute-force oracle (implementation bug)");
        }
        for (const char* an : {"su2", "sl2", "heisenberg3", "abelian:3"}) {
          const auto rep =
              sym::nilpotency_check(liealg::catalog(an), 3, sym::DiffMode::Raw);
          detail::require(c, rep.oracle_agrees,
                          std::string(an) + " raw: matrix route disagrees with "
                                            "brute-force oracle (implementation bug)");
          findings += std::string(findings.empty() ? "" : "; ") + an + " raw: ";
          if (rep.nilpotent)
            findings += "nilpotent";
          else
            findings += "delta^2 != 0 at degree " +
                        std::to_string(rep.first_failure_degree) +
                        " (documented finding: the literal basis formula fails, "
                        "brute-force oracle agrees, so this is a property of the "
                        "formula, not an implementation bug; witness " + rep.witness + ")";
        }
        c.details = (c.pass ? "killing_dual nilpotent for su2, sl2; " : "") + findings;
      });
}

/* 4. First and second cohomology vanish for the semisimple pair with all
 * Sym^k adjoint coefficients; the nilpotent negative control does not. */
inline Criterion criterion_4() {
  return detail::run_criterion(
      "AC4", "H^1 = H^2 = 0 for su2, sl2 with Sym^k adjoint coefficients, k <= 3", 120.0,
      [](Criterion& c) {
        for (const char* an : {"su2", "sl2"}) {
          const LieAlgebra g = liealg::catalog(an);
          for (int k = 0; k <= 3; ++k) {
            const auto res = complex::cohomology(
                complex::ce_complex(g, complex::sym_adjoint_module(g, k)));
            detail::require(c, res.betti[1] == 0 && res.betti[2] == 0,
                            std::string(an) + " k=" + std::to_string(k) +
                                ": H^1/H^2 nonzero");
          }
        }
        const auto h = complex::cohomology(
            complex::ce_complex(liealg::heisenberg3(), complex::trivial_module()));
        detail::require(c, h.betti[1] >= 1, "heisenberg3: H^1 = 0 (control failed)");
        if (c.pass)
          c.details = "su2, sl2 vanish for k = 0..3; dim H^1(heisenberg3, R) = " +
                      std::to_string(h.betti[1]);
      });
}

/* 5. E_2 is the product of base betti numbers with vertical cohomology. */
inline Criterion criterion_5() {
  return detail::run_criterion(
      "AC5", "E_2^{p,q} = b_p * dim H^q(g, Sym^k g) on torus:2:3, k <= 2", 0,
      [](Criterion& c) {
        const LieAlgebra g = liealg::su2();
        derham::BaseModel base = derham::base_model("torus:2:3");
        int cells = 0;
        for (int k = 0; k <= 2; ++k) {
          complex::CochainComplex V = specseq::ce_vertical(g, k);
          const auto Hq = complex::cohomology(V).betti;
          auto K = specseq::build_double_complex(base.complex, V, "kunneth-check");
          const auto pages = specseq::compute_pages(K);
          const auto& E2 = pages.pages.at(1);
          detail::require(c, E2.r == 2, "page table r != 2 where E_2 expected");
          for (int p = 0; p <= pages.pmax; ++p)
            for (int q = 0; q <= pages.qmax; ++q) {
              const int want = base.betti[p] * Hq[q];
              detail::require(c, E2.dim[p][q] == want,
                              "E_2 mismatch at k=" + std::to_string(k) + " (p,q)=(" +
                                  std::to_string(p) + "," + std::to_string(q) + ")");
              ++cells;
            }
        }
        if (c.pass) c.details = std::to_string(cells) + " cells exact";
      });
}

/* 6 + 7, sharing one run set. */
inline std::pair<Criterion, Criterion> criteria_6_7() {
  std::vector<detail::PageRun> runs;
  Criterion c6 = detail::run_criterion(
      "AC6", "stable index N <= n+1; E_2 = E_inf for n <= 4 bases", 300.0,
      [&runs](Criterion& c) {
        runs = detail::standard_page_runs();
        for (const auto& r : runs) {
          detail::require(c, r.pages.degeneration_page <= r.base_dim + 1,
                          r.name + ": N exceeds n+1");
          if (r.base_dim <= 4) {
            bool higher_rank = false;
            for (const auto& tab : r.pages.pages)
              if (tab.r >= 2)
                for (const auto& row : tab.rank_out)
                  for (int v : row)
                    if (v != 0) higher_rank = true;
            detail::require(c, !higher_rank, r.name + ": nonzero d_r with r >= 2");
          }
        }
        if (c.pass) c.details = std::to_string(runs.size()) + " runs within bounds";
      });
  Criterion c7 = detail::run_criterion(
      "AC7", "sum of E_inf diagonals equals total cohomology on every run", 0,
      [&runs](Criterion& c) {
        detail::require(c, !runs.empty(), "no page runs available");
        for (const auto& r : runs)
          detail::require(c, r.pages.totals_match, r.name + ": totals mismatch");
        if (c.pass)
          c.details = std::to_string(runs.size()) + " runs, all degrees exact";
      });
  return {std::move(c6), std::move(c7)};
}

/* 8. Torsion counts: filtration route vs page table, closed-form frozen
 * values, and the statement-vs-proof-form discrepancy report. */
inline Criterion criterion_8() {
  return detail::run_criterion(
      "AC8", "torsion counts: filtration = page sum; closed form frozen; "
             "discrepancy report emitted", 0,
      [](Criterion& c) {
        const LieAlgebra g = liealg::su2();
        derham::BaseModel torus2 = derham::base_model("torus:2:3");

        /* independent invariant-dimension oracle: H^0 of the coadjoint
         * coefficient complex vs the joint-kernel count */
        for (int j = 1; j <= 2; ++j) {
          const int via_kernel = torsion::invariants_dimension(g, j);
          const int via_h0 = complex::cohomology(complex::ce_complex(
                                 g, complex::sym_coadjoint_module(g, j)))
                                 .betti[0];
          detail::require(c, via_kernel == via_h0,
                          "invariant-dimension routes disagree at j=" + std::to_string(j));
        }

        const auto rep4 = torsion::torsion_case1(torus2, g, 4, "formal");
        const auto rep2 = torsion::torsion_case1(torus2, g, 2, "formal");
        detail::require(c, rep4.total_dim == 1, "case1(k=4) != 1");
        detail::require(c, rep2.total_dim == 0, "case1(k=2) != 0");
        detail::require(c, !rep4.forms_agree && rep4.proof_form_total == 2,
                        "statement/proof discrepancy not detected at k=4");
        const json body = report::torsion_body(rep4);
        detail::require(c,
                        body.contains("total_dim") && body.contains("proof_form_total") &&
                            body.contains("forms_agree"),
                        "discrepancy report lacks the two forms");

        /* filtration count vs direct E_2 sum on degenerate slices */
        derham::BaseModel formal = derham::base_model("formal:1,2,1");
        for (int j = 0; j <= 2; ++j) {
          auto K = specseq::build_double_complex(
              formal.complex, specseq::ce_vertical(g, j), "t8");
          const auto pages = specseq::compute_pages(K);
          detail::require(c, pages.degeneration_page <= 2, "run not degenerate");
          for (int k = 0; k <= pages.pmax + pages.qmax; ++k) {
            long long direct = 0;
            for (int p = 0; p < k && p <= pages.pmax; ++p)
              if (k - p <= pages.qmax) direct += pages.pages.at(1).dim[p][k - p];
            detail::require(c, torsion::torsion_case2(pages, k) == direct,
                            "case2 != E_2 sum at k=" + std::to_string(k));
          }
        }
        if (c.pass)
          c.details = "case1(torus^2, su2): k=4 -> 1, k=2 -> 0; proof form 2 reported "
                      "alongside; filtration counts match E_2 sums";
      });
}

/* 9. Four-term pairing identity, seeded random sampling. */
inline Criterion criterion_9() {
  return detail::run_criterion(
      "AC9", "pairing identity max error < 1e-11 over 1000 trials (su2, sl3)", 0,
      [](Criterion& c) {
        for (const char* an : {"su2", "sl3"}) {
          const auto g = lattice::algebra_to_double(liealg::catalog(an));
          const auto rep = lattice::pairing_identity_sample(g, 1000, 424242);
          detail::require(c, rep.max_abs < 1e-11,
                          std::string(an) + ": max error " + detail::fmt(rep.max_abs));
          if (c.pass)
            c.details += std::string(c.details.empty() ? "" : "; ") + an +
                         " max error " + detail::fmt(rep.max_abs);
        }
      });
}

/* 10. Analytic gradient vs central differences. */
inline Criterion criterion_10() {
  return detail::run_criterion(
      "AC10", "functional gradient vs central differences, rel err < 1e-6", 0,
      [](Criterion& c) {
        const lattice::LatticeSpec L(2, 8);
        const auto g = lattice::algebra_to_double(liealg::su2());
        struct Cfg {
          const char* omega;
          const char* lambda;
          const char* anchor;
          double alpha;
        };
        const Cfg cfgs[] = {
            {"random:seed=11:amp=0.3", "random:seed=12:amp=1.0", "random:seed=13:amp=1.0",
             0.25},
            {"zero", "random:seed=21:amp=0.5", "constant:0,0,1", 1.0},
            {"random:seed=31:amp=1.0", "random:seed=32:amp=1.0", "zero", 0.0},
        };
        const double eps = 1e-5;
        double worst = 0;
        int cfg_idx = 0;
        for (const auto& cf : cfgs) {
          ++cfg_idx;
          lattice::Field omega = lattice::make_field(L, L.n, g.dim, cf.omega);
          lattice::Field lam = lattice::make_field(L, 1, g.dim, cf.lambda);
          lattice::Field anchor = lattice::make_field(L, 1, g.dim, cf.anchor);
          lattice::Field grad =
              lattice::functional_gradient(L, g, omega, lam, anchor, cf.alpha);
          for (int t = 0; t < 20; ++t) {
            lattice::Field dir = lattice::make_field(
                L, 1, g.dim,
                "random:seed=" + std::to_string(1000 + 100 * cfg_idx + t) + ":amp=1.0");
            const double an = lattice::dot(grad, dir);
            const double ip = lattice::compatibility_functional(
                L, g, omega, lam + lattice::scaled(dir, eps), anchor, cf.alpha);
            const double im = lattice::compatibility_functional(
                L, g, omega, lam - lattice::scaled(dir, eps), anchor, cf.alpha);
            const double fd = (ip - im) / (2 * eps);
            const double rel =
                std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-12});
            worst = std::max(worst, rel);
            detail::require(c, rel < 1e-6,
                            "config " + std::to_string(cfg_idx) + " direction " +
                                std::to_string(t) + ": rel err " + detail::fmt(rel));
          }
        }
        if (c.pass)
          c.details = "3 configs x 20 directions, worst rel err " + detail::fmt(worst);
      });
}

/* 11. Solver regimes: exact recovery, monotone descent, obstruction floor. */
inline Criterion criterion_11() {
  return detail::run_criterion(
      "AC11", "solver regimes: flat recovery, monotone descent, obstruction floor",
      120.0, [](Criterion& c) {
        const lattice::LatticeSpec L(2, 8);
        const auto g = lattice::algebra_to_double(liealg::su2());

        /* flat: omega = 0, constant anchor is the exact minimizer */
        {
          lattice::Field omega = lattice::make_field(L, L.n, g.dim, "zero");
          lattice::Field anchor =
              lattice::make_field(L, 1, g.dim, "constant:0.3,-0.2,0.5");
          lattice::Field lam0 = lattice::make_field(L, 1, g.dim, "zero");
          lattice::SolveOptions opt;
          opt.alpha = 1.0;
          opt.tol = 1e-12;
          opt.max_iter = 2000;
          const auto res = lattice::solve_compatibility(L, g, omega, lam0, anchor, opt);
          detail::require(c, res.converged, "flat regime: solver did not converge");
          const double err = (res.lambda - anchor).max_abs();
          detail::require(c, err < 1e-10,
                          "flat regime: anchor recovery error " + detail::fmt(err));
          if (c.pass)
            c.details += "flat: anchor recovered to " + detail::fmt(err);
        }

        /* small curvature: descent must be monotone and strictly useful */
        {
          lattice::Field omega =
              lattice::make_field(L, L.n, g.dim, "random:seed=7:amp=0.05");
          lattice::Field anchor = lattice::make_field(L, 1, g.dim, "constant:0,0,1");
          lattice::Field lam0 = lattice::make_field(L, 1, g.dim, "zero");
          lattice::SolveOptions opt;
          opt.alpha = 0.1;
          opt.tol = 1e-10;
          opt.max_iter = 2000;
          const auto res = lattice::solve_compatibility(L, g, omega, lam0, anchor, opt);
          detail::require(c, res.converged, "small-curvature regime: no convergence");
          bool monotone = true;
          for (std::size_t i = 0; i + 1 < res.functional_history.size(); ++i)
            if (res.functional_history[i + 1] >
                res.functional_history[i] + 1e-12 * std::abs(res.functional_history[i]))
              monotone = false;
          detail::require(c, monotone, "small-curvature regime: functional not monotone");
          detail::require(c,
                          res.final_functional < res.functional_history.front(),
                          "small-curvature regime: functional did not decrease");
          if (c.pass)
            c.details += "; small curvature: monotone, I " +
                         detail::fmt(res.functional_history.front()) + " -> " +
                         detail::fmt(res.final_functional);
        }

        /* strong obstruction: constant-curvature connection along e3 with
         * anchor e3*; the functional floor must match the curvature pairing */
        {
          lattice::Field omega(L.n, L.sites(), g.dim);
          for (long long s = 0; s < L.sites(); ++s) {
            omega.at(0, s)[0] = 1.0;
            omega.at(1, s)[1] = 1.0;
          }
          lattice::Field anchor = lattice::make_field(L, 1, g.dim, "constant:0,0,1");
          lattice::SolveOptions opt;
          opt.alpha = 0.1;
          opt.tol = 1e-10;
          opt.max_iter = 2000;
          const auto res = lattice::solve_compatibility(L, g, omega, anchor, anchor, opt);
          detail::require(c, res.final_functional > 1e-3,
                          "strong obstruction: functional floor missing (I = " +
                              detail::fmt(res.final_functional) + ")");
          const double obs =
              lattice::integrability_obstruction(L, g, omega, res.lambda).max_abs;
          detail::require(c, obs > 1e-2,
                          "strong obstruction: obstruction too small (" +
                              detail::fmt(obs) + ")");
          if (c.pass)
            c.details += "; obstruction floor: I = " + detail::fmt(res.final_functional) +
                         ", pairing " + detail::fmt(obs);
        }
      });
}

/* 12. Mesh-refinement orders of the two-form defect and the plaquette
 * commutator defect. */
inline Criterion criterion_12() {
  return detail::run_criterion(
      "AC12", "refinement order >= 1.0 (+-0.3) for two-form and plaquette defects", 0,
      [](Criterion& c) {
        const auto g = lattice::algebra_to_double(liealg::su2());
        const auto st = lattice::refinement_study(g, {8, 16, 32}, {0.8, -0.3, 0.5});
        detail::require(c, st.symplectic_slope >= 0.7,
                        "two-form defect slope " + detail::fmt(st.symplectic_slope));
        detail::require(c, st.frobenius_slope >= 0.7,
                        "plaquette defect slope " + detail::fmt(st.frobenius_slope));
        if (c.pass)
          c.details = "slopes: two-form " + detail::fmt(st.symplectic_slope) +
                      ", plaquette " + detail::fmt(st.frobenius_slope) +
                      " over N = 8,16,32";
      });
}

/* 13. Evolution: rk4 against the closed-form gauge rotation; exact
 * stationarity on zero input. */
inline Criterion criterion_13() {
  return detail::run_criterion(
      "AC13", "rk4 matches closed-form gauge rotation; zero input stationary", 0,
      [](Criterion& c) {
        const lattice::LatticeSpec L(2, 8);
        const auto g = lattice::algebra_to_double(liealg::su2());
        const std::vector<double> xi = {0.3, -0.2, 0.4};
        lattice::Field omega0 =
            lattice::make_field(L, L.n, g.dim, "random:seed=5:amp=0.5");
        lattice::Field xif = lattice::make_field(
            L, 1, g.dim, "constant:0.3,-0.2,0.4");
        lattice::EvolveOptions opt;
        opt.dt = 1e-3;
        opt.steps = 200;
        opt.scheme = "rk4";
        const auto res = lattice::evolve(L, g, omega0, xif, opt);
        detail::require(c, !res.blew_up, "trajectory flagged as blown up");

        /* closed form: d omega/dt = [omega, xi] = -ad_xi omega, so
         * omega(t) = expm(-t ad_xi) omega(0), sitewise */
        const double t = opt.dt * opt.steps;
        std::vector<double> A(9, 0.0);
        for (int k = 0; k < 3; ++k)
          for (int j = 0; j < 3; ++j) {
            double a = 0;
            for (int i = 0; i < 3; ++i) a += xi[i] * g.cc(i, j, k);
            A[k * 3 + j] = -t * a;
          }
        const auto E = lattice::dense_expm(A, 3);
        double max_err = 0, max_norm_drift = 0;
        for (int d = 0; d < L.n; ++d)
          for (long long s = 0; s < L.sites(); ++s) {
            const double* w0 = omega0.at(d, s);
            const double* wn = res.omega.at(d, s);
            double n0 = 0, n1 = 0;
            for (int k = 0; k < 3; ++k) {
              double ex = 0;
              for (int j = 0; j < 3; ++j) ex += E[k * 3 + j] * w0[j];
              max_err = std::max(max_err, std::abs(wn[k] - ex));
              n0 += w0[k] * w0[k];
              n1 += wn[k] * wn[k];
            }
            max_norm_drift =
                std::max(max_norm_drift, std::abs(std::sqrt(n1) - std::sqrt(n0)));
          }
        detail::require(c, max_err < opt.steps * 1e-8,
                        "per-step error " + detail::fmt(max_err / opt.steps));
        detail::require(c, max_norm_drift < 1e-10,
                        "pointwise norm drift " + detail::fmt(max_norm_drift));

        /* zero input: xi = 0, X = 0 must leave omega bitwise unchanged */
        lattice::Field xizero = lattice::make_field(L, 1, g.dim, "zero");
        const auto stat = lattice::evolve(L, g, omega0, xizero, opt);
        detail::require(c,
                        stat.omega.v.size() == omega0.v.size() &&
                            std::memcmp(stat.omega.v.data(), omega0.v.data(),
                                        omega0.v.size() * sizeof(double)) == 0,
                        "zero-input trajectory is not bitwise stationary");
        if (c.pass)
          c.details = "per-step error " + detail::fmt(max_err / opt.steps) +
                      ", zero input bitwise stationary";
      });
}

/* Fixed mini-pipeline through every report builder; criterion 14 renders
 * it twice and compares bytes. */
inline json determinism_probe() {
  json out;
  const LieAlgebra su2 = liealg::su2();
  out["algebra"] = report::structure_body(su2, liealg::check_structure(su2));

  derham::BaseModel base = derham::base_model("torus:2:3");
  auto K = specseq::build_double_complex(base.complex, specseq::ce_vertical(su2, 1),
                                         "probe");
  out["pages"] = report::pages_body("ce", 1, specseq::compute_pages(K), base.n);
  out["torsion"] = report::torsion_body(torsion::torsion_case1(base, su2, 4, "formal"));

  const lattice::LatticeSpec L(2, 4);
  const auto g = lattice::algebra_to_double(su2);
  lattice::Field omega = lattice::make_field(L, L.n, g.dim, "random:seed=7:amp=0.05");
  lattice::Field anchor = lattice::make_field(L, 1, g.dim, "constant:0,0,1");
  lattice::Field lam0 = lattice::make_field(L, 1, g.dim, "zero");
  lattice::SolveOptions sopt;
  sopt.alpha = 0.1;
  sopt.max_iter = 60;
  const auto sol = lattice::solve_compatibility(L, g, omega, lam0, anchor, sopt);
  out["solve"] = report::solve_body(sol);
  out["check"] = report::lattice_check_body(L, g, omega, sol.lambda, 1e-8, 100, 99);

  lattice::Field xif = lattice::make_field(L, 1, g.dim, "constant:0.2,0.1,-0.3");
  lattice::EvolveOptions eopt;
  eopt.dt = 1e-2;
  eopt.steps = 5;
  out["evolve"] = report::evolve_body("rk4", lattice::evolve(L, g, omega, xif, eopt));
  return out;
}

/* 14. Byte determinism of the full report path. */
inline Criterion criterion_14() {
  return detail::run_criterion(
      "AC14", "repeated runs with fixed seeds render byte-identical reports", 0,
      [](Criterion& c) {
        const json cfg = {{"command", "determinism_probe"}};
        const std::string a =
            report::canonical(report::envelope("selftest", cfg, determinism_probe(), 7));
        const std::string b =
            report::canonical(report::envelope("selftest", cfg, determinism_probe(), 7));
        detail::require(c, a == b, "two generations differ");
        if (c.pass)
          c.details = "two independent generations byte-identical (" +
                      std::to_string(a.size()) + " bytes)";
      });
}

struct SelftestResult {
  std::vector<Criterion> criteria;
  bool all_passed = true;
};

inline SelftestResult run_selftest() {
  SelftestResult res;
  res.criteria.push_back(criterion_1());
  res.criteria.push_back(criterion_2());
  res.criteria.push_back(criterion_3());
  res.criteria.push_back(criterion_4());
  res.criteria.push_back(criterion_5());
  auto [c6, c7] = criteria_6_7();
  res.criteria.push_back(std::move(c6));
  res.criteria.push_back(std::move(c7));
  res.criteria.push_back(criterion_8());
  res.criteria.push_back(criterion_9());
  res.criteria.push_back(criterion_10());
  res.criteria.push_back(criterion_11());
  res.criteria.push_back(criterion_12());
  res.criteria.push_back(criterion_13());
  res.criteria.push_back(criterion_14());
  for (const auto& c : res.criteria) res.all_passed = res.all_passed && c.pass;
  return res;
}

inline json selftest_body(const SelftestResult& res) {
  json arr = json::array();
  for (const auto& c : res.criteria)
    arr.push_back({{"id", c.id},
                   {"description", c.description},
                   {"pass", c.pass},
                   {"details", c.details}});
  return {{"criteria", arr}, {"all_passed", res.all_passed}};
}

}  // namespace spencer::selftest
