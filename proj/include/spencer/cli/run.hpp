#pragma once

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
#include "spencer/report/schemas.hpp"
#include "spencer/selftest/criteria.hpp"
#include "spencer/specseq/double_complex.hpp"
#include "spencer/specseq/pages.hpp"

namespace spencer::cli {

using report::json;

/* One executed command: the report kind/body plus console summary.
 * Everything needed to re-run lives in the config, so replays re-execute
 * from the embedded config and compare bytes. */
struct RunOutput {
  std::string kind;
  json body;
  long long seed = 0;
  int exit_code = 0; /* 0 ok, 2 invariant/convergence failure */
  std::string summary;
};

namespace detail {

inline void allow_keys(const json& cfg, const std::vector<std::string>& keys) {
  for (const auto& [k, v] : cfg.items()) {
    bool ok = false;
    for (const auto& a : keys) ok = ok || (k == a);
    if (!ok) throw input_error("unknown config key '" + k + "'");
  }
}

inline const json& require_key(const json& cfg, const std::string& key) {
  if (!cfg.contains(key)) throw input_error("missing required parameter '" + key + "'");
  return cfg.at(key);
}

inline std::string str_at(const json& cfg, const std::string& key) {
  const json& v = require_key(cfg, key);
  if (!v.is_string()) throw input_error("parameter '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::string str_or(const json& cfg, const std::string& key,
                          const std::string& dflt) {
  return cfg.contains(key) ? str_at(cfg, key) : dflt;
}

inline long long int_at(const json& cfg, const std::string& key) {
  const json& v = require_key(cfg, key);
  if (!v.is_number_integer()) throw input_error("parameter '" + key + "' must be an integer");
  return v.get<long long>();
}

inline long long int_or(const json& cfg, const std::string& key, long long dflt) {
  return cfg.contains(key) ? int_at(cfg, key) : dflt;
}

inline double num_at(const json& cfg, const std::string& key) {
  const json& v = require_key(cfg, key);
  if (!v.is_number()) throw input_error("parameter '" + key + "' must be a number");
  return v.get<double>();
}

inline double num_or(const json& cfg, const std::string& key, double dflt) {
  return cfg.contains(key) ? num_at(cfg, key) : dflt;
}

inline long long seed_of_spec(const std::string& spec) {
  if (spec.rfind("random:seed=", 0) != 0) return 0;
  const std::string rest = spec.substr(12);
  const auto cut = rest.find(':');
  try {
    return std::stoll(rest.substr(0, cut));
  } catch (const std::exception&) {
    return 0;
  }
}

inline lattice::Field field_from_spec(const lattice::LatticeSpec& L, int comps, int m,
                                      const std::string& spec, const std::string& kind) {
  if (spec.rfind("file:", 0) == 0)
    return lattice::load_field_file(spec.substr(5), L, comps, m, kind);
  return lattice::make_field(L, comps, m, spec);
}

inline lattice::LatticeSpec lattice_from(const json& cfg) {
  return lattice::LatticeSpec(static_cast<int>(int_at(cfg, "n")),
                              static_cast<int>(int_at(cfg, "N")));
}

}  // namespace detail

inline RunOutput run_algebra_check(const json& cfg) {
  detail::allow_keys(cfg, {"command", "algebra"});
  const liealg::LieAlgebra g = liealg::catalog(detail::str_at(cfg, "algebra"));
  const auto rep = liealg::check_structure(g);
  RunOutput out;
  out.kind = "algebra_check";
  out.body = report::structure_body(g, rep);
  out.exit_code = rep.ok() ? 0 : 2;
  std::ostringstream os;
  os << "algebra " << g.name << "  dim " << g.dim << "\n"
     << "  antisymmetry  " << (rep.antisymmetry_ok ? "ok" : "VIOLATED") << "\n"
     << "  jacobi        " << (rep.jacobi_ok ? "ok" : "VIOLATED") << "\n"
     << "  killing rank  " << rep.killing_rank << "/" << g.dim
     << (rep.killing_rank == g.dim ? " (nondegenerate)" : "") << "\n";
  out.summary = os.str();
  return out;
}

inline RunOutput run_cohomology(const json& cfg) {
  detail::allow_keys(cfg, {"command", "algebra", "k", "mode", "pairing"});
  const liealg::LieAlgebra g = liealg::catalog(detail::str_at(cfg, "algebra"));
  const int k = static_cast<int>(detail::int_at(cfg, "k"));
  const std::string mode = detail::str_at(cfg, "mode");
  if (k < 0) throw input_error("parameter 'k' must be >= 0");
  complex::CohomologyResult res;
  if (mode == "ce") {
    res = complex::cohomology(complex::ce_complex(g, complex::sym_adjoint_module(g, k)));
  } else if (mode == "spencer") {
    if (k < 1) throw input_error("parameter 'k' must be >= 1 in spencer mode");
    const auto pairing = sym::diff_mode_from_string(
        detail::str_or(cfg, "pairing", "killing_dual"));
    res = complex::cohomology(specseq::spencer_vertical(g, k, pairing));
  } else {
    throw input_error("parameter 'mode' must be ce|spencer, got '" + mode + "'");
  }
  RunOutput out;
  out.kind = "cohomology";
  out.body = report::cohomology_body(mode, k, res);
  std::ostringstream os;
  os << "cohomology of " << g.name << " (" << mode << ", k = " << k << ")\n  dims:";
  for (std::size_t q = 0; q < res.betti.size(); ++q)
    os << "  H^" << q << " = " << res.betti[q];
  os << "\n  euler " << res.euler << "\n";
  out.summary = os.str();
  return out;
}

inline RunOutput run_spectral(const json& cfg) {
  detail::allow_keys(cfg, {"command", "base", "algebra", "kmax", "vertical", "pairing"});
  const derham::BaseModel base = derham::base_model(detail::str_at(cfg, "base"));
  const liealg::LieAlgebra g = liealg::catalog(detail::str_at(cfg, "algebra"));
  const int kmax = static_cast<int>(detail::int_at(cfg, "kmax"));
  const std::string vertical = detail::str_at(cfg, "vertical");
  const auto pairing =
      sym::diff_mode_from_string(detail::str_or(cfg, "pairing", "killing_dual"));
  const auto build = specseq::build_spencer_double(base, g, kmax, vertical, pairing);

  json runs = json::array();
  int N = 0;
  bool bound_ok = true, degenerate = true;
  for (std::size_t i = 0; i < build.slices.size(); ++i) {
    const auto pages = specseq::compute_pages(build.slices[i]);
    json rb = report::pages_body(vertical, build.ks[i], pages, base.n);
    N = std::max(N, pages.degeneration_page);
    bound_ok = bound_ok && rb["bounds"]["N_le_n_plus_1"].get<bool>();
    degenerate = degenerate && rb["bounds"]["E2_degenerate"].get<bool>();
    runs.push_back(std::move(rb));
  }
  RunOutput out;
  out.kind = "spectral";
  out.body = {{"mode", vertical},
              {"kmax", kmax},
              {"base", base.spec},
              {"algebra", g.name},
              {"runs", runs},
              {"N", N},
              {"bounds", {{"N_le_n_plus_1", bound_ok}, {"E2_degenerate", degenerate}}}};
  std::ostringstream os;
  os << "spectral " << base.spec << " (x) " << g.name << "  vertical " << vertical
     << "  kmax " << kmax << "\n  stable index N = " << N << "  (bound N <= n+1 "
     << (bound_ok ? "holds" : "FAILS") << ", E_2 degeneration "
     << (degenerate ? "holds" : "FAILS") << ")\n";
  for (const auto& rb : runs) {
    os << "  k = " << rb["k"].get<int>() << "  total cohomology:";
    for (const auto& v : rb["total_cohomology"]) os << " " << v.get<int>();
    os << "\n";
  }
  out.summary = os.str();
  return out;
}

inline RunOutput run_torsion(const json& cfg) {
  detail::allow_keys(cfg, {"command", "base", "algebra", "k", "curvature", "kmax"});
  const derham::BaseModel base = derham::base_model(detail::str_at(cfg, "base"));
  const liealg::LieAlgebra g = liealg::catalog(detail::str_at(cfg, "algebra"));
  const int k = static_cast<int>(detail::int_at(cfg, "k"));
  const std::string mode = detail::str_at(cfg, "curvature");
  const int kmax = static_cast<int>(detail::int_or(cfg, "kmax", k / 2));
  const auto run = torsion::torsion_run(base, g, k, kmax, mode);
  RunOutput out;
  out.kind = "torsion";
  out.body = report::torsion_run_body(run);
  std::ostringstream os;
  os << "torsion " << base.spec << " / " << g.name << "  k = " << k << "  mode " << mode
     << "\n  total_dim " << run.case1.total_dim << "  classical " << run.case1.classical_dim
     << "  proof-form " << run.case1.proof_form_total
     << (run.case1.forms_agree ? " (forms agree)" : " (FORMS DISAGREE, both reported)")
     << "\n  page-route total " << run.case2_total << " over weight slices 0.." << kmax
     << "\n";
  out.summary = os.str();
  return out;
}

inline RunOutput run_lattice_solve(const json& cfg) {
  detail::allow_keys(cfg, {"command", "algebra", "n", "N", "omega", "lambda0", "anchor",
                           "alpha", "tol", "maxiter", "lambda_out"});
  const lattice::LatticeSpec L = detail::lattice_from(cfg);
  const auto g = lattice::algebra_to_double(liealg::catalog(detail::str_at(cfg, "algebra")));
  const std::string omega_spec = detail::str_at(cfg, "omega");
  lattice::Field omega = detail::field_from_spec(L, L.n, g.dim, omega_spec, "connection");
  lattice::Field lam0 = detail::field_from_spec(
      L, 1, g.dim, detail::str_or(cfg, "lambda0", "zero"), "covector");
  lattice::Field anchor =
      detail::field_from_spec(L, 1, g.dim, detail::str_at(cfg, "anchor"), "covector");
  lattice::SolveOptions opt;
  opt.alpha = detail::num_at(cfg, "alpha");
  opt.tol = detail::num_or(cfg, "tol", 1e-10);
  opt.max_iter = static_cast<int>(detail::int_or(cfg, "maxiter", 500));
  const auto res = lattice::solve_compatibility(L, g, omega, lam0, anchor, opt);
  if (cfg.contains("lambda_out")) {
    std::ofstream f(detail::str_at(cfg, "lambda_out"));
    if (!f) throw input_error("parameter 'lambda_out': cannot open for writing");
    f << lattice::field_to_json(L, res.lambda, "covector").dump(2) << "\n";
  }
  RunOutput out;
  out.kind = "lattice_solve";
  out.body = report::solve_body(res);
  out.seed = detail::seed_of_spec(omega_spec);
  out.exit_code = res.converged ? 0 : 2;
  std::ostringstream os;
  os << "lattice solve  " << L.n << "d grid N = " << L.N << "  algebra " << g.name
     << "  alpha " << opt.alpha << "\n  " << (res.converged ? "converged" : "NOT CONVERGED")
     << " after " << res.iterations << " iterations, relative residual "
     << res.final_residual << "\n  functional " << res.functional_history.front() << " -> "
     << res.final_functional << "\n";
  out.summary = os.str();
  return out;
}

inline RunOutput run_lattice_check(const json& cfg) {
  detail::allow_keys(cfg,
                     {"command", "algebra", "n", "N", "omega", "lambda", "tol", "trials",
                      "seed"});
  const lattice::LatticeSpec L = detail::lattice_from(cfg);
  const auto g = lattice::algebra_to_double(liealg::catalog(detail::str_at(cfg, "algebra")));
  const std::string omega_spec = detail::str_at(cfg, "omega");
  lattice::Field omega = detail::field_from_spec(L, L.n, g.dim, omega_spec, "connection");
  lattice::Field lambda =
      detail::field_from_spec(L, 1, g.dim, detail::str_at(cfg, "lambda"), "covector");
  const double tol = detail::num_or(cfg, "tol", 1e-8);
  const int trials = static_cast<int>(detail::int_or(cfg, "trials", 1000));
  const long long seed = detail::int_or(cfg, "seed", 1);
  if (trials < 1) throw input_error("parameter 'trials' must be >= 1");
  RunOutput out;
  out.kind = "lattice_check";
  out.body = report::lattice_check_body(L, g, omega, lambda, tol, trials,
                                        static_cast<std::uint64_t>(seed));
  out.seed = seed;
  const auto& cons = out.body["consistency"];
  out.exit_code =
      (cons["triggered"].get<bool>() && !cons["holds"].get<bool>()) ? 2 : 0;
  std::ostringstream os;
  os << "lattice check  " << L.n << "d grid N = " << L.N << "  algebra " << g.name << "\n"
     << "  cartan residual max   " << out.body["cartan_residual_max"].get<double>() << "\n"
     << "  obstruction max       " << out.body["obstruction_max"].get<double>() << "\n"
     << "  two-form defect max   " << out.body["symplectic_defect_max"].get<double>() << "\n"
     << "  plaquette defect max  " << out.body["frobenius_defect_max"].get<double>() << "\n"
     << "  pairing identity max  "
     << out.body["identity_samples"][0]["max_abs"].get<double>() << "  (" << trials
     << " trials)\n"
     << "  consistency condition "
     << (cons["triggered"].get<bool>() ? (cons["holds"].get<bool>() ? "holds" : "FAILS")
                                       : "not triggered")
     << "\n";
  out.summary = os.str();
  return out;
}

inline RunOutput run_lattice_evolve(const json& cfg) {
  detail::allow_keys(cfg, {"command", "algebra", "n", "N", "omega", "xi", "X", "dt",
                           "steps", "method", "omega_out"});
  const lattice::LatticeSpec L = detail::lattice_from(cfg);
  const auto g = lattice::algebra_to_double(liealg::catalog(detail::str_at(cfg, "algebra")));
  const std::string omega_spec = detail::str_at(cfg, "omega");
  lattice::Field omega = detail::field_from_spec(L, L.n, g.dim, omega_spec, "connection");
  lattice::Field xi =
      detail::field_from_spec(L, 1, g.dim, detail::str_or(cfg, "xi", "zero"), "parameter");
  lattice::EvolveOptions opt;
  opt.dt = detail::num_at(cfg, "dt");
  opt.steps = static_cast<int>(detail::int_at(cfg, "steps"));
  opt.scheme = detail::str_or(cfg, "method", "rk4");
  if (opt.steps < 1) throw input_error("parameter 'steps' must be >= 1");
  if (cfg.contains("X")) {
    if (!cfg["X"].is_array())
      throw input_error("parameter 'X' must be an array of numbers");
    for (const auto& v : cfg["X"]) opt.X.push_back(v.get<double>());
  }
  const auto res = lattice::evolve(L, g, omega, xi, opt);
  if (cfg.contains("omega_out")) {
    std::ofstream f(detail::str_at(cfg, "omega_out"));
    if (!f) throw input_error("parameter 'omega_out': cannot open for writing");
    f << lattice::field_to_json(L, res.omega, "connection").dump(2) << "\n";
  }
  RunOutput out;
  out.kind = "lattice_evolve";
  out.body = report::evolve_body(opt.scheme, res);
  out.seed = detail::seed_of_spec(omega_spec);
  out.exit_code = res.blew_up ? 2 : 0;
  std::ostringstream os;
  os << "lattice evolve  " << L.n << "d grid N = " << L.N << "  " << opt.scheme
     << "  dt " << opt.dt << "  steps " << opt.steps << "\n  "
     << (res.blew_up ? "BLEW UP at step " + std::to_string(res.blowup_step)
                     : "completed " + std::to_string(res.steps_done) + " steps")
     << ", final max |omega| = " << res.omega.max_abs() << "\n";
  out.summary = os.str();
  return out;
}

inline RunOutput run_selftest_cmd(const json& cfg) {
  detail::allow_keys(cfg, {"command"});
  const auto res = selftest::run_selftest();
  RunOutput out;
  out.kind = "selftest";
  out.body = selftest::selftest_body(res);
  out.seed = 424242; /* the fixed seed used by the sampled criteria */
  out.exit_code = res.all_passed ? 0 : 2;
  std::ostringstream os;
  for (const auto& c : res.criteria)
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.id << "  " << c.description
       << "\n";
  os << (res.all_passed ? "all criteria passed" : "CRITERIA FAILED") << "\n";
  out.summary = os.str();
  return out;
}

/* Dispatch on config["command"].  Every command validates its own keys,
 * so replayed configs go through exactly the same checks as fresh ones. */
inline RunOutput run_command(const json& cfg) {
  if (!cfg.is_object()) throw input_error("config must be a JSON object");
  const std::string cmd = detail::str_at(cfg, "command");
  if (cmd == "algebra_check") return run_algebra_check(cfg);
  if (cmd == "cohomology") return run_cohomology(cfg);
  if (cmd == "spectral") return run_spectral(cfg);
  if (cmd == "torsion") return run_torsion(cfg);
  if (cmd == "lattice_solve") return run_lattice_solve(cfg);
  if (cmd == "lattice_check") return run_lattice_check(cfg);
  if (cmd == "lattice_evolve") return run_lattice_evolve(cfg);
  if (cmd == "selftest") return run_selftest_cmd(cfg);
  throw input_error("unknown command '" + cmd + "'");
}

/* Replay: re-read a report, validate it against the shipped schema, then
 * re-execute its embedded config and compare canonical bytes. */
struct ReplayResult {
  bool match = false;
  std::string regenerated;
  std::string original;
};

inline ReplayResult replay_report(const std::string& path) {
  const json rep = report::read_report(path);
  report::validate_report(rep);
  const RunOutput out = run_command(rep.at("config"));
  if (out.kind != rep.at("kind").get<std::string>())
    throw input_error("replay: config regenerates kind '" + out.kind +
                      "', report says '" + rep.at("kind").get<std::string>() + "'");
  ReplayResult r;
  r.original = report::canonical(rep);
  r.regenerated =
      report::canonical(report::envelope(out.kind, rep.at("config"), out.body, out.seed));
  r.match = (r.original == r.regenerated);
  return r;
}

}  // namespace spencer::cli
