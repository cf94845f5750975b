// Command-line front end: one binary, one subcommand per run, one JSON
// report per run.  Exit codes: 0 success, 1 input error, 2 invariant or
// convergence failure.  $SPENCER_OUT_DIR sets the default report directory.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spencer/cli/run.hpp"

namespace {

using spencer::cli::RunOutput;
using spencer::report::json;

int execute(const json& cfg, const std::string& out_path_flag) {
  const RunOutput out = spencer::cli::run_command(cfg);
  const std::string path =
      out_path_flag.empty()
          ? spencer::report::default_out_dir() + "/" + out.kind + "_report.json"
          : out_path_flag;
  spencer::report::write_report(
      path, spencer::report::envelope(out.kind, cfg, out.body, out.seed));
  std::cout << out.summary << "report written to " << path << "\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic cohomology engine and floating-point lattice lab"};
  app.require_subcommand(1);
  app.fallthrough(); /* allow -o after the subcommand */
  std::string out_path;
  app.add_option("-o,--output", out_path,
                 "report file path (default: $SPENCER_OUT_DIR or ./<kind>_report.json)");

  json cfg;

  /* ---- algebra check ---- */
  auto* alg = app.add_subcommand("algebra", "structure-constant tools");
  alg->require_subcommand(1);
  auto* alg_check = alg->add_subcommand("check", "verify antisymmetry, Jacobi, Killing");
  std::string alg_preset, alg_file;
  auto* preset_opt =
      alg_check->add_option("--preset", alg_preset, "catalog algebra name");
  alg_check->add_option("--file", alg_file, "algebra JSON file")->excludes(preset_opt);
  alg_check->callback([&] {
    if (alg_preset.empty() && alg_file.empty())
      throw CLI::ValidationError("algebra check", "--preset or --file is required");
    std::string a = alg_preset.empty() ? alg_file : alg_preset;
    if (!alg_file.empty() && a.find('/') == std::string::npos &&
        a.find('.') == std::string::npos)
      a = "./" + a; /* force file-path routing for bare names */
    cfg = {{"command", "algebra_check"}, {"algebra", a}};
  });

  /* ---- cohomology ---- */
  auto* coh = app.add_subcommand("cohomology",
                                 "cochain cohomology of one coefficient weight");
  std::string coh_alg, coh_mode = "ce", coh_pairing;
  int coh_k = 0;
  coh->add_option("--algebra", coh_alg, "catalog name or file")->required();
  coh->add_option("--k", coh_k, "symmetric coefficient weight")->required();
  coh->add_option("--mode", coh_mode, "ce | spencer (default ce)");
  coh->add_option("--pairing", coh_pairing, "raw | killing_dual (spencer mode)");
  coh->callback([&] {
    cfg = {{"command", "cohomology"}, {"algebra", coh_alg}, {"k", coh_k},
           {"mode", coh_mode}};
    if (!coh_pairing.empty()) cfg["pairing"] = coh_pairing;
  });

  /* ---- spectral ---- */
  auto* spec = app.add_subcommand("spectral", "double-complex page engine");
  std::string sp_base, sp_alg, sp_vertical, sp_pairing;
  int sp_kmax = 0;
  spec->add_option("--base", sp_base, "base model preset or file")->required();
  spec->add_option("--algebra", sp_alg, "catalog name or file")->required();
  spec->add_option("--kmax", sp_kmax, "vertical weight cutoff")->required();
  spec->add_option("--vertical", sp_vertical, "ce | spencer")->required();
  spec->add_option("--pairing", sp_pairing, "raw | killing_dual (spencer vertical)");
  spec->callback([&] {
    cfg = {{"command", "spectral"}, {"base", sp_base}, {"algebra", sp_alg},
           {"kmax", sp_kmax}, {"vertical", sp_vertical}};
    if (!sp_pairing.empty()) cfg["pairing"] = sp_pairing;
  });

  /* ---- torsion ---- */
  auto* tor = app.add_subcommand("torsion", "correction-class counts in degree k");
  std::string to_base, to_alg, to_curv;
  int to_k = 0, to_kmax = -1;
  tor->add_option("--base", to_base, "base model preset or file")->required();
  tor->add_option("--algebra", to_alg, "catalog name or file")->required();
  tor->add_option("--k", to_k, "total degree")->required();
  tor->add_option("--curvature", to_curv, "formal | ring")->required();
  tor->add_option("--kmax", to_kmax, "page-route weight cutoff (default k/2)");
  tor->callback([&] {
    cfg = {{"command", "torsion"}, {"base", to_base}, {"algebra", to_alg}, {"k", to_k},
           {"curvature", to_curv}};
    if (to_kmax >= 0) cfg["kmax"] = to_kmax;
  });

  /* ---- lattice ---- */
  auto* lat = app.add_subcommand("lattice", "floating-point grid laboratory");
  lat->require_subcommand(1);
  std::string la_alg, la_omega, la_lambda0, la_anchor, la_lambda, la_xi, la_method,
      la_lambda_out, la_omega_out;
  int la_n = 2, la_N = 8, la_maxiter = -1, la_trials = -1, la_steps = 0;
  long long la_seed = -1;
  double la_alpha = 0, la_tol = -1, la_dt = 0;
  std::vector<double> la_X;

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--algebra", la_alg, "catalog name or file")->required();
    sub->add_option("--n", la_n, "grid dimension (1..4)")->required();
    sub->add_option("--N", la_N, "sites per direction (4..128)")->required();
    sub->add_option("--omega", la_omega,
                    "connection field: zero | random:seed=S:amp=A | constant:... | "
                    "file:path")
        ->required();
  };

  auto* solve = lat->add_subcommand("solve", "least-squares covector reconstruction");
  add_grid(solve);
  solve->add_option("--lambda0", la_lambda0, "start covector field (default zero)");
  solve->add_option("--anchor", la_anchor, "anchor covector field")->required();
  solve->add_option("--alpha", la_alpha, "anchor weight (>= 0)")->required();
  solve->add_option("--tol", la_tol, "relative residual target (default 1e-10)");
  solve->add_option("--maxiter", la_maxiter, "iteration cap (default 500)");
  solve->add_option("--lambda-out", la_lambda_out, "write solved covector field here");
  solve->callback([&] {
    cfg = {{"command", "lattice_solve"}, {"algebra", la_alg}, {"n", la_n}, {"N", la_N},
           {"omega", la_omega}, {"anchor", la_anchor}, {"alpha", la_alpha}};
    if (!la_lambda0.empty()) cfg["lambda0"] = la_lambda0;
    if (la_tol >= 0) cfg["tol"] = la_tol;
    if (la_maxiter >= 0) cfg["maxiter"] = la_maxiter;
    if (!la_lambda_out.empty()) cfg["lambda_out"] = la_lambda_out;
  });

  auto* check = lat->add_subcommand(
      "check", "residual, obstruction, two-form and plaquette defects");
  add_grid(check);
  check->add_option("--lambda", la_lambda, "covector field")->required();
  check->add_option("--tol", la_tol, "consistency trigger threshold (default 1e-8)");
  check->add_option("--trials", la_trials, "pairing-identity samples (default 1000)");
  check->add_option("--seed", la_seed, "pairing-identity RNG seed (default 1)");
  check->callback([&] {
    cfg = {{"command", "lattice_check"}, {"algebra", la_alg}, {"n", la_n}, {"N", la_N},
           {"omega", la_omega}, {"lambda", la_lambda}};
    if (la_tol >= 0) cfg["tol"] = la_tol;
    if (la_trials >= 0) cfg["trials"] = la_trials;
    if (la_seed >= 0) cfg["seed"] = la_seed;
  });

  auto* evolve = lat->add_subcommand("evolve", "connection flow integrator");
  add_grid(evolve);
  evolve->add_option("--xi", la_xi, "gauge-parameter field (default zero)");
  evolve->add_option("--X", la_X, "constant direction vector (default zeros)");
  evolve->add_option("--dt", la_dt, "time step")->required();
  evolve->add_option("--steps", la_steps, "step count")->required();
  evolve->add_option("--method", la_method, "euler | rk4 (default rk4)");
  evolve->add_option("--omega-out", la_omega_out, "write final connection field here");
  evolve->callback([&] {
    cfg = {{"command", "lattice_evolve"}, {"algebra", la_alg}, {"n", la_n}, {"N", la_N},
           {"omega", la_omega}, {"dt", la_dt}, {"steps", la_steps}};
    if (!la_xi.empty()) cfg["xi"] = la_xi;
    if (!la_X.empty()) cfg["X"] = la_X;
    if (!la_method.empty()) cfg["method"] = la_method;
    if (!la_omega_out.empty()) cfg["omega_out"] = la_omega_out;
  });

  /* ---- selftest ---- */
  auto* st = app.add_subcommand("selftest", "run the full acceptance-invariant suite");
  std::string replay_path;
  st->add_option("--replay", replay_path,
                 "re-validate and re-execute a previously written report");
  st->callback([&] { cfg = {{"command", "selftest"}}; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (!replay_path.empty()) {
      const auto r = spencer::cli::replay_report(replay_path);
      std::cout << "replay of " << replay_path << ": "
                << (r.match ? "byte-identical reproduction" : "MISMATCH") << "\n";
      if (!r.match) {
        std::cout << "regenerated report differs from the stored one; sizes "
                  << r.regenerated.size() << " vs " << r.original.size() << " bytes\n";
        return 2;
      }
      return 0;
    }
    return execute(cfg, out_path);
  } catch (const spencer::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const spencer::invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
