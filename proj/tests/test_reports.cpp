#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "spencer/cli/run.hpp"
#include "spencer/report/builders.hpp"
#include "spencer/report/report.hpp"
#include "spencer/report/schemas.hpp"

using namespace spencer;
using report::json;
using Catch::Matchers::ContainsSubstring;

static std::filesystem::path schema_dir() {
  return std::filesystem::path(__FILE__).parent_path().parent_path() / "data" /
         "schemas";
}

TEST_CASE("shipped schema files mirror the embedded table") {
  const json& all = report::shipped_schemas();
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(schema_dir())) {
    if (entry.path().extension() == ".json") ++files;
  }
  CHECK(files == all.size());
  for (const auto& [kind, schema] : all.items()) {
    const auto path = schema_dir() / (kind + ".json");
    REQUIRE(std::filesystem::exists(path));
    std::ifstream in(path);
    json on_disk;
    in >> on_disk;
    CHECK(on_disk == schema);
  }
}

TEST_CASE("envelope validation") {
  json rep = report::envelope("algebra_check", json::object(), json::object(), 7);
  CHECK(rep["artifact_version"] == kArtifactVersion);
  CHECK(rep["seed"] == 7);
  CHECK_NOTHROW(report::validate_envelope(rep));
  CHECK_NOTHROW(report::validate_envelope(rep, "algebra_check"));
  CHECK_THROWS_AS(report::validate_envelope(rep, "torsion"), input_error);

  json noseed = rep;
  noseed.erase("seed");
  CHECK_THROWS_WITH(report::validate_envelope(noseed), ContainsSubstring("seed"));
  json floatseed = rep;
  floatseed["seed"] = 3.5;
  CHECK_THROWS_WITH(report::validate_envelope(floatseed),
                    ContainsSubstring("must be integer"));
  json notobj = json::array();
  CHECK_THROWS_AS(report::validate_envelope(notobj), input_error);

  json unknown = rep;
  unknown["kind"] = "surprise";
  CHECK_THROWS_WITH(report::validate_report(unknown),
                    ContainsSubstring("no schema for kind"));
}

TEST_CASE("canonical serialization is key-order independent and stable") {
  json a;
  a["zeta"] = 1;
  a["alpha"] = json::object();
  a["alpha"]["y"] = 2.5;
  a["alpha"]["x"] = true;
  json b;
  b["alpha"]["x"] = true;
  b["alpha"]["y"] = 2.5;
  b["zeta"] = 1;
  CHECK(report::canonical(a) == report::canonical(b));
  CHECK(report::canonical(a).back() == '\n');
  // round trip through the canonical bytes is the identity
  CHECK(json::parse(report::canonical(a)) == a);
}

TEST_CASE("report file io error paths") {
  json rep = report::envelope("algebra_check", json::object(), json::object());
  CHECK_THROWS_AS(report::write_report("/no_such_dir/rep.json", rep), input_error);
  CHECK_THROWS_AS(report::read_report("/tmp/missing_report_xyz.json"), input_error);
  const std::string path = "/tmp/report_io_test.json";
  {
    std::ofstream out(path);
    out << "][";
  }
  CHECK_THROWS_AS(report::read_report(path), input_error);
  report::write_report(path, rep);
  CHECK(report::read_report(path) == rep);
}

TEST_CASE("default out dir follows the environment") {
  ::setenv("SPENCER_OUT_DIR", "/tmp/spencer_runs", 1);
  CHECK(report::default_out_dir() == "/tmp/spencer_runs");
  ::setenv("SPENCER_OUT_DIR", "", 1);
  CHECK(report::default_out_dir() == ".");
  ::unsetenv("SPENCER_OUT_DIR");
  CHECK(report::default_out_dir() == ".");
}

TEST_CASE("algebra check command") {
  json cfg = {{"command", "algebra_check"}, {"algebra", "su2"}};
  auto out = cli::run_command(cfg);
  CHECK(out.kind == "algebra_check");
  CHECK(out.exit_code == 0);
  CHECK(out.body["dim"] == 3);
  CHECK(out.body["killing_rank"] == 3);
  CHECK(out.body["killing_nondegenerate"] == true);
  CHECK(out.body["antisymmetry_violations"] == 0);
  CHECK_THAT(out.summary, ContainsSubstring("killing rank"));
  CHECK_NOTHROW(report::validate_report(
      report::envelope(out.kind, cfg, out.body, out.seed)));

  json heis = {{"command", "algebra_check"}, {"algebra", "heisenberg3"}};
  auto hout = cli::run_command(heis);
  CHECK(hout.exit_code == 0);
  CHECK(hout.body["killing_rank"] == 0);
  CHECK(hout.body["killing_nondegenerate"] == false);
}

TEST_CASE("cohomology command") {
  json cfg = {{"command", "cohomology"}, {"algebra", "su2"}, {"k", 0}, {"mode", "ce"}};
  auto out = cli::run_command(cfg);
  CHECK(out.exit_code == 0);
  CHECK(out.body["H"] == json::array({1, 0, 0, 1}));
  CHECK(out.body["euler"] == 0);
  CHECK_NOTHROW(report::validate_report(
      report::envelope(out.kind, cfg, out.body, out.seed)));

  json sp = {{"command", "cohomology"},
             {"algebra", "su2"},
             {"k", 2},
             {"mode", "spencer"},
             {"pairing", "killing_dual"}};
  auto sout = cli::run_command(sp);
  CHECK(sout.body["mode"] == "spencer");
  // killing-dual vertical differential vanishes identically on su2, so
  // cohomology equals the cochain dimensions dim S^q g* = 1, 3, 6
  CHECK(sout.body["H"] == json::array({1, 3, 6}));
  CHECK(sout.body["euler"] == 4);

  json bad = {{"command", "cohomology"}, {"algebra", "su2"}, {"k", -1}, {"mode", "ce"}};
  CHECK_THROWS_AS(cli::run_command(bad), input_error);
  json badmode = {{"command", "cohomology"}, {"algebra", "su2"}, {"k", 0},
                  {"mode", "dolbeault"}};
  CHECK_THROWS_WITH(cli::run_command(badmode), ContainsSubstring("ce|spencer"));
}

TEST_CASE("spectral command") {
  json cfg = {{"command", "spectral"},
              {"base", "torus:2:3"},
              {"algebra", "su2"},
              {"kmax", 1},
              {"vertical", "ce"}};
  auto out = cli::run_command(cfg);
  CHECK(out.exit_code == 0);
  CHECK(out.body["N"] == 2);
  CHECK(out.body["bounds"]["N_le_n_plus_1"] == true);
  CHECK(out.body["bounds"]["E2_degenerate"] == true);
  REQUIRE(out.body["runs"].size() == 2);
  CHECK(out.body["runs"][0]["total_cohomology"] ==
        json::array({1, 2, 1, 1, 2, 1}));
  CHECK(out.body["runs"][1]["total_cohomology"] ==
        json::array({0, 0, 0, 0, 0, 0}));
  CHECK_NOTHROW(report::validate_report(
      report::envelope(out.kind, cfg, out.body, out.seed)));
}

TEST_CASE("torsion command") {
  json cfg = {{"command", "torsion"},
              {"base", "formal:1,2,1"},
              {"algebra", "su2"},
              {"k", 4},
              {"curvature", "formal"},
              {"kmax", 2}};
  auto out = cli::run_command(cfg);
  CHECK(out.exit_code == 0);
  CHECK(out.body["total_dim"] == 1);
  CHECK(out.body["proof_form_total"] == 2);
  CHECK(out.body["forms_agree"] == false);
  CHECK(out.body["page_route_total"] == 4);
  CHECK(out.body["classical_matches_page"] == true);
  REQUIRE(out.body["page_slices"].size() == 3);
  CHECK(out.body["page_slices"][0]["contribution"] == 2);
  CHECK(out.body["page_slices"][1]["contribution"] == 0);
  CHECK(out.body["page_slices"][2]["contribution"] == 2);
  CHECK_THAT(out.summary, ContainsSubstring("FORMS DISAGREE"));
  CHECK_NOTHROW(report::validate_report(
      report::envelope(out.kind, cfg, out.body, out.seed)));
}

TEST_CASE("lattice solve command") {
  const std::string lam_path = "/tmp/report_test_lambda_out.json";
  std::filesystem::remove(lam_path);
  json cfg = {{"command", "lattice_solve"}, {"algebra", "su2"},
              {"n", 2},           {"N", 4},
              {"omega", "zero"},  {"anchor", "constant:0,0,1"},
              {"alpha", 1.0},     {"lambda_out", lam_path}};
  auto out = cli::run_command(cfg);
  CHECK(out.exit_code == 0);
  CHECK(out.body["converged"] == true);
  CHECK(out.seed == 0);
  CHECK_NOTHROW(report::validate_report(
      report::envelope(out.kind, cfg, out.body, out.seed)));
  // solution file is a loadable covector field that matches the anchor
  lattice::LatticeSpec L(2, 4);
  lattice::Field lam = lattice::load_field_file(lam_path, L, 1, 3, "covector");
  for (long long s = 0; s < L.sites(); ++s) {
    CHECK(std::abs(lam.at(0, s)[2] - 1.0) < 1e-8);
  }

  json seeded = cfg;
  seeded.erase("lambda_out");
  seeded["omega"] = "random:seed=77:amp=0.05";
  auto sout = cli::run_command(seeded);
  CHECK(sout.seed == 77);
}

TEST_CASE("lattice check command") {
  json cfg = {{"command", "lattice_check"},
              {"algebra", "su2"},
              {"n", 2},
              {"N", 4},
              {"omega", "random:seed=3:amp=0.2"},
              {"lambda", "constant:0,0,1"},
              {"trials", 50},
              {"seed", 7}};
  auto out = cli::run_command(cfg);
  CHECK(out.exit_code == 0);
  CHECK(out.seed == 7);
  CHECK(out.body["identity_samples"][0]["trials"] == 50);
  CHECK(out.body["identity_samples"][0]["max_abs"].get<double>() < 1e-12);
  CHECK(out.body["symplectic_identity_gap"].get<double>() < 1e-10);
  CHECK(out.body["consistency"].contains("triggered"));
  CHECK_NOTHROW(report::validate_report(
      report::envelope(out.kind, cfg, out.body, out.seed)));

  json bad = cfg;
  bad["trials"] = 0;
  CHECK_THROWS_WITH(cli::run_command(bad), ContainsSubstring("trials"));
}

TEST_CASE("lattice evolve command") {
  const std::string om_path = "/tmp/report_test_omega_out.json";
  std::filesystem::remove(om_path);
  json cfg = {{"command", "lattice_evolve"},
              {"algebra", "su2"},
              {"n", 2},
              {"N", 4},
              {"omega", "random:seed=5:amp=0.1"},
              {"dt", 0.01},
              {"steps", 3},
              {"X", json::array({0.1, 0.2})},
              {"omega_out", om_path}};
  auto out = cli::run_command(cfg);
  CHECK(out.exit_code == 0);
  CHECK(out.seed == 5);
  CHECK(out.body["scheme"] == "rk4");
  CHECK(out.body["steps_done"] == 3);
  CHECK(out.body["blew_up"] == false);
  CHECK(out.body["max_norm_history"].size() == 3);
  CHECK_NOTHROW(report::validate_report(
      report::envelope(out.kind, cfg, out.body, out.seed)));
  lattice::LatticeSpec L(2, 4);
  CHECK_NOTHROW(lattice::load_field_file(om_path, L, 2, 3, "connection"));

  json badX = cfg;
  badX["X"] = 5;
  CHECK_THROWS_WITH(cli::run_command(badX), ContainsSubstring("array"));
  json badsteps = cfg;
  badsteps["steps"] = 0;
  CHECK_THROWS_WITH(cli::run_command(badsteps), ContainsSubstring("steps"));
}

TEST_CASE("config validation names the offending parameter") {
  json extra = {{"command", "algebra_check"}, {"algebra", "su2"}, {"bogus", 1}};
  CHECK_THROWS_WITH(cli::run_command(extra),
                    ContainsSubstring("unknown config key 'bogus'"));
  json missing = {{"command", "cohomology"}, {"algebra", "su2"}, {"mode", "ce"}};
  CHECK_THROWS_WITH(cli::run_command(missing),
                    ContainsSubstring("missing required parameter 'k'"));
  json wrongtype = {{"command", "cohomology"}, {"algebra", "su2"}, {"k", "two"},
                    {"mode", "ce"}};
  CHECK_THROWS_WITH(cli::run_command(wrongtype),
                    ContainsSubstring("'k' must be an integer"));
  json nocmd = json::object();
  CHECK_THROWS_WITH(cli::run_command(nocmd),
                    ContainsSubstring("missing required parameter 'command'"));
  json badcmd = {{"command", "frobnicate"}};
  CHECK_THROWS_WITH(cli::run_command(badcmd),
                    ContainsSubstring("unknown command"));
  json notobj = json::array();
  CHECK_THROWS_AS(cli::run_command(notobj), input_error);
}

TEST_CASE("replay reproduces reports byte for byte") {
  const std::string path = "/tmp/report_replay_test.json";
  json cfg = {{"command", "lattice_check"},
              {"algebra", "su2"},
              {"n", 2},
              {"N", 4},
              {"omega", "random:seed=9:amp=0.3"},
              {"lambda", "random:seed=10:amp=1"},
              {"trials", 40},
              {"seed", 12}};
  auto out = cli::run_command(cfg);
  json rep = report::envelope(out.kind, cfg, out.body, out.seed);
  report::write_report(path, rep);

  auto rr = cli::replay_report(path);
  CHECK(rr.match);
  CHECK(rr.original == rr.regenerated);

  SECTION("tampered numbers no longer match") {
    json bad = rep;
    bad["body"]["obstruction_max"] = 0.0;
    report::write_report(path, bad);
    auto rb = cli::replay_report(path);
    CHECK_FALSE(rb.match);
  }

  SECTION("kind/config disagreement is an error, not a mismatch") {
    json bad = rep;
    bad["kind"] = "lattice_solve";
    report::write_report(path, bad);
    CHECK_THROWS_AS(cli::replay_report(path), input_error);
  }

  SECTION("reports missing envelope keys are rejected") {
    json bad = rep;
    bad.erase("config");
    report::write_report(path, bad);
    CHECK_THROWS_WITH(cli::replay_report(path), ContainsSubstring("config"));
  }
}

TEST_CASE("replay of a cheap exact command") {
  const std::string path = "/tmp/report_replay_algebra.json";
  json cfg = {{"command", "algebra_check"}, {"algebra", "sl3"}};
  auto out = cli::run_command(cfg);
  report::write_report(path, report::envelope(out.kind, cfg, out.body, out.seed));
  auto rr = cli::replay_report(path);
  CHECK(rr.match);
}
