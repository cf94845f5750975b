#pragma once

#include "spencer/report/report.hpp"

namespace spencer::report {

/* Single source of the report schemas.  The files under data/schemas/
 * are generated from this table (see tools) and a test pins them equal,
 * so validation never depends on locating files at run time. */
inline const json& shipped_schemas() {
  static const json envelope = {
      {"artifact_version", "string"}, {"kind", "string"}, {"config", "object"},
      {"seed", "integer"},            {"body", "object"},
  };
  static const json schemas = [] {
    json s;
    auto add = [&s](const char* kind, json body) {
      s[kind] = {{"kind", kind}, {"required", envelope}, {"body_required", body}};
    };
    add("algebra_check", {{"algebra", "string"},
                          {"dim", "integer"},
                          {"antisymmetry_violations", "integer"},
                          {"jacobi_violations", "integer"},
                          {"killing_rank", "integer"},
                          {"killing_nondegenerate", "boolean"}});
    add("cohomology",
        {{"mode", "string"}, {"k", "integer"}, {"H", "array"}, {"euler", "integer"}});
    add("spectral", {{"mode", "string"},
                     {"kmax", "integer"},
                     {"runs", "array"},
                     {"N", "integer"},
                     {"bounds", "object"}});
    add("torsion", {{"k", "integer"},
                    {"mode", "string"},
                    {"terms", "array"},
                    {"total_dim", "integer"},
                    {"classical_dim", "integer"},
                    {"proof_form_total", "integer"},
                    {"forms_agree", "boolean"},
                    {"weight_decomposition", "object"}});
    add("lattice_solve", {{"converged", "boolean"},
                          {"iterations", "integer"},
                          {"final_residual", "number"},
                          {"final_functional", "number"},
                          {"functional_history", "array"}});
    add("lattice_check", {{"cartan_residual_max", "number"},
                          {"obstruction_max", "number"},
                          {"symplectic_defect_max", "number"},
                          {"frobenius_defect_max", "number"},
                          {"identity_samples", "array"},
                          {"consistency", "object"}});
    add("lattice_evolve", {{"scheme", "string"},
                           {"steps_done", "integer"},
                           {"blew_up", "boolean"},
                           {"blowup_step", "integer"},
                           {"max_norm_history", "array"},
                           {"curvature_norm_history", "array"}});
    add("selftest", {{"criteria", "array"}, {"all_passed", "boolean"}});
    return s;
  }();
  return schemas;
}

inline void validate_report(const json& rep) {
  validate_envelope(rep);
  const std::string kind = rep.at("kind").get<std::string>();
  const json& all = shipped_schemas();
  if (!all.contains(kind))
    throw input_error("report: no schema for kind '" + kind + "'");
  validate_against_schema(rep, all.at(kind));
}

}  // namespace spencer::report
