#pragma once

#include <cstdlib>
#include <fstream>
#include <string>

#include "spencer/core/error.hpp"
#include "spencer/version.hpp"
#include "json.hpp"

namespace spencer::report {

using nlohmann::json;

/* Every report ships inside the same envelope so runs can be replayed
 * and compared byte-for-byte.  Reports never contain wall-clock data. */
inline json envelope(const std::string& kind, const json& config, const json& body,
                     long long seed = 0) {
  json rep;
  rep["artifact_version"] = kArtifactVersion;
  rep["kind"] = kind;
  rep["config"] = config;
  rep["seed"] = seed;
  rep["body"] = body;
  return rep;
}

/* Canonical serialization: nlohmann::json object keys are stored sorted,
 * dump(2) is deterministic, so equal reports are byte-equal. */
inline std::string canonical(const json& rep) { return rep.dump(2) + "\n"; }

/* Default output directory: $SPENCER_OUT_DIR or "." */
inline std::string default_out_dir() {
  const char* env = std::getenv("SPENCER_OUT_DIR");
  return (env && *env) ? std::string(env) : std::string(".");
}

inline void write_report(const std::string& path, const json& rep) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open report path for writing: '" + path + "'");
  out << canonical(rep);
}

inline json read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open report file: '" + path + "'");
  json rep;
  try {
    in >> rep;
  } catch (const json::exception& e) {
    throw input_error("bad report json in '" + path + "': " + std::string(e.what()));
  }
  return rep;
}

/* -------- schema-lite validation ----------------------------------------
 * Checks required keys and value kinds against the shipped schema files'
 * conventions: {"required": {...name->kind...}} with kinds
 * string|integer|number|boolean|object|array. */
inline bool value_is_kind(const json& v, const std::string& kind) {
  if (kind == "string") return v.is_string();
  if (kind == "integer") return v.is_number_integer();
  if (kind == "number") return v.is_number();
  if (kind == "boolean") return v.is_boolean();
  if (kind == "object") return v.is_object();
  if (kind == "array") return v.is_array();
  return false;
}

inline void validate_envelope(const json& rep, const std::string& expect_kind = "") {
  static const std::pair<const char*, const char*> req[] = {
      {"artifact_version", "string"}, {"kind", "string"}, {"config", "object"},
      {"seed", "integer"},            {"body", "object"},
  };
  if (!rep.is_object()) throw input_error("report: top level must be an object");
  for (auto& [name, kind] : req) {
    if (!rep.contains(name))
      throw input_error(std::string("report: missing required key '") + name + "'");
    if (!value_is_kind(rep.at(name), kind))
      throw input_error(std::string("report: key '") + name + "' must be " + kind);
  }
  if (!expect_kind.empty() && rep.at("kind").get<std::string>() != expect_kind)
    throw input_error("report: kind is '" + rep.at("kind").get<std::string>() +
                      "', expected '" + expect_kind + "'");
}

/* Validate a report against a shipped schema document of the form
 * {"kind": "...", "required": {...}, "body_required": {...}}. */
inline void validate_against_schema(const json& rep, const json& schema) {
  validate_envelope(rep, schema.value("kind", std::string{}));
  if (schema.contains("body_required")) {
    const json& body = rep.at("body");
    for (auto& [name, kind] : schema.at("body_required").items()) {
      if (!body.contains(name))
        throw input_error("report body: missing required key '" + name + "'");
      if (!value_is_kind(body.at(name), kind.get<std::string>()))
        throw input_error("report body: key '" + name + "' must be " +
                          kind.get<std::string>());
    }
  }
}

}  // namespace spencer::report
