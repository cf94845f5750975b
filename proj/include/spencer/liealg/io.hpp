#pragma once

#include <fstream>
#include "json.hpp"
#include <set>
#include <string>

#include "spencer/liealg/lie_algebra.hpp"

namespace spencer::liealg {

using nlohmann::json;

/* File format:
 *   {"dim": d, "labels": [...], "brackets":
 *     [{"i": i, "j": j, "coeffs": {"k": "p/q", ...}}, ...]}
 * Only pairs i < j are listed; antisymmetric completion is implied.
 * Duplicate (i, j) entries and i >= j are rejected. */
inline LieAlgebra algebra_from_json(const json& doc, const std::string& name = "file") {
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_integer())
    throw input_error("algebra file: missing integer 'dim'");
  LieAlgebra g;
  g.dim = doc["dim"].get<int>();
  g.name = name;
  if (g.dim <= 0 || g.dim > 64) throw input_error("algebra file: dim out of range");
  if (doc.contains("labels")) {
    for (const auto& l : doc["labels"]) g.labels.push_back(l.get<std::string>());
    if (static_cast<int>(g.labels.size()) != g.dim)
      throw input_error("algebra file: label count != dim");
  } else {
    for (int i = 0; i < g.dim; ++i) g.labels.push_back("e" + std::to_string(i + 1));
  }
  g.c.assign(static_cast<std::size_t>(g.dim) * g.dim * g.dim, Rat(0));
  std::set<std::pair<int, int>> seen;
  if (doc.contains("brackets")) {
    for (const auto& b : doc["brackets"]) {
      const int i = b.at("i").get<int>();
      const int j = b.at("j").get<int>();
      if (i < 0 || j < 0 || i >= g.dim || j >= g.dim)
        throw input_error("algebra file: bracket index out of range");
      if (i >= j) throw input_error("algebra file: brackets must have i < j");
      if (!seen.insert({i, j}).second)
        throw input_error("algebra file: duplicate bracket entry");
      for (const auto& [ks, vs] : b.at("coeffs").items()) {
        int k = 0;
        try {
          k = std::stoi(ks);
        } catch (...) {
          throw input_error("algebra file: bad coefficient key '" + ks + "'");
        }
        if (k < 0 || k >= g.dim) throw input_error("algebra file: coefficient index out of range");
        Rat v = rat_parse(vs.get<std::string>());
        g.cc(i, j, k) = v;
        g.cc(j, i, k) = -v;
      }
    }
  }
  return g;
}

inline json algebra_to_json(const LieAlgebra& g) {
  json doc;
  doc["dim"] = g.dim;
  doc["labels"] = g.labels;
  json brackets = json::array();
  for (int i = 0; i < g.dim; ++i)
    for (int j = i + 1; j < g.dim; ++j) {
      json coeffs = json::object();
      for (int k = 0; k < g.dim; ++k)
        if (g.cc(i, j, k) != 0) coeffs[std::to_string(k)] = rat_str(g.cc(i, j, k));
      if (!coeffs.empty()) brackets.push_back({{"i", i}, {"j", j}, {"coeffs", coeffs}});
    }
  doc["brackets"] = brackets;
  return doc;
}

inline LieAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open algebra file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw input_error("algebra file " + path + ": " + e.what());
  }
  return algebra_from_json(doc, path);
}

}  // namespace spencer::liealg
