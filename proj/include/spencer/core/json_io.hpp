#pragma once

#include <string>

#include "json.hpp"
#include "spencer/core/rational.hpp"
#include "spencer/core/sparse.hpp"

namespace spencer {

using nlohmann::json;

/* Matrices travel as {"rows","cols","entries":[[r,c,"p/q"],...]},
 * entries column-major sorted — byte-stable given the same matrix. */
inline json sparse_mat_to_json(const SparseMat& m) {
  json entries = json::array();
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.col(c)) entries.push_back({r, c, rat_str(v)});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline SparseMat sparse_mat_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
    throw input_error("matrix json: expected {rows, cols, entries}");
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  if (rows < 0 || cols < 0) throw input_error("matrix json: negative shape");
  SparseMat m(rows, cols);
  for (const auto& e : j.value("entries", json::array())) {
    if (!e.is_array() || e.size() != 3)
      throw input_error("matrix json: entry must be [row, col, value]");
    int r = e[0].get<int>(), c = e[1].get<int>();
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw input_error("matrix json: entry out of range");
    m.add_at(r, c, rat_parse(e[2].get<std::string>()));
  }
  return m;
}

inline json rat_vec_to_json(const SparseVec& v, int dim) {
  json out = json::array();
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    if (k < v.size() && v[k].first == i)
      out.push_back(rat_str(v[k++].second));
    else
      out.push_back("0/1");
  }
  return out;
}

}  // namespace spencer
