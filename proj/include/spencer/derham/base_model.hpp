#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spencer/complex/ce.hpp"
#include "spencer/complex/cochain.hpp"
#include "spencer/core/json_io.hpp"

namespace spencer::derham {

using complex::CochainComplex;

/* Simplicial circle on m vertices: functions -> edge differences. */
inline CochainComplex circle_complex(int m) {
  if (m < 3) throw input_error("circle: need at least 3 vertices, got " + std::to_string(m));
  CochainComplex C;
  C.name = "circle:" + std::to_string(m);
  C.dims = {m, m};
  SparseMat d(m, m);
  for (int i = 0; i < m; ++i) {
    d.add_at(i, (i + 1) % m, Rat(1));
    d.add_at(i, i, Rat(-1));
  }
  C.d.push_back(std::move(d));
  return C;
}

/* Prescribed cohomology with zero differentials.  A connected model needs
 * betti[0] >= 1. */
inline CochainComplex formal_complex(const std::vector<int>& betti) {
  if (betti.empty()) throw input_error("formal: empty betti list");
  if (betti[0] < 1) throw input_error("formal: betti[0] must be >= 1 (connected model)");
  CochainComplex C;
  C.name = "formal";
  C.dims = betti;
  for (std::size_t q = 0; q + 1 < betti.size(); ++q)
    C.d.emplace_back(betti[q + 1], betti[q]);
  return C;
}

/* Graded tensor product: (A (x) B)^k = sum_{p+q=k} A^p (x) B^q, blocks
 * ordered by increasing p, A-major inside a block;
 * d(a (x) b) = da (x) b + (-1)^p a (x) db. */
inline CochainComplex tensor_complex(const CochainComplex& A, const CochainComplex& B) {
  A.validate();
  B.validate();
  const int ta = A.top(), tb = B.top(), top = ta + tb;
  CochainComplex C;
  C.name = A.name + "(x)" + B.name;
  C.dims.assign(top + 1, 0);
  /* block offset of (p, k-p) inside degree k */
  auto offsets = [&](int k) {
    std::vector<int> off;
    int run = 0;
    for (int p = 0; p <= ta; ++p) {
      off.push_back(run);
      int q = k - p;
      if (q >= 0 && q <= tb) run += A.dims[p] * B.dims[q];
    }
    off.push_back(run);
    return off;
  };
  for (int k = 0; k <= top; ++k) C.dims[k] = offsets(k).back();
  for (int k = 0; k < top; ++k) {
    auto src = offsets(k), dst = offsets(k + 1);
    SparseMat d(C.dims[k + 1], C.dims[k]);
    for (int p = 0; p <= ta; ++p) {
      int q = k - p;
      if (q < 0 || q > tb || A.dims[p] == 0 || B.dims[q] == 0) continue;
      if (p < ta) { /* horizontal: dA (x) id */
        SparseMat blk = SparseMat::kron(A.d[p], SparseMat::identity(B.dims[q]));
        for (int c = 0; c < blk.cols(); ++c)
          for (const auto& [r, v] : blk.col(c))
            d.add_at(dst[p + 1] + r, src[p] + c, v);
      }
      if (q < tb) { /* vertical: (-1)^p id (x) dB */
        SparseMat blk = SparseMat::kron(SparseMat::identity(A.dims[p]), B.d[q]);
        const Rat sgn(p % 2 ? -1 : 1);
        for (int c = 0; c < blk.cols(); ++c)
          for (const auto& [r, v] : blk.col(c))
            d.add_at(dst[p] + r, src[p] + c, sgn * v);
      }
    }
    C.d.push_back(std::move(d));
  }
  C.validate();
  int bad = -1;
  if (!C.is_nilpotent(&bad))
    throw invariant_violation("tensor_complex: d.d != 0 at degree " + std::to_string(bad));
  return C;
}

/* Exterior-algebra element over g degree-1 generators, for exact cup
 * products on torus models. */
struct ExtElement {
  int n = 0;
  std::map<std::vector<int>, Rat> terms; /* strictly increasing tuples */

  bool is_zero() const { return terms.empty(); }

  ExtElement wedge(const ExtElement& rhs) const {
    ExtElement out;
    out.n = n;
    for (const auto& [a, va] : terms)
      for (const auto& [b, vb] : rhs.terms) {
        std::vector<int> t = a;
        t.insert(t.end(), b.begin(), b.end());
        int sgn = complex::AltSpace::normalize(t);
        if (sgn == 0) continue;
        Rat& slot = out.terms[t];
        slot += Rat(sgn) * va * vb;
        if (slot == 0) out.terms.erase(t);
      }
    return out;
  }
};

/* Cohomology-ring data: enough multiplication table to evaluate powers of
 * the distinguished degree-2 class.  Two kinds:
 *   exterior         H* = Lambda(x_1..x_n); class = sum x_{2i}^x_{2i+1}
 *                    (or explicit coefficients over the i<j pair basis)
 *   truncated_power  class = c*h with h^j nonzero exactly for j <= max_power */
struct RingData {
  std::string kind;             /* "exterior" or "truncated_power" */
  int n = 0;                    /* exterior generators */
  int max_power = 0;            /* truncated: h^j = 0 for j > max_power */
  std::vector<Rat> power_coeff; /* truncated: h^j = coeff_j * (basis of H^{2j}) */
  std::vector<Rat> class_coeff; /* optional explicit degree-2 class coefficients */

  ExtElement exterior_class() const {
    ExtElement w;
    w.n = n;
    if (class_coeff.empty()) {
      for (int i = 0; i + 1 < n; i += 2) w.terms[{i, i + 1}] = 1;
    } else {
      complex::AltSpace pairs(n, 2);
      for (int t = 0; t < pairs.dim_space() && t < (int)class_coeff.size(); ++t)
        if (class_coeff[t] != 0) w.terms[pairs.element(t)] = class_coeff[t];
    }
    return w;
  }

  bool cup_power_nonzero(int j) const {
    if (j == 0) return true;
    if (kind == "truncated_power") {
      if (!class_coeff.empty() && class_coeff[0] == 0) return false;
      return j <= max_power;
    }
    if (kind != "exterior") throw invariant_violation("ring: unknown kind");
    ExtElement w = exterior_class();
    if (w.is_zero()) return false;
    ExtElement acc = w;
    for (int p = 1; p < j; ++p) acc = acc.wedge(w);
    return !acc.is_zero();
  }
};

struct BaseModel {
  CochainComplex complex;
  int n = 0;                /* manifold dimension (top cochain degree) */
  std::vector<int> betti;   /* exact, computed from the complex */
  bool has_ring = false;
  RingData ring;
  std::string spec;
};

inline std::vector<int> computed_betti(const CochainComplex& C) {
  return complex::cohomology(C).betti;
}

inline bool poincare_symmetric(const BaseModel& M) {
  for (int k = 0; k <= M.n; ++k) {
    int bk = k < (int)M.betti.size() ? M.betti[k] : 0;
    int bo = (M.n - k) < (int)M.betti.size() ? M.betti[M.n - k] : 0;
    if (bk != bo) return false;
  }
  return true;
}

/* j-th cup power of the curvature class.  Formal mode treats the class as
 * formally alive in every power; ring mode evaluates it in the ring table. */
inline bool cup_power(const BaseModel& M, int j, bool ring_mode) {
  if (j < 0) throw input_error("cup_power: negative power");
  if (!ring_mode) return true;
  if (!M.has_ring)
    throw input_error("cup_power: base '" + M.spec + "' carries no ring table (ring mode)");
  return M.ring.cup_power_nonzero(j);
}

inline long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/* Validate a user ring table against the model grading: the class and its
 * nonzero powers must fit inside the stated betti numbers. */
inline void validate_ring(const BaseModel& M) {
  const RingData& R = M.ring;
  if (R.kind == "truncated_power") {
    if (R.max_power < 0 || 2 * R.max_power > M.n)
      throw input_error("ring: max_power inconsistent with grading (2*max_power > n)");
    if ((int)R.power_coeff.size() != R.max_power + 1)
      throw input_error("ring: power_coeff must list powers 0..max_power");
    for (int j = 0; j <= R.max_power; ++j) {
      if (R.power_coeff[j] == 0)
        throw input_error("ring: power_coeff[" + std::to_string(j) + "] must be nonzero");
      if (2 * j < (int)M.betti.size() && M.betti[2 * j] < 1)
        throw input_error("ring: h^" + std::to_string(j) + " nonzero but betti[" +
                          std::to_string(2 * j) + "] = 0");
    }
  } else if (R.kind == "exterior") {
    for (int p = 0; p <= M.n; ++p) {
      int bp = p < (int)M.betti.size() ? M.betti[p] : 0;
      if (bp != (int)binom_ll(R.n, p))
        throw input_error("ring: exterior table over " + std::to_string(R.n) +
                          " generators inconsistent with betti[" + std::to_string(p) + "]");
    }
    if (!R.class_coeff.empty()) {
      complex::AltSpace pairs(R.n, 2);
      if ((int)R.class_coeff.size() != pairs.dim_space())
        throw input_error("curvature_class: expected " + std::to_string(pairs.dim_space()) +
                          " degree-2 coefficients");
    }
  } else {
    throw input_error("ring: unknown kind '" + R.kind + "'");
  }
}

/* Base-model file: a formal (zero-differential) model
 *   {"n": int, "betti": [ints], "ring"?: {...}, "curvature_class"?: ["p/q",...]}
 * ring: {"kind": "exterior"|"truncated_power", "max_power"?: int,
 *        "power_coeff"?: ["p/q",...]} */
/* Rational coefficients arrive either as "p/q" strings or plain integers. */
inline Rat rat_of_json(const json& v, const char* where) {
  if (v.is_string()) return rat_parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  throw input_error(std::string(where) + ": expected a rational \"p/q\" string or integer");
}

inline BaseModel base_model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("base model: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("base model: bad json in '" + path + "': " + std::string(e.what()));
  }
  if (!j.is_object()) throw input_error("base model: top level must be an object");
  static const std::set<std::string> allowed = {"n", "betti", "ring", "curvature_class"};
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw input_error("base model: unknown key '" + key + "'");
  if (!j.contains("n") || !j.contains("betti"))
    throw input_error("base model: need keys 'n' and 'betti'");
  BaseModel M;
  M.spec = path;
  M.n = j.at("n").get<int>();
  if (M.n < 0) throw input_error("base model: n must be >= 0");
  std::vector<int> betti;
  for (const auto& v : j.at("betti")) betti.push_back(v.get<int>());
  if ((int)betti.size() != M.n + 1)
    throw input_error("base model: betti must have n+1 = " + std::to_string(M.n + 1) +
                      " entries");
  for (int b : betti)
    if (b < 0) throw input_error("base model: negative betti number");
  M.complex = formal_complex(betti);
  M.complex.name = path;
  M.betti = computed_betti(M.complex);
  if (j.contains("ring")) {
    const json& r = j.at("ring");
    static const std::set<std::string> rallowed = {"kind", "max_power", "power_coeff"};
    for (const auto& [key, _] : r.items())
      if (!rallowed.count(key)) throw input_error("ring: unknown key '" + key + "'");
    M.has_ring = true;
    M.ring.kind = r.at("kind").get<std::string>();
    if (M.ring.kind == "exterior") {
      M.ring.n = M.betti.size() > 1 ? M.betti[1] : 0;
    } else {
      M.ring.max_power = r.value("max_power", 0);
      if (r.contains("power_coeff"))
        for (const auto& v : r.at("power_coeff")) M.ring.power_coeff.push_back(rat_of_json(v, "power_coeff"));
      else
        M.ring.power_coeff.assign(M.ring.max_power + 1, Rat(1));
    }
  }
  if (j.contains("curvature_class")) {
    if (!M.has_ring) throw input_error("curvature_class: requires a ring table");
    if (M.n < 2) throw input_error("curvature_class: needs n >= 2 (degree-2 class)");
    for (const auto& v : j.at("curvature_class")) M.ring.class_coeff.push_back(rat_of_json(v, "curvature_class"));
    if (M.ring.kind == "truncated_power" && M.ring.class_coeff.size() != 1)
      throw input_error("curvature_class: truncated_power ring has a 1-dim H^2");
  }
  if (M.has_ring) validate_ring(M);
  return M;
}

/* spec grammar:
 *   circle:<m>
 *   torus:<n>:<m>        n-fold tensor of circle:<m>, exterior ring
 *   formal:<b0>,<b1>,... prescribed betti, zero differentials, no ring
 *   quintic              formal (1,0,1,204,1,0,1) with truncated h-power ring
 *   <path>.json          formal model file (see base_model_from_file)     */
inline BaseModel base_model(const std::string& spec) {
  BaseModel M;
  M.spec = spec;
  auto starts = [&](const char* p) { return spec.rfind(p, 0) == 0; };
  if (starts("circle:")) {
    int m = 0;
    try {
      m = std::stoi(spec.substr(7));
    } catch (...) {
      throw input_error("circle: bad vertex count in '" + spec + "'");
    }
    M.complex = circle_complex(m);
    M.n = 1;
    M.has_ring = true;
    M.ring.kind = "exterior";
    M.ring.n = 1;
  } else if (starts("torus:")) {
    std::istringstream ss(spec.substr(6));
    int n = 0, m = 0;
    char colon = 0;
    if (!(ss >> n >> colon >> m) || colon != ':' || !ss.eof())
      throw input_error("torus: expected torus:<n>:<m>, got '" + spec + "'");
    if (n < 1 || n > 6) throw input_error("torus: dimension out of range 1..6");
    M.complex = circle_complex(m);
    for (int i = 1; i < n; ++i) M.complex = tensor_complex(M.complex, circle_complex(m));
    M.complex.name = "torus:" + std::to_string(n) + ":" + std::to_string(m);
    M.n = n;
    M.has_ring = true;
    M.ring.kind = "exterior";
    M.ring.n = n;
  } else if (starts("formal:")) {
    std::vector<int> b;
    std::istringstream ss(spec.substr(7));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        b.push_back(std::stoi(tok));
      } catch (...) {
        throw input_error("formal: bad betti entry '" + tok + "'");
      }
      if (b.back() < 0) throw input_error("formal: negative betti number");
    }
    M.complex = formal_complex(b);
    M.n = (int)b.size() - 1;
    M.has_ring = false;
  } else if (spec == "quintic") {
    M.complex = formal_complex({1, 0, 1, 204, 1, 0, 1});
    M.complex.name = "quintic";
    M.n = 6;
    M.has_ring = true;
    M.ring.kind = "truncated_power";
    M.ring.max_power = 3;
    M.ring.power_coeff = {Rat(1), Rat(1), Rat(1), Rat(5)};
  } else if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    return base_model_from_file(spec);
  } else {
    throw input_error("unknown base model '" + spec + "'");
  }
  M.betti = computed_betti(M.complex);
  return M;
}

inline json base_model_to_json(const BaseModel& M) {
  json j;
  j["spec"] = M.spec;
  j["n"] = M.n;
  j["dims"] = M.complex.dims;
  j["betti"] = M.betti;
  j["has_ring"] = M.has_ring;
  j["poincare_symmetric"] = poincare_symmetric(M);
  return j;
}

}  // namespace spencer::derham
