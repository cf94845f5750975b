#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "spencer/core/json_io.hpp"
#include "spencer/liealg/lie_algebra.hpp"

namespace spencer::lattice {

/* Periodic n-dimensional grid, N sites per direction, spacing h = 1/N.
 * Sites are indexed little-endian mixed-radix: site = sum_d x_d N^d. */
struct LatticeSpec {
  int n = 0;
  int N = 0;

  LatticeSpec() = default;
  LatticeSpec(int n_, int N_) : n(n_), N(N_) {
    if (n < 1 || n > 4) throw input_error("lattice: dimension must be 1..4");
    if (N < 4 || N > 128) throw input_error("lattice: sites per direction must be 4..128");
  }

  double h() const { return 1.0 / N; }

  long long sites() const {
    long long s = 1;
    for (int d = 0; d < n; ++d) s *= N;
    return s;
  }

  long long stride(int d) const {
    long long s = 1;
    for (int k = 0; k < d; ++k) s *= N;
    return s;
  }

  int coord(long long site, int d) const {
    return static_cast<int>((site / stride(d)) % N);
  }

  long long shifted(long long site, int d, int step) const {
    const long long str = stride(d);
    const int x = coord(site, d);
    int y = ((x + step) % N + N) % N;
    return site + static_cast<long long>(y - x) * str;
  }

  /* physical coordinate in [0,1)^n */
  double pos(long long site, int d) const { return coord(site, d) * h(); }
};

/* Structure constants in doubles, for lattice-side arithmetic only. */
struct AlgebraD {
  int dim = 0;
  std::string name;
  std::vector<double> c; /* [(i*dim+j)*dim+k] */

  double cc(int i, int j, int k) const { return c[(i * dim + j) * dim + k]; }

  void bracket(const double* x, const double* y, double* out) const {
    for (int k = 0; k < dim; ++k) out[k] = 0;
    for (int i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim; ++j) {
        if (y[j] == 0) continue;
        for (int k = 0; k < dim; ++k) out[k] += x[i] * y[j] * cc(i, j, k);
      }
    }
  }

  /* <coad(xi, lam), Y> = -<lam, [xi, Y]> */
  void coad(const double* xi, const double* lam, double* out) const {
    for (int k = 0; k < dim; ++k) out[k] = 0;
    for (int i = 0; i < dim; ++i) {
      if (xi[i] == 0) continue;
      for (int k = 0; k < dim; ++k)
        for (int m = 0; m < dim; ++m) out[k] -= xi[i] * cc(i, k, m) * lam[m];
    }
  }

  /* transpose of the coad(xi, .) matrix, for the adjoint of the
   * residual operator */
  void coad_transpose(const double* xi, const double* r, double* out) const {
    for (int m = 0; m < dim; ++m) out[m] = 0;
    for (int i = 0; i < dim; ++i) {
      if (xi[i] == 0) continue;
      for (int k = 0; k < dim; ++k)
        for (int m = 0; m < dim; ++m) out[m] -= xi[i] * cc(i, k, m) * r[k];
    }
  }
};

inline AlgebraD algebra_to_double(const liealg::LieAlgebra& g) {
  AlgebraD a;
  a.dim = g.dim;
  a.name = g.name;
  a.c.resize(g.c.size());
  for (std::size_t i = 0; i < g.c.size(); ++i) a.c[i] = rat_double(g.c[i]);
  return a;
}

/* Algebra-valued field with `comps` components per site. */
struct Field {
  int comps = 0;
  long long nsites = 0;
  int m = 0;
  std::vector<double> v;

  Field() = default;
  Field(int comps_, long long nsites_, int m_)
      : comps(comps_), nsites(nsites_), m(m_),
        v(static_cast<std::size_t>(comps_) * nsites_ * m_, 0.0) {}

  double* at(int c, long long site) {
    return v.data() + (static_cast<std::size_t>(c) * nsites + site) * m;
  }
  const double* at(int c, long long site) const {
    return v.data() + (static_cast<std::size_t>(c) * nsites + site) * m;
  }

  double max_abs() const {
    double mx = 0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    return mx;
  }

  double norm2() const {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
};

inline Field operator+(const Field& a, const Field& b) {
  Field out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}

inline Field operator-(const Field& a, const Field& b) {
  Field out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}

inline Field scaled(const Field& a, double c) {
  Field out = a;
  for (auto& x : out.v) x *= c;
  return out;
}

inline double dot(const Field& a, const Field& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += a.v[i] * b.v[i];
  return s;
}

/* Deterministic uniform draw in [-amp, amp]: raw mt19937_64 output
 * mapped through (x >> 11) * 2^-53, identical on every platform. */
class UniformGen {
 public:
  explicit UniformGen(std::uint64_t seed) : eng_(seed) {}
  double operator()(double amp) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return amp * (2.0 * u - 1.0);
  }

 private:
  std::mt19937_64 eng_;
};

/* field spec grammar:
 *   "zero" | "random:seed=<int>:amp=<float>" | "constant:<c0>,<c1>,..."
 * constant fills every site and component slot with the same m-vector. */
inline Field make_field(const LatticeSpec& L, int comps, int m, const std::string& spec) {
  Field f(comps, L.sites(), m);
  if (spec == "zero") return f;
  if (spec.rfind("constant:", 0) == 0) {
    std::vector<double> vals;
    std::string rest = spec.substr(9);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok =
          rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw input_error("trailing characters");
      } catch (const std::exception&) {
        throw input_error("field spec: bad constant entry '" + tok + "' in '" + spec + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(vals.size()) != m)
      throw input_error("field spec: constant needs " + std::to_string(m) +
                        " entries, got " + std::to_string(vals.size()));
    for (int c = 0; c < comps; ++c)
      for (long long s = 0; s < f.nsites; ++s)
        for (int k = 0; k < m; ++k) f.at(c, s)[k] = vals[k];
    return f;
  }
  if (spec.rfind("random:seed=", 0) == 0) {
    const std::string rest = spec.substr(12);
    const auto cut = rest.find(":amp=");
    if (cut == std::string::npos)
      throw input_error("field spec: expected random:seed=<int>:amp=<float>, got '" +
                        spec + "'");
    std::uint64_t seed = 0;
    double amp = 0;
    try {
      std::size_t used = 0;
      seed = std::stoull(rest.substr(0, cut), &used);
      if (used != cut) throw input_error("trailing characters");
      amp = std::stod(rest.substr(cut + 5), &used);
      if (used != rest.size() - cut - 5) throw input_error("trailing characters");
    } catch (const std::exception&) {
      throw input_error("field spec: bad seed or amplitude in '" + spec + "'");
    }
    UniformGen gen(seed);
    for (auto& x : f.v) x = gen(amp);
    return f;
  }
  throw input_error("unknown field spec '" + spec + "'");
}

inline json field_to_json(const LatticeSpec& L, const Field& f, const std::string& kind) {
  json j;
  j["n"] = L.n;
  j["N"] = L.N;
  j["alg_dim"] = f.m;
  j["components"] = f.comps;
  j["kind"] = kind;
  j["data"] = f.v;
  return j;
}

inline Field field_from_json(const json& j, const LatticeSpec& L, int comps, int m,
                             const std::string& kind) {
  for (const char* key : {"n", "N", "alg_dim", "components", "kind", "data"})
    if (!j.contains(key)) throw input_error(std::string("field json: missing '") + key + "'");
  if (j["n"].get<int>() != L.n || j["N"].get<int>() != L.N)
    throw input_error("field json: grid mismatch");
  if (j["alg_dim"].get<int>() != m) throw input_error("field json: algebra dimension mismatch");
  if (j["components"].get<int>() != comps) throw input_error("field json: component count mismatch");
  if (j["kind"].get<std::string>() != kind)
    throw input_error("field json: expected kind '" + kind + "'");
  Field f(comps, L.sites(), m);
  const auto& data = j["data"];
  if (!data.is_array() || data.size() != f.v.size())
    throw input_error("field json: data length mismatch");
  for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = data[i].get<double>();
  return f;
}

inline Field load_field_file(const std::string& path, const LatticeSpec& L, int comps,
                             int m, const std::string& kind) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open field file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("bad field json in '" + path + "': " + e.what());
  }
  return field_from_json(j, L, comps, m, kind);
}

}  // namespace spencer::lattice
