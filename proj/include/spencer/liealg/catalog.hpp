#pragma once

#include <string>

#include "spencer/liealg/io.hpp"
#include "spencer/liealg/lie_algebra.hpp"
#include "spencer/liealg/sl3_bundle.hpp"

namespace spencer::liealg {

inline LieAlgebra abelian(int d) {
  if (d <= 0 || d > 16) throw input_error("abelian: dimension out of range (1..16)");
  LieAlgebra g;
  g.dim = d;
  g.name = "abelian:" + std::to_string(d);
  for (int i = 0; i < d; ++i) g.labels.push_back("e" + std::to_string(i + 1));
  g.c.assign(static_cast<std::size_t>(d) * d * d, Rat(0));
  return g;
}

/* [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2. */
inline LieAlgebra su2() {
  LieAlgebra g = abelian(3);
  g.name = "su2";
  auto setpair = [&g](int i, int j, int k) {
    g.cc(i, j, k) = 1;
    g.cc(j, i, k) = -1;
  };
  setpair(0, 1, 2);
  setpair(1, 2, 0);
  setpair(2, 0, 1);
  return g;
}

inline LieAlgebra so3() {
  LieAlgebra g = su2();
  g.name = "so3";
  g.labels = {"L1", "L2", "L3"};
  return g;
}

/* Split form, basis (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h. */
inline LieAlgebra sl2() {
  LieAlgebra g = abelian(3);
  g.name = "sl2";
  g.labels = {"h", "e", "f"};
  auto set = [&g](int i, int j, int k, int v) {
    g.cc(i, j, k) = v;
    g.cc(j, i, k) = -v;
  };
  set(0, 1, 1, 2);
  set(0, 2, 2, -2);
  set(1, 2, 0, 1);
  return g;
}

/* [e1,e2]=e3, e3 central. */
inline LieAlgebra heisenberg3() {
  LieAlgebra g = abelian(3);
  g.name = "heisenberg3";
  g.cc(0, 1, 2) = 1;
  g.cc(1, 0, 2) = -1;
  return g;
}

inline LieAlgebra sl3() {
  static const LieAlgebra g = [] {
    LieAlgebra a = algebra_from_json(json::parse(kSl3BundledJson), "sl3");
    return a;
  }();
  return g;
}

/* Preset strings: "su2", "so3", "sl2", "sl3", "heisenberg3",
 * "abelian:<d>".  Anything containing '/' or ending in ".json" is
 * treated as a file path. */
inline LieAlgebra catalog(const std::string& spec) {
  if (spec == "su2") return su2();
  if (spec == "so3") return so3();
  if (spec == "sl2") return sl2();
  if (spec == "sl3") return sl3();
  if (spec == "heisenberg3") return heisenberg3();
  if (spec.rfind("abelian:", 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(spec.substr(8));
    } catch (...) {
      throw input_error("bad abelian preset: " + spec);
    }
    return abelian(d);
  }
  if (spec.find('/') != std::string::npos ||
      (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json"))
    return load_algebra_file(spec);
  throw input_error("unknown algebra preset: " + spec +
                    " (expected su2|so3|sl2|sl3|heisenberg3|abelian:<d>|<file.json>)");
}

}  // namespace spencer::liealg
