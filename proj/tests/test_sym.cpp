#include <catch2/catch_amalgamated.hpp>

#include "spencer/liealg/catalog.hpp"
#include "spencer/sym/sym_space.hpp"

using namespace spencer;
using namespace spencer::sym;
using liealg::catalog;

TEST_CASE("symmetric-power basis enumeration") {
  SymSpace S(3, 2);
  REQUIRE(S.dim_space() == 6);
  CHECK(S.element(0) == std::vector<int>{0, 0});
  CHECK(S.element(5) == std::vector<int>{2, 2});
  CHECK(S.index_of({2, 0}) == 2);  // sorted to (0,2)
  CHECK_THROWS_AS(S.index_of({0, 3}), invariant_violation);
  CHECK(SymSpace(3, 3).dim_space() == 10);
  CHECK(SymSpace(8, 3).dim_space() == 120);  // C(10,3)
  CHECK(SymSpace(4, 0).dim_space() == 1);    // the empty multiset
  auto g = catalog("sl2");
  CHECK(SymSpace(3, 2).format(1, g.labels) == "h*e");
}

TEST_CASE("degree-raising map in the raw mode: hand-checked columns") {
  auto g = catalog("sl2");  // (h,e,f)
  SparseMat d = spencer_differential(g, 1, DiffMode::Raw);
  SymSpace cod(3, 2);
  // delta(e) = 2 h.e - h.f ; column 1 is e
  CHECK(d.get(cod.index_of({0, 1}), 1) == 2);
  CHECK(d.get(cod.index_of({0, 2}), 1) == -1);
  CHECK(d.get(cod.index_of({1, 1}), 1) == 0);
  // delta(h) = -2 e.e + 2 f.f
  CHECK(d.get(cod.index_of({1, 1}), 0) == -2);
  CHECK(d.get(cod.index_of({2, 2}), 0) == 2);
  // delta(f) = h.e - 2 h.f
  CHECK(d.get(cod.index_of({0, 1}), 2) == 1);
  CHECK(d.get(cod.index_of({0, 2}), 2) == -2);
}

TEST_CASE("raw mode on su2 cancels identically") {
  auto g = catalog("su2");
  for (int k = 1; k <= 3; ++k)
    CHECK(spencer_differential(g, k, DiffMode::Raw).is_zero());
  auto rep = nilpotency_check(g, 4, DiffMode::Raw);
  CHECK(rep.nilpotent);
  CHECK(rep.oracle_agrees);
}

TEST_CASE("killing-dual mode vanishes for the semisimple catalog") {
  // With all indices lowered by the Killing form the structure tensor is
  // totally antisymmetric, so its symmetrization is zero.
  for (const char* name : {"su2", "sl2", "so3"}) {
    auto g = catalog(name);
    INFO(name);
    for (int k = 1; k <= 3; ++k)
      CHECK(spencer_differential(g, k, DiffMode::KillingDual).is_zero());
    auto rep = nilpotency_check(g, 4, DiffMode::KillingDual);
    CHECK(rep.nilpotent);
    CHECK(rep.oracle_agrees);
  }
  CHECK(spencer_differential(catalog("sl3"), 1, DiffMode::KillingDual).is_zero());
}

TEST_CASE("killing-dual mode refuses degenerate Killing forms") {
  CHECK_THROWS_AS(spencer_differential(catalog("abelian:3"), 1, DiffMode::KillingDual),
                  unsupported_algebra_error);
  CHECK_THROWS_AS(spencer_differential(catalog("heisenberg3"), 1, DiffMode::KillingDual),
                  unsupported_algebra_error);
}

TEST_CASE("raw mode fails nilpotency on sl2 with an exact witness") {
  auto rep = nilpotency_check(catalog("sl2"), 3, DiffMode::Raw);
  CHECK_FALSE(rep.nilpotent);
  CHECK(rep.oracle_agrees);  // both routes agree: formula property, not a bug
  CHECK(rep.first_failure_degree == 1);
  CHECK(rep.first_failure_column == 0);  // the element h
  CHECK(rep.witness == "h -> (-8/1)*h*e*e + (8/1)*h*e*f + (-8/1)*h*f*f");
}

TEST_CASE("raw mode fails nilpotency on the nilpotent algebra") {
  auto g = catalog("heisenberg3");
  SparseMat d = spencer_differential(g, 1, DiffMode::Raw);
  SymSpace cod(3, 2);
  // delta(e1) = -e2.e3, delta(e2) = e1.e3, delta(e3) = 0
  CHECK(d.get(cod.index_of({1, 2}), 0) == -1);
  CHECK(d.get(cod.index_of({0, 2}), 1) == 1);
  for (int r = 0; r < cod.dim_space(); ++r) CHECK(d.get(r, 2) == 0);

  auto rep = nilpotency_check(g, 3, DiffMode::Raw);
  CHECK_FALSE(rep.nilpotent);
  CHECK(rep.oracle_agrees);
  CHECK(rep.first_failure_degree == 1);
  CHECK(rep.witness == "e1 -> (-1/1)*e1*e3*e3");
}

TEST_CASE("abelian raw maps are zero in every degree") {
  auto rep = nilpotency_check(catalog("abelian:4"), 3, DiffMode::Raw);
  CHECK(rep.nilpotent);
  CHECK(rep.oracle_agrees);
}

TEST_CASE("matrix route equals the brute-force expansion on sums") {
  auto g = catalog("sl2");
  SymSpace dom(3, 2), cod(3, 3);
  SparseMat d = spencer_differential(g, 2, DiffMode::Raw);
  // x = h.e - 3 f.f
  std::map<std::vector<int>, Rat> x{{{0, 1}, Rat(1)}, {{2, 2}, Rat(-3)}};
  auto img = spencer_apply_bruteforce(g, x, DiffMode::Raw);
  SparseVec xv{{dom.index_of({0, 1}), Rat(1)}, {dom.index_of({2, 2}), Rat(-3)}};
  auto mv = d.apply(xv);
  for (int r = 0; r < cod.dim_space(); ++r) {
    auto it = img.find(cod.element(r));
    Rat expect = it == img.end() ? Rat(0) : it->second;
    CHECK(sv_get(mv, r) == expect);
  }
}

TEST_CASE("mode parsing") {
  CHECK(diff_mode_from_string("raw") == DiffMode::Raw);
  CHECK(diff_mode_from_string("killing_dual") == DiffMode::KillingDual);
  CHECK_THROWS_AS(diff_mode_from_string("other"), input_error);
}
