#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>

#include "spencer/liealg/catalog.hpp"
#include "spencer/liealg/io.hpp"
#include "spencer/liealg/lie_algebra.hpp"
#include "spencer/liealg/orthonormalize.hpp"
#include "spencer/liealg/sl3_bundle.hpp"

using namespace spencer;
using namespace spencer::liealg;

TEST_CASE("catalog structure checks are clean") {
  for (const char* name : {"su2", "so3", "sl2", "heisenberg3", "sl3", "abelian:4"}) {
    auto g = catalog(name);
    auto rep = check_structure(g);
    INFO(name);
    CHECK(rep.ok());
    CHECK(rep.violations.empty());
    CHECK(rep.killing_symmetric);
  }
}

TEST_CASE("Killing forms match hand computations") {
  SECTION("su2: K = -2 Id") {
    auto K = catalog("su2").killing_form();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(K(i, j) == (i == j ? Rat(-2) : Rat(0)));
  }
  SECTION("sl2 in (h,e,f): K(h,h)=8, K(e,f)=4, rest of the pattern") {
    auto K = catalog("sl2").killing_form();
    CHECK(K(0, 0) == 8);
    CHECK(K(1, 2) == 4);
    CHECK(K(2, 1) == 4);
    CHECK(K(0, 1) == 0);
    CHECK(K(0, 2) == 0);
    CHECK(K(1, 1) == 0);
    CHECK(K(2, 2) == 0);
  }
  SECTION("heisenberg: identically zero (nilpotent)") {
    auto K = catalog("heisenberg3").killing_form();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(K(i, j) == 0);
  }
  SECTION("sl3: nondegenerate, K(h1,h1)=12, K(e12,e21)=6") {
    auto g = catalog("sl3");
    auto K = g.killing_form();
    int h1 = -1, e12 = -1, e21 = -1;
    for (int i = 0; i < g.dim; ++i) {
      if (g.labels[i] == "h1") h1 = i;
      if (g.labels[i] == "e12") e12 = i;
      if (g.labels[i] == "e21") e21 = i;
    }
    REQUIRE(h1 >= 0);
    REQUIRE(e12 >= 0);
    REQUIRE(e21 >= 0);
    CHECK(K(h1, h1) == 12);
    CHECK(K(e12, e21) == 6);
    CHECK(check_structure(g).killing_rank == 8);
  }
}

TEST_CASE("coadjoint action: su2 example") {
  // <ad*_xi lam, Y> = -<lam, [xi, Y]>; xi = e1, lam = e3* gives -e2*.
  auto g = catalog("su2");
  auto mu = g.coadjoint_apply(g.basis_vector(0), g.basis_vector(2));
  CHECK(mu[0] == 0);
  CHECK(mu[1] == -1);
  CHECK(mu[2] == 0);
}

TEST_CASE("bracket is the structure-constant contraction") {
  auto g = catalog("sl2");  // (h,e,f): [h,e]=2e, [h,f]=-2f, [e,f]=h
  auto he = g.bracket(g.basis_vector(0), g.basis_vector(1));
  CHECK(he == std::vector<Rat>{Rat(0), Rat(2), Rat(0)});
  auto ef = g.bracket(g.basis_vector(1), g.basis_vector(2));
  CHECK(ef == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
}

TEST_CASE("catalog rejects bad specs") {
  CHECK_THROWS_AS(catalog("abelian:0"), input_error);
  CHECK_THROWS_AS(catalog("abelian:17"), input_error);
  CHECK_THROWS_AS(catalog("abelian:x"), input_error);
  CHECK_THROWS_AS(catalog("nosuch"), input_error);
}

TEST_CASE("corrupted structure constants are reported with witnesses") {
  auto g = catalog("su2");
  g.cc(0, 0, 2) = 1;  // breaks [x,x] = 0
  auto rep = check_structure(g);
  CHECK_FALSE(rep.antisymmetry_ok);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.violations.empty());

  auto h = catalog("su2");
  h.cc(0, 1, 2) = 2;  // antisymmetric partner untouched
  auto rep2 = check_structure(h);
  CHECK_FALSE(rep2.antisymmetry_ok);

  auto j = catalog("sl2");
  j.cc(0, 1, 1) = 3;
  j.cc(1, 0, 1) = -3;  // antisymmetry kept, Jacobi broken
  auto rep3 = check_structure(j);
  CHECK(rep3.antisymmetry_ok);
  CHECK_FALSE(rep3.jacobi_ok);
}

TEST_CASE("algebra json round trip and file loading") {
  auto g = catalog("sl2");
  json doc = algebra_to_json(g);
  auto back = algebra_from_json(doc, "sl2");
  CHECK(back.dim == g.dim);
  CHECK(back.c == g.c);
  CHECK(back.labels == g.labels);

  const auto sl3_path =
      (std::filesystem::path(__FILE__).parent_path().parent_path() / "data" /
       "algebras" / "sl3.json")
          .string();

  SECTION("embedded sl3 equals the shipped data file") {
    auto file = load_algebra_file(sl3_path);
    auto embedded = catalog("sl3");
    CHECK(file.dim == embedded.dim);
    CHECK(file.c == embedded.c);
    CHECK(file.labels == embedded.labels);
  }

  SECTION("catalog routes path-like specs to the loader") {
    auto viafile = catalog(sl3_path);
    CHECK(viafile.dim == 8);
    CHECK_THROWS_AS(catalog("./no_such_algebra.json"), input_error);
  }

  SECTION("malformed documents name the offending field") {
    json bad = doc;
    bad["dim"] = 2;  // label list no longer matches
    CHECK_THROWS_AS(algebra_from_json(bad, "bad"), input_error);
    json bad2 = doc;
    bad2["brackets"].push_back({{"i", 2}, {"j", 1}, {"coeffs", json::object()}});
    CHECK_THROWS_AS(algebra_from_json(bad2, "bad2"), input_error);  // needs i < j
  }
}

TEST_CASE("Killing orthonormalization over surds") {
  SECTION("su2: frame scale is sqrt(2), constants become (1/2)sqrt(2)") {
    auto g = catalog("su2");
    auto on = orthonormalize_basis(g);
    REQUIRE(on.dim == 3);
    for (int i = 0; i < 3; ++i) CHECK(on.scale_sq[i] == 2);
    // [f1,f2] = (1/2)sqrt(2) f3
    CHECK(on.cc(0, 1, 2) == Surd(Rat(1, 2), Rat(2)));
    CHECK(on.cc(1, 0, 2) == Surd(Rat(-1, 2), Rat(2)));
    CHECK(on.cc(0, 1, 0).q == 0);
  }
  SECTION("indefinite or degenerate Killing forms are refused") {
    CHECK_THROWS_AS(orthonormalize_basis(catalog("sl2")), unsupported_algebra_error);
    CHECK_THROWS_AS(orthonormalize_basis(catalog("heisenberg3")),
                    unsupported_algebra_error);
    CHECK_THROWS_AS(orthonormalize_basis(catalog("abelian:3")),
                    unsupported_algebra_error);
  }
  SECTION("surd arithmetic guards") {
    CHECK_THROWS_AS(Surd(Rat(1), Rat(-2)), invariant_violation);
    CHECK_THROWS_AS(Surd(Rat(1), Rat(2)) + Surd(Rat(1), Rat(3)), invariant_violation);
    CHECK(Surd(Rat(2), Rat(2)) * Surd(Rat(1), Rat(2)) == Surd(Rat(4), Rat(1)));
  }
}
