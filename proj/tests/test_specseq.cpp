#include <catch2/catch_amalgamated.hpp>

#include "spencer/derham/base_model.hpp"
#include "spencer/liealg/catalog.hpp"
#include "spencer/specseq/double_complex.hpp"
#include "spencer/specseq/pages.hpp"

using namespace spencer;
using namespace spencer::specseq;
using derham::base_model;
using liealg::catalog;

/* One-dimensional cells x:(0,1), w:(1,0), y:(1,1), z:(2,0) with
 * dh x = y, dv w = -y, dh w = z force a nonzero d_2: the class of x
 * survives to E_2 and maps onto the class of z. */
static DoubleComplex staircase() {
  DoubleComplex K;
  K.name = "staircase";
  K.pmax = 2;
  K.qmax = 1;
  K.dim = {{0, 1}, {1, 1}, {1, 0}};
  K.dh.assign(3, std::vector<SparseMat>(2));
  K.dv.assign(3, std::vector<SparseMat>(2));
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 1; ++q) {
      K.dh[p][q] = SparseMat(p < 2 ? K.dim[p + 1][q] : 0, K.dim[p][q]);
      K.dv[p][q] = SparseMat(q < 1 ? K.dim[p][q + 1] : 0, K.dim[p][q]);
    }
  K.dh[0][1].set(0, 0, Rat(1));   // x -> y
  K.dv[1][0].set(0, 0, Rat(-1));  // w -> -y
  K.dh[1][0].set(0, 0, Rat(1));   // w -> z
  return K;
}

TEST_CASE("staircase fixture: identities hold, d_2 is nonzero") {
  auto K = staircase();
  REQUIRE(K.check_identities().ok());
  auto res = compute_pages(K);

  // E_1 = E_2: classes of x at (0,1) and z at (2,0)
  const auto& E2 = res.pages.at(1);
  REQUIRE(E2.r == 2);
  CHECK(E2.dim[0][1] == 1);
  CHECK(E2.dim[2][0] == 1);
  CHECK(E2.dim[1][0] == 0);
  CHECK(E2.dim[1][1] == 0);
  CHECK(E2.rank_out[0][1] == 1);  // the d_2 arrow

  // E_3 = 0 everywhere, so degeneration happens at page 3
  const auto& E3 = res.pages.at(2);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 1; ++q) CHECK(E3.dim[p][q] == 0);
  CHECK(res.degeneration_page == 3);

  // the total complex is exact, and both routes agree on that
  CHECK(res.total_betti == std::vector<int>{0, 0, 0, 0});
  CHECK(res.totals_match);
  for (const auto& row : res.einf)
    for (int e : row) CHECK(e == 0);
}

TEST_CASE("identity checker pins the first broken cell") {
  // Add a cell u at (0,0) with dv u = -x and dh u = 0: the square
  // through (0,1) gives dh(dv u) = -y with no cancelling partner.
  auto K = staircase();
  K.dim[0][0] = 1;
  K.dh[0][0] = SparseMat(K.dim[1][0], 1);
  K.dv[0][0] = SparseMat(K.dim[0][1], 1);
  K.dv[0][0].set(0, 0, Rat(-1));
  auto rep = K.check_identities();
  CHECK_FALSE(rep.ok());
  CHECK(rep.dh_squares_to_zero);
  CHECK(rep.dv_squares_to_zero);
  CHECK_FALSE(rep.anticommute);
  CHECK(rep.first_failure == "d_h.d_v + d_v.d_h != 0 at (0,0)");
}

TEST_CASE("tensor double complexes: identities by construction") {
  auto base = base_model("torus:2:3");
  auto g = catalog("su2");
  auto K = build_double_complex(base.complex, ce_vertical(g, 2), "t2xsu2");
  CHECK(K.check_identities().ok());
  CHECK(K.dim_at(0, 1) == 162);  // 9 functions x 18 one-cochain slots
  CHECK(K.dim_at(2, 3) == 54);   // 9 two-forms x 6 top cochains
}

TEST_CASE("kunneth: products degenerate at E_2 with product dimensions") {
  auto base = base_model("torus:2:3");
  auto g = catalog("su2");

  SECTION("trivial weight: E_2 = betti x (1,0,0,1)") {
    auto K = build_double_complex(base.complex, ce_vertical(g, 0), "k0");
    auto res = compute_pages(K);
    const int hq[4] = {1, 0, 0, 1};
    const auto& E2 = res.pages.at(1);
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; q <= 3; ++q) CHECK(E2.dim[p][q] == base.betti[p] * hq[q]);
    CHECK(res.degeneration_page == 2);
    CHECK(res.totals_match);
    CHECK(res.total_betti == std::vector<int>{1, 2, 1, 1, 2, 1});
  }

  SECTION("adjoint weight: everything vanishes") {
    auto K = build_double_complex(base.complex, ce_vertical(g, 1), "k1");
    auto res = compute_pages(K);
    CHECK(res.total_betti == std::vector<int>{0, 0, 0, 0, 0, 0});
    CHECK(res.totals_match);
  }
}

TEST_CASE("weight-graded vertical: cutoff grid dimensions") {
  auto base = base_model("torus:2:3");
  auto g = catalog("su2");
  auto build = build_spencer_double(base, g, 2, "spencer", sym::DiffMode::KillingDual);
  REQUIRE(build.ks == std::vector<int>{2});
  REQUIRE(build.slices.size() == 1);
  const auto& K = build.slices[0];
  CHECK(K.qmax == 2);
  CHECK(K.dim_at(1, 2) == 108);  // 18 one-forms x dim Sym^2 = 6
  CHECK(K.dim_at(0, 0) == 9);
  auto res = compute_pages(K);
  CHECK(res.totals_match);
  CHECK(res.degeneration_page <= base.n + 1);
}

TEST_CASE("cochain vertical: one slice per weight") {
  auto base = base_model("formal:1,2,1");
  auto g = catalog("sl2");
  auto build = build_spencer_double(base, g, 2, "ce", sym::DiffMode::KillingDual);
  CHECK(build.ks == std::vector<int>{0, 1, 2});
  REQUIRE(build.slices.size() == 3);
  for (const auto& K : build.slices) {
    auto res = compute_pages(K);
    CHECK(res.totals_match);
    CHECK(res.degeneration_page <= base.n + 1);
  }
}

TEST_CASE("filtration table: column 0 reproduces total cohomology") {
  auto base = base_model("torus:2:3");
  auto K = build_double_complex(base.complex, ce_vertical(catalog("su2"), 0), "f");
  auto res = compute_pages(K);
  auto filt = filtration_table(res);
  REQUIRE((int)filt.size() == (int)res.total_betti.size());
  for (std::size_t m = 0; m < filt.size(); ++m) {
    CHECK(filt[m][0] == res.total_betti[m]);
    for (std::size_t p = 0; p + 1 < filt[m].size(); ++p)
      CHECK(filt[m][p] >= filt[m][p + 1]);  // nested filtration
  }
}

TEST_CASE("surviving classes are honest total-complex cocycles") {
  auto base = base_model("torus:2:3");
  auto K = build_double_complex(base.complex, ce_vertical(catalog("su2"), 0), "reps");
  auto res = compute_pages(K);
  auto tot = K.total();
  int found = 0;
  for (int p = 0; p <= K.pmax; ++p)
    for (int q = 0; q <= K.qmax; ++q)
      for (const auto& rep : res.reps[p][q]) {
        const int m = p + q;
        REQUIRE_FALSE(rep.empty());
        if (m < tot.top()) CHECK(tot.d[m].apply(rep).empty());
        ++found;
      }
  int einf_total = 0;
  for (const auto& row : res.einf)
    for (int e : row) einf_total += e;
  CHECK(found == einf_total);
}

TEST_CASE("vertical complexes that fail nilpotency are refused up front") {
  auto base = base_model("torus:2:3");
  // raw-mode sl2 has delta^2 != 0
  CHECK_THROWS_AS(
      build_double_complex(base.complex, spencer_vertical(catalog("sl2"), 3, sym::DiffMode::Raw),
                           "bad"),
      input_error);
}

TEST_CASE("vertical mode strings are validated") {
  auto base = base_model("formal:1,1");
  CHECK_THROWS_AS(
      build_spencer_double(base, catalog("su2"), 1, "diagonal", sym::DiffMode::KillingDual),
      input_error);
  CHECK_THROWS_AS(
      build_spencer_double(base, catalog("su2"), 0, "ce", sym::DiffMode::KillingDual),
      input_error);
}
