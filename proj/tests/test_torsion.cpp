#include <catch2/catch_amalgamated.hpp>

#include "spencer/liealg/catalog.hpp"
#include "spencer/torsion/torsion.hpp"

using namespace spencer;
using namespace spencer::torsion;
using derham::base_model;
using liealg::catalog;

TEST_CASE("invariant dimensions used by the count") {
  auto su2 = catalog("su2");
  CHECK(invariants_dimension(su2, 1) == 0);
  CHECK(invariants_dimension(su2, 2) == 1);  // the Casimir line
  CHECK(invariants_dimension(su2, 3) == 0);
  CHECK(invariants_dimension(su2, 4) == 1);  // Casimir squared
}

TEST_CASE("closed-form count on the two-torus with su2") {
  auto base = base_model("torus:2:3");
  auto g = catalog("su2");

  SECTION("k = 4: exactly the Casimir term") {
    auto rep = torsion_case1(base, g, 4, "formal");
    CHECK(rep.total_dim == 1);
    CHECK(rep.classical_dim == 0);  // betti stops at degree 2
    REQUIRE(rep.terms.size() == 2);
    // terms ordered by j: (i=2, j=1) then (i=0, j=2)
    CHECK(rep.terms[0].i == 2);
    CHECK(rep.terms[0].j == 1);
    CHECK(rep.terms[0].inv_dim_j == 0);
    CHECK(rep.terms[0].contribution == 0);
    CHECK(rep.terms[1].i == 0);
    CHECK(rep.terms[1].j == 2);
    CHECK(rep.terms[1].contribution == 1);
    auto w = weight_decomposition(rep);
    CHECK(w == std::map<int, long long>{{1, 0}, {2, 1}});
  }

  SECTION("k = 2: adjoint invariants vanish in weight one") {
    auto rep = torsion_case1(base, g, 2, "formal");
    CHECK(rep.total_dim == 0);
    CHECK(rep.classical_dim == 1);
  }

  SECTION("proof-form strides disagree with the statement form at k = 4") {
    auto rep = torsion_case1(base, g, 4, "formal");
    // sum over p<4 of b_p * inv(4-p) = 1*inv(4) + 2*inv(3) + 1*inv(2) = 2
    CHECK(rep.proof_form_total == 2);
    CHECK_FALSE(rep.forms_agree);
  }

  SECTION("ring mode prunes powers the ring kills") {
    // torus:2 exterior class: j=2 power is zero (top class squared)
    auto formal = torsion_case1(base, g, 4, "formal");
    auto ring = torsion_case1(base, g, 4, "ring");
    CHECK(ring.total_dim == 0);  // the j=2 term dies with the cup power
    CHECK(ring.total_dim <= formal.total_dim);
    REQUIRE(ring.terms.size() == 2);
    CHECK_FALSE(ring.terms[1].marker_nonzero);
  }
}

TEST_CASE("ring pruning is monotone on a truncated-power base") {
  auto base = base_model("quintic");
  auto g = catalog("su2");
  for (int k = 0; k <= 8; k += 2) {
    auto formal = torsion_case1(base, g, k, "formal");
    auto ring = torsion_case1(base, g, k, "ring");
    INFO("k=" << k);
    CHECK(ring.total_dim <= formal.total_dim);
  }
  // k = 8: j = 4 exceeds max_power 3, so only pruned terms differ
  auto f8 = torsion_case1(base, g, 8, "formal");
  auto r8 = torsion_case1(base, g, 8, "ring");
  // terms: (i=6,j=1):inv=0, (i=4,j=2):1*1, (i=2,j=3):1*0, (i=0,j=4):1*1
  CHECK(f8.total_dim == 2);
  CHECK(r8.total_dim == 1);  // h^4 = 0 kills the j=4 term
}

TEST_CASE("formal bases refuse ring mode") {
  auto base = base_model("formal:1,2,1");
  CHECK_THROWS_AS(torsion_case1(base, catalog("su2"), 4, "ring"), input_error);
  CHECK_THROWS_AS(torsion_case1(base, catalog("su2"), -1, "formal"), input_error);
  CHECK_THROWS_AS(torsion_case1(base, catalog("su2"), 4, "exact"), input_error);
}

TEST_CASE("classical part is the base betti number, range-checked") {
  auto t2 = base_model("torus:2:3");
  CHECK(classical_part(t2, 1) == 2);
  CHECK(classical_part(base_model("quintic"), 3) == 204);
  CHECK_THROWS_AS(classical_part(t2, 3), input_error);
  CHECK_THROWS_AS(classical_part(t2, -1), input_error);
}

TEST_CASE("filtration route: degree bound is enforced") {
  auto base = base_model("formal:1,2,1");
  auto K = specseq::build_double_complex(base.complex,
                                         specseq::ce_vertical(catalog("su2"), 0), "t");
  auto pages = specseq::compute_pages(K);
  CHECK_THROWS_AS(torsion_case2(pages, 99), input_error);
  CHECK_THROWS_AS(torsion_case2(pages, -1), input_error);
  // k = 0 counts nothing left of column 0
  CHECK(torsion_case2(pages, 0) == 0);
}

TEST_CASE("both routes side by side") {
  auto base = base_model("formal:1,2,1");
  auto g = catalog("su2");
  auto run = torsion_run(base, g, 4, 2, "formal");
  CHECK(run.case1.total_dim == 1);
  CHECK(run.classical == 0);
  REQUIRE(run.slices.size() == 3);
  for (const auto& s : run.slices) CHECK(s.degeneration_page <= base.n + 1);

  // with zero differentials the filtration count is a Kunneth convolution:
  // slice j contributes sum_{p<4} b_p * dim H^{4-p}(g, Sym^j g)
  // j=0: H(su2) = (1,0,0,1): p=1 -> 2*1 = 2 ; j=1: 0 ; j=2: p=1 -> 2
  CHECK(run.slices[0].contribution == 2);
  CHECK(run.slices[1].contribution == 0);
  CHECK(run.slices[2].contribution == 2);
  CHECK(run.case2_total == 4);

  // classical column: E_inf^{4,0} is off the 2-complex, betti_4 = 0
  CHECK(run.classical_matches_page);
}

TEST_CASE("classical column matches the zero-weight page corner") {
  auto base = base_model("torus:2:3");
  auto run = torsion_run(base, catalog("su2"), 2, 1, "formal");
  CHECK(run.classical == 1);
  CHECK(run.classical_matches_page);
}

TEST_CASE("negative kmax is rejected") {
  CHECK_THROWS_AS(torsion_run(base_model("formal:1,1"), catalog("su2"), 1, -1, "formal"),
                  input_error);
}
