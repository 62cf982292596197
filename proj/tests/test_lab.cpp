#include "braceops/lab.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace braceops;

TEST_CASE("complex assembly") {
  AssembledComplex ac = assemble(3, Complex::br);
  CHECK(ac.gc.dims == std::map<int, int>{{-2, 12}, {-1, 24}, {0, 12}});

  // sector complexes partition the dimensions degree by degree
  AssembledComplex vc = assemble(3, Complex::vcirc);
  AssembledComplex vb = assemble(3, Complex::vbul);
  for (const auto& [deg, dim] : ac.gc.dims)
    CHECK(dim == vc.gc.dim_at(deg) + vb.gc.dim_at(deg));

  // dual complexes mirror the dimensions at negated degree
  AssembledComplex dual = assemble(3, Complex::br_dual);
  for (const auto& [deg, dim] : ac.gc.dims) CHECK(dual.gc.dim_at(-deg) == dim);
}

TEST_CASE("dual differential matrices are the primal transposes") {
  for (int n = 2; n <= 3; ++n) {
    AssembledComplex ac = assemble(n, Complex::br);
    AssembledComplex dual = assemble(n, Complex::br_dual);
    for (const auto& [deg, m] : ac.gc.d) {
      if (m.rows == 0 || m.cols == 0) continue;
      // primal d: deg -> deg+1 pairs with dual d: -(deg+1) -> -deg
      const RationalMatrix& dt = dual.gc.d.at(-(deg + 1));
      RationalMatrix tr = m.transpose();
      REQUIRE(dt.rows == tr.rows);
      REQUIRE(dt.cols == tr.cols);
      CHECK(dt.row == tr.row);
    }
  }
}

TEST_CASE("cohomology of the full complex matches the Gerstenhaber dimensions") {
  for (int n = 1; n <= 3; ++n) {
    INFO(n);
    CHECK(h_br(n) == ger_dims(n));
    CHECK(euler_check(n).ok());
  }
}

TEST_CASE("labeled-bottom dual sector is concentrated with string classes") {
  for (int n = 2; n <= 3; ++n) {
    VcircDualReport r = verify_vcirc_dual(n);
    INFO(n);
    CHECK(r.h == std::map<int, int>{{n - 1, factorial(n)}});
    CHECK(r.concentrated);
    CHECK(r.strings_independent);
    CHECK(r.reductions_ok);
    CHECK(r.reductions_checked > 0);
  }
}

TEST_CASE("neutral-bottom sector cohomology matches its prediction") {
  VbulReport r2 = verify_vbul(2);
  CHECK(r2.h == std::map<int, int>{{0, 2}});
  VbulReport r3 = verify_vbul(3);
  CHECK(r3.h == std::map<int, int>{{-1, 7}, {0, 1}});
  CHECK(r2.ok());
  CHECK(r3.ok());
  CHECK(h_vbul_prediction(4) == std::map<int, int>{{-2, 29}, {-1, 6}, {0, 1}});
}

TEST_CASE("spectral sequence degenerates at the second page") {
  SpectralReport r = spectral_pages(3);
  REQUIRE(r.pages.count(1));
  REQUIRE(r.pages.count(2));
  REQUIRE(r.pages.count(3));

  using PQ = std::map<std::pair<int, int>, int>;
  CHECK(r.pages.at(1) == PQ{{{2, -1}, 6}, {{2, 0}, 6}, {{3, -1}, 6}});
  CHECK(r.pages.at(2) == PQ{{{2, -1}, 6}, {{2, 0}, 1}, {{3, -1}, 1}});
  CHECK(r.pages.at(3) == r.pages.at(2));
  CHECK(r.e1_ok);
  CHECK(r.e2_ok);
  CHECK(r.stable_from_2);
  CHECK(r.einf_matches_h);
}

TEST_CASE("corolla completion at arity three") {
  UqReport r = verify_u_q(3, 3, {1, 1, 1});
  CHECK(r.in_low_filtration);
  CHECK(r.completion_found);
}

TEST_CASE("two-branch fork classes satisfy the shuffle relation") {
  for (int n = 2; n <= 3; ++n) {
    ShuffleClaimReport r = verify_shuffle_claim(n);
    INFO(n);
    CHECK(r.pairs_checked == (n - 1) * factorial(n));
    CHECK(r.cocycles_ok);
    CHECK(r.pairings_ok);
    CHECK(r.memberships_ok);
  }
}

TEST_CASE("fork generators represent independent classes") {
  for (int n = 2; n <= 3; ++n) {
    XiReport r = verify_xi(n);
    INFO(n);
    CHECK(r.count == r.expected_count);
    CHECK(r.cocycles_ok);
    CHECK(r.independent_mod_image);
    CHECK(r.g_injective);
    CHECK(r.colie == r.expected_colie);
  }
}

TEST_CASE("word-side behaviour of the dual differential") {
  for (int n = 2; n <= 3; ++n) {
    WordsReport r = verify_words(n);
    INFO(n);
    CHECK(r.g_kills_d0);
    CHECK(r.leading_formula_ok);
  }
}

TEST_CASE("Gerstenhaber relations hold up to homotopy") {
  GerRelationsReport r = verify_ger_relations();
  CHECK(r.jacobi_zero);
  CHECK(r.assoc_homotopy);
  CHECK(r.leibniz_homotopy);
  CHECK(r.leibniz_cup_exact);
}

TEST_CASE("final assembly from sectors") {
  for (int n = 2; n <= 3; ++n) {
    FinalReport r = verify_final_assembly(n);
    INFO(n);
    CHECK(r.h_matches_ger);
    CHECK(r.ker_connecting == factorial(n - 1));
    CHECK(r.sector_assembly_ok);
    CHECK(r.psi_independent);
    CHECK(r.lie_images_ok);
  }
}

TEST_CASE("axiom battery") {
  DgAxiomsReport r = verify_dg_axioms(3);
  CHECK(r.delta_squared_zero);
  CHECK(r.leibniz);
  CHECK(r.dual_is_transpose);
  CHECK(r.act_commutes);
}

TEST_CASE("prediction helpers") {
  CHECK(stirling_cycles(4, 1) == 6);
  CHECK(stirling_cycles(4, 2) == 11);
  CHECK(stirling_cycles(4, 3) == 6);
  CHECK(stirling_cycles(4, 4) == 1);
  CHECK(factorial(5) == 120);

  using PQ = std::map<std::pair<int, int>, int>;
  CHECK(e1_prediction(2) == PQ{{{2, 0}, 2}});
  CHECK(e2_prediction(2) == PQ{{{2, 0}, 2}});
}
