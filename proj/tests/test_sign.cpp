#include "braceops/sign.hpp"

#include "braceops/operad.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace braceops;

TEST_CASE("calibration finds exactly one convention") {
  SignConvention conv = calibrate();  // throws unless the winner is unique
  CHECK(sign_convention_str(conv) ==
        "slot=front below=+1 above=+1 split=+1 order=host-first insert=+1");
  CHECK(conv == calibrated());
}

TEST_CASE("every embedded fixture reproduces") {
  for (const corpus::Entry& e : corpus::entries) {
    Fixture f = parse_fixture(e.name, e.text);
    INFO(e.name);
    CHECK(eval_fixture(f, calibrated()) == f.expected);
  }
}

TEST_CASE("fixture parser") {
  Fixture f = parse_fixture("demo", R"(# comment
op delta
in +1 (r (1 (2)))
out -1 (r (* (1) (2)))
out +1/2 (r (* (2) (1)))
)");
  CHECK(f.op == "delta");
  CHECK(f.in == TreeVector{{BraceTree::parse("(r (1 (2)))"), Rat(1)}});
  REQUIRE(f.expected.size() == 2);
  CHECK(f.expected.at(BraceTree::parse("(r (* (1) (2)))")) == Rat(-1));
  CHECK(f.expected.at(BraceTree::parse("(r (* (2) (1)))")) == Rat(1, 2));
}

TEST_CASE("differential squares to zero") {
  for (int n = 1; n <= 3; ++n)
    for (const BraceTree& t : enumerate_basis(n)) {
      INFO(t.str());
      CHECK(delta(delta(t)).empty());
    }
}

TEST_CASE("differential respects the sector grading") {
  for (const BraceTree& t : enumerate_basis(3)) {
    auto [d0, d1] = delta_split(t);
    TreeVector together = d0;
    tv_add(together, d1);
    CHECK(together == delta(t));
    for (const auto& [s, c] : d0) CHECK(is_vbul(s) == is_vbul(t));
    for (const auto& [s, c] : d1) {
      CHECK(is_vcirc(t));
      CHECK(is_vbul(s));
    }
    for (const auto& [s, c] : delta(t)) CHECK(degree(s) == degree(t) + 1);
  }
}

TEST_CASE("known differential of the string") {
  TreeVector d = delta(string_12());
  REQUIRE(d.size() == 2);
  CHECK(d.at(cup_tree()) == Rat(1));
  CHECK(d.at(cup_tree_opp()) == Rat(-1));
}

TEST_CASE("the bracket is a cocycle") { CHECK(delta(bracket_vector()).empty()); }

TEST_CASE("contractions enumerate mergeable edges") {
  // one neutral over two leaves: two contractible edges (the lower two);
  // the root edge never contracts and labeled-labeled edges never contract
  auto c = contractions(cup_tree());
  REQUIRE(c.size() == 2);
  CHECK(c[0].first == BraceTree::parse("(r (1 (2)))"));
  CHECK(c[0].second == 0);
  CHECK(c[1].first == BraceTree::parse("(r (2 (1)))"));
  CHECK(c[1].second == 1);
  CHECK(contractions(string_12()).empty());
}

TEST_CASE("dual differential is the transpose, against independent expansion") {
  for (int n = 1; n <= 3; ++n)
    for (const BraceTree& t : enumerate_basis(n)) {
      INFO(t.str());
      CHECK(delta_dual(t, calibrated()) == delta_dual_expand(t));
    }
}

TEST_CASE("dual differential, coefficient by coefficient") {
  // <delta*(S), T> == <S, delta(T)> over a full arity
  for (const BraceTree& s : enumerate_basis(2)) {
    TreeVector ds = delta_dual(s, calibrated());
    for (const BraceTree& t : enumerate_basis(2)) {
      Rat lhs(0), rhs(0);
      auto it = ds.find(t);
      if (it != ds.end()) lhs = it->second;
      TreeVector dt = delta(t);
      auto jt = dt.find(s);
      if (jt != dt.end()) rhs = jt->second;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("graded Leibniz rule for insertions") {
  for (const BraceTree& a : enumerate_basis(2))
    for (const BraceTree& b : enumerate_basis(2))
      for (int i = 1; i <= 2; ++i) {
        TreeVector lhs = delta(insert_tree(a, i, b));
        TreeVector rhs = insert(delta(a), i, TreeVector{{b, Rat(1)}});
        tv_add(rhs, insert(TreeVector{{a, Rat(1)}}, i, delta(b)),
               Rat(degree(a) % 2 == 0 ? 1 : -1));
        INFO(a.str() << " o_" << i << " " << b.str());
        CHECK(lhs == rhs);
      }
}

TEST_CASE("insertion at a leaf slot grafts below") {
  // inserting the two-vertex string into slot 2 of the upward string
  TreeVector got = insert_tree(string_12(), 2, string_12());
  REQUIRE(got.size() == 1);
  CHECK(got.begin()->first == BraceTree::parse("(r (1 (2 (3))))"));
  CHECK(got.begin()->second == Rat(1));
}

TEST_CASE("unit tree is a two-sided unit") {
  BraceTree one = BraceTree::parse("(r (1))");
  for (const BraceTree& t : enumerate_basis(3)) {
    for (int i = 1; i <= 3; ++i) {
      TreeVector v = insert_tree(t, i, one);
      REQUIRE(v.size() == 1);
      CHECK(v.begin()->first == t);
      CHECK(v.begin()->second == Rat(1));
    }
    TreeVector w = insert_tree(one, 1, t);
    REQUIRE(w.size() == 1);
    CHECK(w.begin()->first == t);
    CHECK(w.begin()->second == Rat(1));
  }
}
