#include "braceops/tree.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace braceops;

TEST_CASE("parsing and canonical form") {
  BraceTree t = BraceTree::parse("  ( r ( 1 ( * (2)  (3) ) ) ) ");
  CHECK(t.str() == "(r (1 (* (2) (3))))");
  CHECK(t == BraceTree::parse("(r (1 (* (2) (3))))"));

  CHECK_THROWS(BraceTree::parse("(r (1) (2))"));       // root must have one child
  CHECK_THROWS(BraceTree::parse("(r (1 (1)))"));       // duplicate label
  CHECK_THROWS(BraceTree::parse("(r (1 (3)))"));       // labels not 1..n
  CHECK_THROWS(BraceTree::parse("(r (* (1)))"));       // neutral needs two children
  CHECK_THROWS(BraceTree::parse("(r (*))"));           // bare neutral leaf
  CHECK_THROWS(BraceTree::parse("(r (1)) trailing"));  // junk after tree
  CHECK_THROWS(BraceTree::parse("(x (1))"));           // unknown root token
}

TEST_CASE("round trip through nodes") {
  for (const char* s : {"(r (1))", "(r (* (1) (2)))", "(r (2 (* (3) (1)) (4)))"}) {
    BraceTree t = BraceTree::parse(s);
    CHECK(BraceTree::from_node(t.node()) == t);
  }
}

TEST_CASE("tree statistics") {
  BraceTree t = BraceTree::parse("(r (* (1 (2)) (* (3) (4))))");
  CHECK(arity(t) == 4);
  CHECK(neutral_count(t) == 2);
  CHECK(degree(t) == -1);
  CHECK(dual_degree(t) == 1);
  CHECK(num_edges(t) == 5);
  CHECK(is_vbul(t));
  CHECK(!is_vcirc(t));
  CHECK(filtration_level(t) == 2);

  BraceTree s = BraceTree::parse("(r (1 (2) (3)))");
  CHECK(is_vcirc(s));
  CHECK(filtration_level(s) == 2);
  CHECK(degree(s) == -2);
}

TEST_CASE("basis enumeration counts") {
  // arity 1: one tree; arity 2: two strings and two cups
  CHECK(enumerate_basis(1).size() == 1);
  std::vector<BraceTree> b2 = enumerate_basis(2);
  REQUIRE(b2.size() == 4);
  std::set<std::string> got;
  for (const BraceTree& t : b2) got.insert(t.str());
  CHECK(got == std::set<std::string>{"(r (1 (2)))", "(r (2 (1)))", "(r (* (1) (2)))",
                                     "(r (* (2) (1)))"});

  CHECK(enumerate_basis(3).size() == 48);
  CHECK(enumerate_basis(4).size() == 960);

  // neutral-free trees: planar rooted trees on n labeled vertices,
  // i.e. Catalan(n-1) * n!
  CHECK(enumerate_basis(3, 1 - 3).size() == 12);
  CHECK(enumerate_basis(4, 1 - 4).size() == 120);

  // sector split partitions the basis
  CHECK(enumerate_basis(3, std::nullopt, Sector::vcirc).size() +
            enumerate_basis(3, std::nullopt, Sector::vbul).size() ==
        48);

  // degree slices partition the basis
  size_t total = 0;
  for (int d = -3; d <= 0; ++d) total += enumerate_basis(4, d).size();
  CHECK(total == 960);

  // enumeration is sorted and duplicate-free
  std::vector<BraceTree> b3 = enumerate_basis(3);
  CHECK(std::is_sorted(b3.begin(), b3.end()));
  CHECK(std::adjacent_find(b3.begin(), b3.end()) == b3.end());
}

TEST_CASE("degree bookkeeping matches the edge count") {
  for (const BraceTree& t : enumerate_basis(3)) {
    CHECK(num_edges(t) == arity(t) + neutral_count(t) - 1);
    CHECK(degree(t) + dual_degree(t) == 0);
  }
}

TEST_CASE("tree vector arithmetic") {
  TreeVector v;
  BraceTree a = BraceTree::parse("(r (1 (2)))");
  BraceTree b = BraceTree::parse("(r (2 (1)))");
  tv_add(v, a, Rat(1));
  tv_add(v, b, Rat(-2));
  tv_add(v, a, Rat(-1));  // cancels: zero coefficients are erased
  REQUIRE(v.size() == 1);
  CHECK(v.at(b) == Rat(-2));
  TreeVector w = tv_scale(Rat(1, 2), v);
  CHECK(w.at(b) == Rat(-1));
  CHECK(tv_sub(v, v).empty());
  CHECK(tv_str(w) == "-1 (r (2 (1)))");
}
