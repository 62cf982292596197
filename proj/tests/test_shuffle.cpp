#include "braceops/shuffle.hpp"

#include "braceops/operad.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace braceops;

TEST_CASE("signed riffle shuffles") {
  // empty word is the unit
  WordVector u = shuffle(Word{}, Word{1});
  REQUIRE(u.size() == 1);
  CHECK(u.at(Word{1}) == Rat(1));

  // crossing letters pick up the sign of the interleaving
  WordVector s = shuffle(Word{1}, Word{2});
  CHECK(s.at(Word{1, 2}) == Rat(1));
  CHECK(s.at(Word{2, 1}) == Rat(-1));

  // (1)(23): three interleavings with one crossing each time 1 moves right
  WordVector t = shuffle(Word{1}, Word{2, 3});
  CHECK(t.at(Word{1, 2, 3}) == Rat(1));
  CHECK(t.at(Word{2, 1, 3}) == Rat(-1));
  CHECK(t.at(Word{2, 3, 1}) == Rat(1));

  // shuffle of two-letter words: 4 choose 2 terms
  CHECK(shuffle(Word{1, 2}, Word{3, 4}).size() == 6);
}

TEST_CASE("word formatting") {
  CHECK(word_str(Word{}) == "1");
  CHECK(word_str(Word{2, 1}) == "X2.X1");
}

TEST_CASE("branch map on neutral-free trees") {
  // label over two leaves: prepend the label to the shuffle of the branches
  WordVector v = f_map(BraceTree::parse("(r (1 (2) (3)))"));
  CHECK(v.at(Word{1, 2, 3}) == Rat(1));
  CHECK(v.at(Word{1, 3, 2}) == Rat(-1));

  // the documented four-label example
  WordVector w = f_map(BraceTree::parse("(r (1 (2 (3)) (4)))"));
  CHECK(w.at(Word{1, 2, 3, 4}) == Rat(1));
  CHECK(w.at(Word{1, 2, 4, 3}) == Rat(-1));
  CHECK(w.at(Word{1, 4, 2, 3}) == Rat(1));
  CHECK(w.size() == 3);

  CHECK_THROWS(f_map(cup_tree()));  // neutral vertices are not allowed

  // g extends f by zero on trees with neutral vertices
  TreeVector mix{{cup_tree(), Rat(5)}, {string_12(), Rat(1)}};
  WordVector g = g_map(mix);
  CHECK(g == f_map(string_12()));
}

TEST_CASE("string and fork trees") {
  CHECK(string_tree(Word{3, 1, 2}) == BraceTree::parse("(r (3 (1 (2))))"));
  CHECK(fork_tree({Word{1}, Word{2}}) == cup_tree());
  CHECK(fork_tree({Word{2, 1}, Word{3}}) ==
        BraceTree::parse("(r (* (2 (1)) (3)))"));
  CHECK_THROWS(fork_tree({Word{1, 2}}));  // a fork needs at least two branches

  CHECK(corolla(3) == BraceTree::parse("(r (* (1) (2) (3)))"));
  CHECK(corolla_merged(3, 1) == BraceTree::parse("(r (* (1 (2)) (3)))"));
  CHECK(corolla_merged(3, 2) == BraceTree::parse("(r (* (1) (2 (3))))"));
}

TEST_CASE("fork antisymmetrization") {
  TreeVector y = fork_antisymmetrization({Word{1}, Word{2}});
  TreeVector expected;
  tv_add(expected, cup_tree(), Rat(1, 2));
  tv_add(expected, cup_tree_opp(), Rat(-1, 2));
  CHECK(y == expected);

  // swapping two branches of even word length costs nothing
  TreeVector z = fork_antisymmetrization({Word{1, 2}, Word{3, 4}});
  CHECK(z.at(fork_tree({Word{1, 2}, Word{3, 4}})) ==
        z.at(fork_tree({Word{3, 4}, Word{1, 2}})));
}

TEST_CASE("fork generator families") {
  CHECK(xi_generators(2).size() == 1);
  CHECK(xi_generators(3).size() == 4);
  CHECK(xi_generators(4).size() == 18);
  for (const ForkGenerator& g : xi_generators(3)) {
    // admissible: every branch lists its smallest letter first and the
    // first letters increase across branches
    for (const Word& b : g.branches) {
      REQUIRE(!b.empty());
      CHECK(*std::min_element(b.begin(), b.end()) == b.front());
    }
    for (size_t i = 0; i + 1 < g.branches.size(); ++i)
      CHECK(g.branches[i].front() < g.branches[i + 1].front());
  }
}

TEST_CASE("cofree Lie coalgebra dimensions") {
  CHECK(colie_dim(2) == 1);
  CHECK(colie_dim(3) == 2);
  CHECK(colie_dim(4) == 6);
  CHECK(colie_dim(5) == 24);
}
