#pragma once

// Operad structure on brace trees and the comparison maps from the
// Gerstenhaber side:
//
//   * act: the symmetric-group action (pure relabeling; the edge order of a
//     planar tree does not depend on labels, so no Koszul sign appears),
//   * compose: iterated operadic insertion mu(T; S_1..S_t),
//   * GerMonomial / ger_basis: the monomial basis of the Gerstenhaber
//     operad — ordered products of Lie-bracket combs, each block listing
//     its largest label last, blocks sorted by largest label,
//   * j: the embedding of odd-Lie words as sums of string-shaped trees,
//   * m_t: the symmetrized iterated cup product,
//   * psi: the cocycle attached to a Gerstenhaber monomial.

#include "braceops/sign.hpp"
#include "braceops/tree.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace braceops {

// ---- Permutations -------------------------------------------------------------

struct Perm {
  std::vector<int> img;  // 1-based images: img[i-1] = sigma(i)

  static Perm identity(int n) {
    Perm p;
    p.img.resize(n);
    std::iota(p.img.begin(), p.img.end(), 1);
    return p;
  }

  int n() const { return static_cast<int>(img.size()); }
  int operator()(int i) const { return img[i - 1]; }

  Perm inverse() const {
    Perm p;
    p.img.resize(img.size());
    for (int i = 1; i <= n(); ++i) p.img[img[i - 1] - 1] = i;
    return p;
  }

  int sign() const {
    int inv = 0;
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (img[i] > img[j]) ++inv;
    return inv % 2 == 0 ? +1 : -1;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
};

// (a*b)(i) = a(b(i))
inline Perm compose(const Perm& a, const Perm& b) {
  Perm p;
  p.img.resize(b.img.size());
  for (int i = 1; i <= b.n(); ++i) p.img[i - 1] = a(b(i));
  return p;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = Perm::identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.img.begin(), p.img.end()));
  return out;
}

// ---- Relabeling action ---------------------------------------------------------

namespace detail {
inline Node act_node(const Perm& s, const Node& v) {
  Node out;
  out.label = v.label == 0 ? 0 : s(v.label);
  out.kids.reserve(v.kids.size());
  for (const Node& c : v.kids) out.kids.push_back(act_node(s, c));
  return out;
}
}  // namespace detail

inline BraceTree act(const Perm& s, const BraceTree& t) {
  if (s.n() != arity(t)) throw std::invalid_argument("act: permutation size != arity");
  return BraceTree::from_node_unchecked(detail::act_node(s, t.node()));
}

inline TreeVector act(const Perm& s, const TreeVector& v) {
  TreeVector out;
  for (const auto& [t, c] : v) out.emplace(act(s, t), c);
  return out;
}

// ---- Composition ---------------------------------------------------------------

inline int arity(const TreeVector& v) {
  if (v.empty()) throw std::invalid_argument("arity: the zero vector has no arity");
  int n = arity(v.begin()->first);
  for (const auto& [t, c] : v)
    if (arity(t) != n) throw std::invalid_argument("arity: inhomogeneous vector");
  return n;
}

// mu(T; S_1..S_t): insertions applied left to right with shifted slots.  The
// sign reference order (host edges, then guest edges, per insertion) makes
// the total reference the concatenation of all edge orders, so no extra
// signs appear between arguments.
inline TreeVector compose(const TreeVector& t, const std::vector<TreeVector>& args,
                          const SignConvention& conv) {
  if (static_cast<int>(args.size()) != arity(t))
    throw std::invalid_argument("compose: argument count != arity");
  TreeVector result = t;
  int pos = 1;
  for (const TreeVector& s : args) {
    result = insert(result, pos, s, conv);
    pos += arity(s);
  }
  return result;
}

inline TreeVector compose(const TreeVector& t, const std::vector<TreeVector>& args) {
  return compose(t, args, calibrated());
}

// ---- Named small trees ---------------------------------------------------------

inline BraceTree unit_tree() { return BraceTree::parse("(r (1))"); }
inline BraceTree cup_tree() { return BraceTree::parse("(r (* (1) (2)))"); }
inline BraceTree cup_tree_opp() { return BraceTree::parse("(r (* (2) (1)))"); }
inline BraceTree string_12() { return BraceTree::parse("(r (1 (2)))"); }
inline BraceTree string_21() { return BraceTree::parse("(r (2 (1)))"); }

// The odd-Lie bracket as a tree vector, and the symmetrized cup product.
inline TreeVector bracket_vector() {
  return TreeVector{{string_12(), Rat(1)}, {string_21(), Rat(1)}};
}
inline TreeVector cup_sym_vector() {
  return TreeVector{{cup_tree(), Rat(1, 2)}, {cup_tree_opp(), Rat(1, 2)}};
}

// ---- Gerstenhaber monomials ----------------------------------------------------

struct GerMonomial {
  // Each block is a bracket comb (i_1,...,i_p) = {a_{i_1},{...,{a_{i_{p-1}},a_{i_p}}...}}
  // with i_p the largest label of the block; blocks sorted by largest label.
  std::vector<std::vector<int>> blocks;

  int arity() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return n;
  }
  int degree() const { return -(arity() - static_cast<int>(blocks.size())); }

  std::string str() const {
    std::string s;
    for (const auto& b : blocks) {
      s += '{';
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(b[i]);
      }
      s += '}';
    }
    return s;
  }

  static GerMonomial parse(const std::string& text) {
    GerMonomial m;
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
      if (text[pos] != '{') throw std::invalid_argument("monomial parse: expected '{'");
      ++pos;
      std::vector<int> block;
      for (;;) {
        skip_ws();
        if (pos < text.size() && text[pos] == '}') {
          ++pos;
          break;
        }
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("monomial parse: expected label");
        block.push_back(std::stoi(text.substr(start, pos - start)));
      }
      if (block.empty()) throw std::invalid_argument("monomial parse: empty block");
      m.blocks.push_back(std::move(block));
      skip_ws();
    }
    if (m.blocks.empty()) throw std::invalid_argument("monomial parse: no blocks");
    m.validate();
    return m;
  }

  void validate() const {
    std::vector<int> all;
    int prev_max = 0;
    for (const auto& b : blocks) {
      if (b.empty()) throw std::invalid_argument("monomial: empty block");
      int mx = *std::max_element(b.begin(), b.end());
      if (b.back() != mx)
        throw std::invalid_argument("monomial: block must list its largest label last");
      if (mx <= prev_max)
        throw std::invalid_argument("monomial: blocks must be sorted by largest label");
      prev_max = mx;
      all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i] != static_cast<int>(i) + 1)
        throw std::invalid_argument("monomial: labels must be exactly {1..n}");
  }

  friend bool operator==(const GerMonomial&, const GerMonomial&) = default;
  friend bool operator<(const GerMonomial& a, const GerMonomial& b) {
    return a.blocks < b.blocks;
  }
};

namespace detail {

// All arrangements of the set `elems` with its maximum last.
inline std::vector<std::vector<int>> block_words(std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  int mx = elems.back();
  std::vector<int> rest(elems.begin(), elems.end() - 1);
  std::vector<std::vector<int>> out;
  std::sort(rest.begin(), rest.end());
  do {
    std::vector<int> w = rest;
    w.push_back(mx);
    out.push_back(std::move(w));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace detail

// The monomial basis of the Gerstenhaber operad in arity n (n! monomials),
// sorted by their text form.
inline std::vector<GerMonomial> ger_basis(int n) {
  if (n < 1) throw std::invalid_argument("ger_basis: arity must be >= 1");
  // Set partitions via restricted-growth strings.
  std::vector<std::vector<std::vector<int>>> partitions;
  std::vector<int> rgs(n, 0);
  auto emit = [&] {
    int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> part(nblocks);
    for (int i = 0; i < n; ++i) part[rgs[i]].push_back(i + 1);
    partitions.push_back(std::move(part));
  };
  struct Rec {
    int n;
    std::vector<int>& rgs;
    decltype(emit)& emit_fn;
    void operator()(int i, int mx) {
      if (i == n) {
        emit_fn();
        return;
      }
      for (int b = 0; b <= mx + 1; ++b) {
        rgs[i] = b;
        (*this)(i + 1, std::max(mx, b));
      }
    }
  } rec{n, rgs, emit};
  rec(0, -1);

  std::vector<GerMonomial> out;
  for (auto& part : partitions) {
    // order blocks by largest element
    std::sort(part.begin(), part.end(), [](const auto& a, const auto& b) {
      return *std::max_element(a.begin(), a.end()) < *std::max_element(b.begin(), b.end());
    });
    // cartesian product of per-block words
    std::vector<std::vector<std::vector<int>>> choices;
    for (const auto& b : part) choices.push_back(detail::block_words(b));
    std::vector<std::size_t> pick(choices.size(), 0);
    for (;;) {
      GerMonomial m;
      for (std::size_t i = 0; i < choices.size(); ++i) m.blocks.push_back(choices[i][pick[i]]);
      out.push_back(std::move(m));
      std::size_t q = choices.size();
      while (q > 0 && ++pick[q - 1] == choices[q - 1].size()) pick[--q] = 0;
      if (q == 0) break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GerMonomial& a, const GerMonomial& b) { return a.str() < b.str(); });
  return out;
}

// Dimension of the Gerstenhaber operad in arity n per cohomological degree.
inline std::map<int, int> ger_dims(int n) {
  std::map<int, int> out;
  for (const GerMonomial& m : ger_basis(n)) ++out[m.degree()];
  return out;
}

// ---- Odd-Lie expressions and the map j -----------------------------------------

// Binary bracket expression on distinct labels; label != 0 marks a leaf.
struct LieExpr {
  int label = 0;
  std::shared_ptr<const LieExpr> left, right;

  static LieExpr leaf(int label) {
    LieExpr e;
    e.label = label;
    return e;
  }
  static LieExpr bracket(LieExpr l, LieExpr r) {
    LieExpr e;
    e.left = std::make_shared<const LieExpr>(std::move(l));
    e.right = std::make_shared<const LieExpr>(std::move(r));
    return e;
  }
  bool is_leaf() const { return label != 0; }
};

// {a_{w1},{a_{w2},{...,a_{wp}}...}}
inline LieExpr right_comb(const std::vector<int>& w) {
  if (w.empty()) throw std::invalid_argument("right_comb: empty word");
  LieExpr e = LieExpr::leaf(w.back());
  for (int i = static_cast<int>(w.size()) - 2; i >= 0; --i)
    e = LieExpr::bracket(LieExpr::leaf(w[i]), std::move(e));
  return e;
}

// {{...{a_{w1},a_{w2}},...},a_{wp}}
inline LieExpr left_comb(const std::vector<int>& w) {
  if (w.empty()) throw std::invalid_argument("left_comb: empty word");
  LieExpr e = LieExpr::leaf(w.front());
  for (std::size_t i = 1; i < w.size(); ++i)
    e = LieExpr::bracket(std::move(e), LieExpr::leaf(w[i]));
  return e;
}

namespace detail {

// j on an expression in standard labels; returns the vector together with
// the position -> label list of the expression read left to right.
inline std::pair<TreeVector, std::vector<int>> j_std(const LieExpr& e,
                                                     const SignConvention& conv) {
  if (e.is_leaf())
    return {TreeVector{{unit_tree(), Rat(1)}}, {e.label}};
  auto [vl, ll] = j_std(*e.left, conv);
  auto [vr, lr] = j_std(*e.right, conv);
  TreeVector w = compose(bracket_vector(), {vl, vr}, conv);
  std::vector<int> labels = ll;
  labels.insert(labels.end(), lr.begin(), lr.end());
  return {std::move(w), std::move(labels)};
}

}  // namespace detail

// The embedding of an odd-Lie word as a sum of string-shaped trees: leaves
// map to the unit tree, brackets to composition with the two-string bracket.
inline TreeVector j(const LieExpr& e, const SignConvention& conv) {
  auto [v, labels] = detail::j_std(e, conv);
  Perm s;
  s.img = labels;
  // labels must be a permutation of {1..n}
  Perm check = s;
  std::sort(check.img.begin(), check.img.end());
  for (int i = 0; i < check.n(); ++i)
    if (check.img[i] != i + 1)
      throw std::invalid_argument("j: expression labels must be exactly {1..n}");
  return act(s, v);
}

inline TreeVector j(const LieExpr& e) { return j(e, calibrated()); }

// ---- The monomial cocycles psi --------------------------------------------------

// m_t: the symmetrized cup product composed with itself t-2 times at the
// first slot (arity t, degree 0).
inline TreeVector m_t(int t, const SignConvention& conv) {
  if (t < 2) throw std::invalid_argument("m_t: t must be >= 2");
  TreeVector result = cup_sym_vector();
  for (int s = 3; s <= t; ++s) result = insert(result, 1, cup_sym_vector(), conv);
  return result;
}

inline TreeVector m_t(int t) { return m_t(t, calibrated()); }

// psi(m): blocks map through j in standard labels, get multiplied with m_t,
// and the concatenated block word relabels positions back to true labels.
inline TreeVector psi(const GerMonomial& m, const SignConvention& conv) {
  m.validate();
  const int t = static_cast<int>(m.blocks.size());
  std::vector<int> concat;
  for (const auto& b : m.blocks) concat.insert(concat.end(), b.begin(), b.end());
  Perm s;
  s.img = concat;

  auto std_word = [](int p) {
    std::vector<int> w(p);
    std::iota(w.begin(), w.end(), 1);
    return w;
  };

  TreeVector v;
  if (t == 1) {
    v = j(right_comb(std_word(m.arity())), conv);
  } else {
    std::vector<TreeVector> parts;
    for (const auto& b : m.blocks)
      parts.push_back(j(right_comb(std_word(static_cast<int>(b.size()))), conv));
    v = compose(m_t(t, conv), parts, conv);
  }
  return act(s, v);
}

inline TreeVector psi(const GerMonomial& m) { return psi(m, calibrated()); }

}  // namespace braceops
