#pragma once

// Signed differential and operadic insertion for brace trees.
//
// All odd edges (every edge except the root edge) have homological degree
// -1, so each elementary operation carries a Koszul sign.  The engine makes
// that sign computable and auditable:
//
//   * every vertex of an input tree is tagged with the pre-order rank of
//     its parent edge (1..m); a newly created edge gets rank 0 ("front"
//     slot) or m+1 ("back");
//   * after the surgery, the tags are read off the result in pre-order and
//     the sign is the parity of that rank sequence.
//
// The same scheme covers insertion: host-tree edges are ranked before (or
// after) the inserted tree's edges, and the sign is the parity of the
// merged sequence.
//
// Which slot, which per-family global signs and which insertion order are
// "the" convention is not guessed: calibrate() searches all 64 candidate
// conventions against an embedded corpus of independently hand-computed
// examples and demands exactly one survivor.  Everything downstream uses
// calibrated().

#include "braceops/tree.hpp"

#include <array>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace braceops {

struct SignConvention {
  bool front = true;        // new edge ranked before (true) or after all old edges
  int s_prime = +1;         // global sign: new neutral below a labeled vertex
  int s_second = +1;        // global sign: new neutral above a labeled vertex
  int s_split = +1;         // global sign: splitting a neutral vertex
  bool host_first = true;   // insertion rank order: host edges then guest edges
  int s_insert = +1;        // global insertion sign

  friend bool operator==(const SignConvention&, const SignConvention&) = default;
};

inline std::string sign_convention_str(const SignConvention& c) {
  std::ostringstream os;
  os << "slot=" << (c.front ? "front" : "back") << " below=" << (c.s_prime > 0 ? "+1" : "-1")
     << " above=" << (c.s_second > 0 ? "+1" : "-1") << " split=" << (c.s_split > 0 ? "+1" : "-1")
     << " order=" << (c.host_first ? "host-first" : "guest-first")
     << " insert=" << (c.s_insert > 0 ? "+1" : "-1");
  return os.str();
}

struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Node carrying the rank of its parent edge in the sign reference order.
// The tree's top vertex (the root's unique child) has no odd parent edge;
// its tag is never read.
struct TNode {
  int label = 0;
  int tag = -1;
  std::vector<TNode> kids;
};

inline TNode tag_preorder(const Node& v, int& next) {
  TNode t;
  t.label = v.label;
  t.tag = next++;
  for (const Node& c : v.kids) t.kids.push_back(tag_preorder(c, next));
  return t;
}

// Tags the whole tree: top gets -1, every other vertex 1..m in pre-order.
inline TNode tag_tree(const Node& top, int& edges) {
  TNode t;
  t.label = top.label;
  t.tag = -1;
  int next = 1;
  for (const Node& c : top.kids) t.kids.push_back(tag_preorder(c, next));
  edges = next - 1;
  return t;
}

inline void collect_tags(const TNode& v, std::vector<int>& out, bool is_top) {
  if (!is_top) out.push_back(v.tag);
  for (const TNode& c : v.kids) collect_tags(c, out, false);
}

// Parity of the rank sequence read off the result in pre-order (+1/-1).
inline int koszul_sign(const TNode& top) {
  std::vector<int> seq;
  collect_tags(top, seq, true);
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 == 0 ? +1 : -1;
}

inline Node strip_tags(const TNode& v) {
  Node out;
  out.label = v.label;
  out.kids.reserve(v.kids.size());
  for (const TNode& c : v.kids) out.kids.push_back(strip_tags(c));
  return out;
}

// Rebuilds the tree with the pre-order node #target replaced by repl.
inline TNode replace_at(const TNode& v, int target, const TNode& repl, int& ctr) {
  if (ctr++ == target) return repl;
  TNode out;
  out.label = v.label;
  out.tag = v.tag;
  out.kids.reserve(v.kids.size());
  for (const TNode& c : v.kids) out.kids.push_back(replace_at(c, target, repl, ctr));
  return out;
}

inline void flatten_preorder(const TNode& v, std::vector<const TNode*>& out) {
  out.push_back(&v);
  for (const TNode& c : v.kids) flatten_preorder(c, out);
}

}  // namespace detail

// ---- Differential -----------------------------------------------------------

// delta(T): sum over all ways to create one new neutral vertex —
//   * below a labeled vertex j (j becomes the new neutral's child, keeping a
//     contiguous slice of its children; the rest stay with the neutral),
//   * above a labeled vertex j (a contiguous slice of >= 2 children moves to
//     the new neutral),
//   * splitting a neutral vertex (slice of >= 2 children moves up; the lower
//     neutral must keep >= 2 children).
// Each term's sign: Koszul parity of [new edge at the slot, old edges in old
// pre-order] against the result's pre-order, times the family's global sign.
inline TreeVector delta(const BraceTree& t, const SignConvention& conv) {
  using detail::TNode;
  TreeVector out;
  int m = 0;
  TNode top = detail::tag_tree(t.node(), m);
  const int new_tag = conv.front ? 0 : m + 1;

  std::vector<const TNode*> nodes;
  detail::flatten_preorder(top, nodes);

  for (int idx = 0; idx < static_cast<int>(nodes.size()); ++idx) {
    const TNode& u = *nodes[idx];
    const auto& C = u.kids;
    const int c = static_cast<int>(C.size());
    std::vector<std::pair<TNode, int>> variants;  // (replacement subtree, family sign)

    if (u.label != 0) {
      // New neutral below j: neutral sits at j's place, j keeps C[a..b).
      for (int a = 0; a <= c; ++a)
        for (int b = a; b <= c; ++b) {
          if (a == 0 && b == c) continue;  // neutral would have j as its only child
          TNode j{u.label, new_tag, std::vector<TNode>(C.begin() + a, C.begin() + b)};
          TNode n{0, u.tag, {}};
          n.kids.assign(C.begin(), C.begin() + a);
          n.kids.push_back(std::move(j));
          n.kids.insert(n.kids.end(), C.begin() + b, C.end());
          variants.emplace_back(std::move(n), conv.s_prime);
        }
      // New neutral above j: neutral takes C[a..b), |slice| >= 2.
      for (int a = 0; a <= c; ++a)
        for (int b = a + 2; b <= c; ++b) {
          TNode n{0, new_tag, std::vector<TNode>(C.begin() + a, C.begin() + b)};
          TNode j{u.label, u.tag, {}};
          j.kids.assign(C.begin(), C.begin() + a);
          j.kids.push_back(std::move(n));
          j.kids.insert(j.kids.end(), C.begin() + b, C.end());
          variants.emplace_back(std::move(j), conv.s_second);
        }
    } else {
      // Split a neutral: upper neutral takes C[a..b) with |slice| >= 2 and
      // the lower one keeps at least one more child.
      for (int a = 0; a <= c; ++a)
        for (int b = a + 2; b <= c; ++b) {
          if (a + (c - b) + 1 < 2) continue;
          TNode n{0, new_tag, std::vector<TNode>(C.begin() + a, C.begin() + b)};
          TNode low{0, u.tag, {}};
          low.kids.assign(C.begin(), C.begin() + a);
          low.kids.push_back(std::move(n));
          low.kids.insert(low.kids.end(), C.begin() + b, C.end());
          variants.emplace_back(std::move(low), conv.s_split);
        }
    }

    for (auto& [repl, fam_sign] : variants) {
      int ctr = 0;
      TNode result = detail::replace_at(top, idx, repl, ctr);
      int sign = detail::koszul_sign(result) * fam_sign;
      tv_add(out, BraceTree::from_node_unchecked(detail::strip_tags(result)), Rat(sign));
    }
  }
  return out;
}

inline TreeVector delta(const TreeVector& v, const SignConvention& conv) {
  TreeVector out;
  for (const auto& [t, c] : v) tv_add(out, delta(t, conv), c);
  return out;
}

// Splits delta into the sector-preserving part delta0 and the part delta1
// that moves the labeled-bottom sector into the neutral-bottom sector
// (exactly the "new neutral below the lowest vertex" terms).
inline std::pair<TreeVector, TreeVector> delta_split(const BraceTree& t,
                                                     const SignConvention& conv) {
  TreeVector d0, d1;
  bool from_vcirc = is_vcirc(t);
  for (const auto& [s, c] : delta(t, conv)) {
    if (from_vcirc && is_vbul(s))
      tv_add(d1, s, c);
    else
      tv_add(d0, s, c);
  }
  return {std::move(d0), std::move(d1)};
}

// ---- Edge contraction and the dual differential -----------------------------

namespace detail {

// Contracts the parent edge of pre-order node #target (counting the top as
// 0); requires one endpoint neutral.  The merged vertex keeps the parent's
// position; the child's children are spliced in place of the child.
inline Node contract_at(const Node& v, int target, int& ctr, bool& done) {
  Node out;
  out.label = v.label;
  ++ctr;
  for (const Node& c : v.kids) {
    if (!done && ctr == target) {
      done = true;
      ++ctr;
      if (out.label == 0) out.label = c.label;  // a labeled child absorbs the neutral parent
      for (const Node& gc : c.kids) out.kids.push_back(gc);
    } else {
      out.kids.push_back(contract_at(c, target, ctr, done));
    }
  }
  return out;
}

}  // namespace detail

// All single-edge contractions of t at edges with a neutral endpoint,
// together with the 0-based pre-order index of the contracted edge.
// Pre-order node counting: top = 0, so node i's parent edge has index i-1.
inline std::vector<std::pair<BraceTree, int>> contractions(const BraceTree& t) {
  Node top = t.node();
  // pre-order list of (node, parent) pairs
  std::vector<std::pair<const Node*, const Node*>> order;
  struct Walk {
    std::vector<std::pair<const Node*, const Node*>>& order;
    void operator()(const Node& v, const Node* parent) {
      order.emplace_back(&v, parent);
      for (const Node& c : v.kids) (*this)(c, &v);
    }
  } walk{order};
  walk(top, nullptr);

  std::vector<std::pair<BraceTree, int>> out;
  for (int i = 1; i < static_cast<int>(order.size()); ++i) {
    const Node* child = order[i].first;
    const Node* parent = order[i].second;
    if (parent->label != 0 && child->label != 0) continue;  // labeled-labeled: not contractible
    int ctr = 0;
    bool done = false;
    Node merged = detail::contract_at(top, i, ctr, done);
    out.emplace_back(BraceTree::from_node_unchecked(merged), i - 1);
  }
  return out;
}

// Dual differential as the literal transpose of delta: the coefficient of S
// in delta_dual(T) is the coefficient of T in delta(S), and every such S is
// a single-edge contraction of T.
inline TreeVector delta_dual(const BraceTree& t, const SignConvention& conv) {
  std::set<BraceTree> seen;
  TreeVector out;
  for (const auto& [s, idx] : contractions(t)) {
    (void)idx;
    if (!seen.insert(s).second) continue;
    TreeVector ds = delta(s, conv);
    auto it = ds.find(t);
    if (it != ds.end()) tv_add(out, s, it->second);
  }
  return out;
}

inline TreeVector delta_dual(const TreeVector& v, const SignConvention& conv) {
  TreeVector out;
  for (const auto& [t, c] : v) tv_add(out, delta_dual(t, conv), c);
  return out;
}

// Independently coded expansion of the dual differential: sum over
// contractible edges e of (-1)^(pre-order index of e) * (T with e
// contracted).  Encodes the reference convention directly; agreement with
// the transpose is a test, not an assumption.
inline TreeVector delta_dual_expand(const BraceTree& t) {
  TreeVector out;
  for (const auto& [s, idx] : contractions(t)) tv_add(out, s, Rat(idx % 2 == 0 ? 1 : -1));
  return out;
}

// Splits delta_dual into the sector-preserving part and the part carrying
// the neutral-bottom sector to the labeled-bottom sector.
inline std::pair<TreeVector, TreeVector> delta_dual_split(const BraceTree& t,
                                                          const SignConvention& conv) {
  TreeVector d0, d1;
  bool from_vbul = is_vbul(t);
  for (const auto& [s, c] : delta_dual(t, conv)) {
    if (from_vbul && is_vcirc(s))
      tv_add(d1, s, c);
    else
      tv_add(d0, s, c);
  }
  return {std::move(d0), std::move(d1)};
}

// ---- Operadic insertion ------------------------------------------------------

namespace detail {

// Gap slots of a subtree in left-to-right planar order: before, between and
// after the children of every vertex, interleaved depth-first.
inline int count_gaps(const TNode& v) {
  int g = 1;
  for (const TNode& c : v.kids) g += count_gaps(c) + 1;
  return g;
}

inline TNode splice_gaps(const TNode& v, const std::vector<std::vector<TNode>>& by_gap,
                         int& ctr) {
  TNode out{v.label, v.tag, {}};
  auto append = [&](int g) {
    for (const TNode& x : by_gap[g]) out.kids.push_back(x);
  };
  append(ctr++);
  for (const TNode& c : v.kids) {
    out.kids.push_back(splice_gaps(c, by_gap, ctr));
    append(ctr++);
  }
  return out;
}

inline TNode relabel(const TNode& v, int lo, int shift) {
  TNode out{v.label, v.tag, {}};
  if (out.label > lo) out.label += shift;
  out.kids.reserve(v.kids.size());
  for (const TNode& c : v.kids) out.kids.push_back(relabel(c, lo, shift));
  return out;
}

inline const TNode* find_label(const TNode& v, int label) {
  if (v.label == label) return &v;
  for (const TNode& c : v.kids)
    if (const TNode* f = find_label(c, label)) return f;
  return nullptr;
}

inline TNode replace_label(const TNode& v, int label, const TNode& repl) {
  if (v.label == label) return repl;
  TNode out{v.label, v.tag, {}};
  out.kids.reserve(v.kids.size());
  for (const TNode& c : v.kids) out.kids.push_back(replace_label(c, label, repl));
  return out;
}

}  // namespace detail

// Operadic insertion T o_i S: vertex i of T is replaced by S; the children
// of i are distributed over the planar gaps of S in all order-preserving
// ways.  The edge of T that pointed at i keeps its identity and now points
// at S's top vertex.  Sign per term: Koszul parity of the concatenated edge
// ranks (host edges then guest edges, or the reverse) against the result's
// pre-order, times the global insertion sign.
inline TreeVector insert_tree(const BraceTree& t, int i, const BraceTree& s,
                              const SignConvention& conv) {
  using detail::TNode;
  const int nt = arity(t), ns = arity(s);
  if (i < 1 || i > nt) throw std::invalid_argument("insert_tree: slot out of range");

  int mt = 0, ms = 0;
  TNode host = detail::tag_tree(t.node(), mt);
  TNode guest = detail::tag_tree(s.node(), ms);

  // Rank the two edge sets according to the reference order.
  int host_off = conv.host_first ? 0 : ms;
  int guest_off = conv.host_first ? mt : 0;
  struct Shift {
    int off;
    void operator()(TNode& v, bool top) const {
      if (!top && v.tag > 0) v.tag += off;
      for (TNode& c : v.kids) (*this)(c, false);
    }
  };
  Shift{host_off}(host, true);
  Shift{guest_off}(guest, true);

  // Relabel: host labels > i shift up by ns-1, guest labels shift by i-1.
  host = detail::relabel(host, i, ns - 1);
  // (label i itself is untouched by relabel since relabel only shifts > lo)
  guest = detail::relabel(guest, 0, i - 1);

  const TNode* vi = detail::find_label(host, i);
  assert(vi != nullptr);
  std::vector<TNode> C = vi->kids;

  // The guest's top vertex takes over the host edge that pointed at i.
  TNode guest_top = guest;
  guest_top.tag = vi->tag;

  const int gaps = detail::count_gaps(guest_top);
  const int m = static_cast<int>(C.size());

  // Enumerate all non-decreasing assignments of C[0..m) to gap indices.
  std::vector<int> assign(m, 0);
  TreeVector out;
  for (;;) {
    std::vector<std::vector<TNode>> by_gap(gaps);
    for (int q = 0; q < m; ++q) by_gap[assign[q]].push_back(C[q]);
    int ctr = 0;
    TNode filled = detail::splice_gaps(guest_top, by_gap, ctr);
    TNode result = detail::replace_label(host, i, filled);
    int sign = detail::koszul_sign(result) * conv.s_insert;
    tv_add(out, BraceTree::from_node_unchecked(detail::strip_tags(result)), Rat(sign));

    // next non-decreasing assignment
    int q = m - 1;
    while (q >= 0 && assign[q] == gaps - 1) --q;
    if (q < 0) break;
    int v = assign[q] + 1;
    for (int r = q; r < m; ++r) assign[r] = v;
  }
  return out;
}

inline TreeVector insert(const TreeVector& t, int i, const TreeVector& s,
                         const SignConvention& conv) {
  TreeVector out;
  for (const auto& [a, ca] : t)
    for (const auto& [b, cb] : s) tv_add(out, insert_tree(a, i, b, conv), ca * cb);
  return out;
}

// ---- Calibration corpus ------------------------------------------------------

// Each fixture is a small text document:
//   op delta | delta0 | delta1 | delta_dual | insert
//   slot I            (insert only)
//   in  COEFF TREE    (one line per term of the input vector)
//   arg COEFF TREE    (insert only: the inserted vector)
//   out COEFF TREE    (expected result, exact)
// '#' starts a comment.  The corpus below was computed by hand, term by
// term, from the defining expansions; it pins the sign convention uniquely.
struct Fixture {
  std::string name;
  std::string op;
  int slot = 0;
  TreeVector in, arg, expected;
};

namespace corpus {

// The differential of a two-neutral tree on six labels: all three term
// families at once (five below-terms and one above-term at the lowest
// vertex, two splittings of the larger neutral; the smaller neutral is
// trivalent and contributes nothing).
inline constexpr const char* delta_two_neutrals_six_labels = R"(# differential, two neutrals, six labels
op delta
in +1 (r (3 (* (1) (* (6) (5)) (4)) (2)))
out +1 (r (* (3) (* (1) (* (6) (5)) (4)) (2)))
out +1 (r (* (3 (* (1) (* (6) (5)) (4))) (2)))
out +1 (r (* (* (1) (* (6) (5)) (4)) (3) (2)))
out +1 (r (* (* (1) (* (6) (5)) (4)) (3 (2))))
out -1 (r (* (* (1) (* (6) (5)) (4)) (2) (3)))
out +1 (r (3 (* (* (1) (* (6) (5)) (4)) (2))))
out -1 (r (3 (* (* (1) (* (6) (5))) (4)) (2)))
out +1 (r (3 (* (1) (* (* (6) (5)) (4))) (2)))
)";

// delta of the two-vertex string: the cup-product commutator.
inline constexpr const char* delta_string_two = R"(# differential of the two-vertex string
op delta
in +1 (r (1 (2)))
out +1 (r (* (1) (2)))
out -1 (r (* (2) (1)))
)";

// delta of the three-leaf corolla: associativity defect of the cup product.
inline constexpr const char* delta_corolla_three = R"(# differential of the neutral corolla on three labels
op delta
in +1 (r (* (1) (2) (3)))
out +1 (r (* (* (1) (2)) (3)))
out -1 (r (* (1) (* (2) (3))))
)";

// delta of the one-label-above-two tree, and its two sector components.
inline constexpr const char* delta_one_label_two_children = R"(# differential of (r (1 (2) (3)))
op delta
in +1 (r (1 (2) (3)))
out +1 (r (1 (* (2) (3))))
out +1 (r (* (1) (2) (3)))
out +1 (r (* (1 (2)) (3)))
out -1 (r (* (2) (1) (3)))
out -1 (r (* (2) (1 (3))))
out +1 (r (* (2) (3) (1)))
)";

inline constexpr const char* delta0_one_label_two_children = R"(# sector-preserving part of delta on (r (1 (2) (3)))
op delta0
in +1 (r (1 (2) (3)))
out +1 (r (1 (* (2) (3))))
)";

inline constexpr const char* delta1_one_label_two_children = R"(# sector-lowering part of delta on (r (1 (2) (3)))
op delta1
in +1 (r (1 (2) (3)))
out +1 (r (* (1) (2) (3)))
out +1 (r (* (1 (2)) (3)))
out -1 (r (* (2) (1) (3)))
out -1 (r (* (2) (1 (3))))
out +1 (r (* (2) (3) (1)))
)";

// A string inserted into the cup product at its top slot: the five-term
// planar redistribution.
inline constexpr const char* insert_cup_at_string_top = R"(# (r (2 (1))) o_2 cup
op insert
slot 2
in +1 (r (2 (1)))
arg +1 (r (* (1) (2)))
out +1 (r (* (1) (2) (3)))
out -1 (r (* (2 (1)) (3)))
out -1 (r (* (2) (1) (3)))
out +1 (r (* (2) (3 (1))))
out +1 (r (* (2) (3) (1)))
)";

// The bracket composed with itself at the first slot: eight terms.
inline constexpr const char* insert_bracket_square = R"(# bracket o_1 bracket
op insert
slot 1
in +1 (r (1 (2)))
in +1 (r (2 (1)))
arg +1 (r (1 (2)))
arg +1 (r (2 (1)))
out +1 (r (1 (3) (2)))
out -1 (r (1 (2 (3))))
out -1 (r (1 (2) (3)))
out +1 (r (2 (3) (1)))
out -1 (r (2 (1 (3))))
out -1 (r (2 (1) (3)))
out +1 (r (3 (1 (2))))
out +1 (r (3 (2 (1))))
)";

// The symmetrized cup product composed with itself at the first slot.
inline constexpr const char* insert_cup_square = R"(# symmetrized cup o_1 symmetrized cup
op insert
slot 1
in +1/2 (r (* (1) (2)))
in +1/2 (r (* (2) (1)))
arg +1/2 (r (* (1) (2)))
arg +1/2 (r (* (2) (1)))
out +1/4 (r (* (* (1) (2)) (3)))
out +1/4 (r (* (3) (* (1) (2))))
out +1/4 (r (* (* (2) (1)) (3)))
out +1/4 (r (* (3) (* (2) (1))))
)";

// The bracket inserted at the free slot of the previous product: the
// two-block-times-bracket cocycle.
inline constexpr const char* insert_bracket_at_cup_fork = R"(# (cup o_1 cup, symmetrized) o_3 bracket
op insert
slot 3
in +1/4 (r (* (* (1) (2)) (3)))
in +1/4 (r (* (3) (* (1) (2))))
in +1/4 (r (* (* (2) (1)) (3)))
in +1/4 (r (* (3) (* (2) (1))))
arg +1 (r (1 (2)))
arg +1 (r (2 (1)))
out +1/4 (r (* (* (1) (2)) (3 (4))))
out -1/4 (r (* (3 (4)) (* (1) (2))))
out +1/4 (r (* (* (2) (1)) (3 (4))))
out -1/4 (r (* (3 (4)) (* (2) (1))))
out +1/4 (r (* (* (1) (2)) (4 (3))))
out -1/4 (r (* (4 (3)) (* (1) (2))))
out +1/4 (r (* (* (2) (1)) (4 (3))))
out -1/4 (r (* (4 (3)) (* (2) (1))))
)";

// Cup product inserted at the second slot of the bracket.
inline constexpr const char* insert_cup_after_bracket = R"(# bracket o_2 cup
op insert
slot 2
in +1 (r (1 (2)))
in +1 (r (2 (1)))
arg +1 (r (* (1) (2)))
out +1 (r (1 (* (2) (3))))
out +1 (r (* (1) (2) (3)))
out -1 (r (* (2 (1)) (3)))
out -1 (r (* (2) (1) (3)))
out +1 (r (* (2) (3 (1))))
out +1 (r (* (2) (3) (1)))
)";

// Bracket inserted below the cup product.
inline constexpr const char* insert_bracket_below_cup = R"(# cup o_1 bracket
op insert
slot 1
in +1 (r (* (1) (2)))
arg +1 (r (1 (2)))
arg +1 (r (2 (1)))
out -1 (r (* (1 (2)) (3)))
out -1 (r (* (2 (1)) (3)))
)";

// Bracket inserted beside the cup product.
inline constexpr const char* insert_bracket_beside_cup = R"(# cup o_2 bracket
op insert
slot 2
in +1 (r (* (1) (2)))
arg +1 (r (1 (2)))
arg +1 (r (2 (1)))
out +1 (r (* (1) (2 (3))))
out +1 (r (* (1) (3 (2))))
)";

// Dual differential of the cup product.
inline constexpr const char* dual_of_cup = R"(# dual differential of the cup product
op delta_dual
in +1 (r (* (1) (2)))
out +1 (r (1 (2)))
out -1 (r (2 (1)))
)";

// Dual differential of a labeled-bottom tree with one neutral fork.
inline constexpr const char* dual_of_label_over_fork = R"(# dual differential of (r (1 (* (2) (3))))
op delta_dual
in +1 (r (1 (* (2) (3))))
out +1 (r (1 (2) (3)))
out -1 (r (1 (2 (3))))
out +1 (r (1 (3 (2))))
)";

struct Entry {
  const char* name;
  const char* text;
};

inline constexpr std::array<Entry, 15> entries{{
    {"delta_two_neutrals_six_labels", delta_two_neutrals_six_labels},
    {"delta_string_two", delta_string_two},
    {"delta_corolla_three", delta_corolla_three},
    {"delta_one_label_two_children", delta_one_label_two_children},
    {"delta0_one_label_two_children", delta0_one_label_two_children},
    {"delta1_one_label_two_children", delta1_one_label_two_children},
    {"insert_cup_at_string_top", insert_cup_at_string_top},
    {"insert_bracket_square", insert_bracket_square},
    {"insert_cup_square", insert_cup_square},
    {"insert_bracket_at_cup_fork", insert_bracket_at_cup_fork},
    {"insert_cup_after_bracket", insert_cup_after_bracket},
    {"insert_bracket_below_cup", insert_bracket_below_cup},
    {"insert_bracket_beside_cup", insert_bracket_beside_cup},
    {"dual_of_cup", dual_of_cup},
    {"dual_of_label_over_fork", dual_of_label_over_fork},
}};

}  // namespace corpus

inline Fixture parse_fixture(const std::string& name, const std::string& text) {
  Fixture f;
  f.name = name;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("fixture " + name + " line " + std::to_string(lineno) + ": " +
                                why);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "op") {
      ls >> f.op;
      if (f.op != "delta" && f.op != "delta0" && f.op != "delta1" && f.op != "delta_dual" &&
          f.op != "insert")
        fail("unknown op '" + f.op + "'");
    } else if (key == "slot") {
      ls >> f.slot;
      if (f.slot < 1) fail("slot must be >= 1");
    } else if (key == "in" || key == "arg" || key == "out") {
      std::string coeff;
      ls >> coeff;
      std::string tree;
      std::getline(ls, tree);
      if (coeff.empty() || tree.empty()) fail("expected 'COEFF TREE'");
      TreeVector& target = key == "in" ? f.in : key == "arg" ? f.arg : f.expected;
      tv_add(target, BraceTree::parse(tree), rat_parse(coeff));
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (f.op.empty()) throw std::invalid_argument("fixture " + name + ": missing op");
  if (f.in.empty()) throw std::invalid_argument("fixture " + name + ": missing input");
  if (f.op == "insert" && (f.slot == 0 || f.arg.empty()))
    throw std::invalid_argument("fixture " + name + ": insert needs slot and arg");
  return f;
}

inline TreeVector eval_fixture(const Fixture& f, const SignConvention& conv) {
  if (f.op == "delta") return delta(f.in, conv);
  if (f.op == "delta0" || f.op == "delta1") {
    TreeVector out;
    for (const auto& [t, c] : f.in) {
      auto [d0, d1] = delta_split(t, conv);
      tv_add(out, f.op == "delta0" ? d0 : d1, c);
    }
    return out;
  }
  if (f.op == "delta_dual") return delta_dual(f.in, conv);
  if (f.op == "insert") return insert(f.in, f.slot, f.arg, conv);
  throw std::logic_error("eval_fixture: bad op");
}

inline const std::vector<Fixture>& calibration_corpus() {
  static const std::vector<Fixture> fixtures = [] {
    std::vector<Fixture> out;
    for (const auto& e : corpus::entries) out.push_back(parse_fixture(e.name, e.text));
    return out;
  }();
  return fixtures;
}

// Searches all 64 candidate conventions against the corpus; exactly one must
// reproduce every fixture, or the build refuses to proceed.
inline SignConvention calibrate() {
  std::vector<SignConvention> winners;
  for (int bits = 0; bits < 64; ++bits) {
    SignConvention c;
    c.front = bits & 1;
    c.s_prime = bits & 2 ? +1 : -1;
    c.s_second = bits & 4 ? +1 : -1;
    c.s_split = bits & 8 ? +1 : -1;
    c.host_first = bits & 16;
    c.s_insert = bits & 32 ? +1 : -1;
    bool ok = true;
    for (const Fixture& f : calibration_corpus())
      if (eval_fixture(f, c) != f.expected) {
        ok = false;
        break;
      }
    if (ok) winners.push_back(c);
  }
  if (winners.size() != 1) {
    std::ostringstream os;
    os << "sign calibration failed: " << winners.size()
       << " conventions reproduce the corpus (expected exactly 1)";
    for (const SignConvention& c : winners) os << "\n  candidate: " << sign_convention_str(c);
    throw CalibrationError(os.str());
  }
  return winners.front();
}

inline const SignConvention& calibrated() {
  static const SignConvention conv = calibrate();
  return conv;
}

// Convenience overloads in the calibrated convention.
inline TreeVector delta(const BraceTree& t) { return delta(t, calibrated()); }
inline TreeVector delta(const TreeVector& v) { return delta(v, calibrated()); }
inline std::pair<TreeVector, TreeVector> delta_split(const BraceTree& t) {
  return delta_split(t, calibrated());
}
inline TreeVector delta_dual(const BraceTree& t) { return delta_dual(t, calibrated()); }
inline TreeVector delta_dual(const TreeVector& v) { return delta_dual(v, calibrated()); }
inline std::pair<TreeVector, TreeVector> delta_dual_split(const BraceTree& t) {
  return delta_dual_split(t, calibrated());
}
inline TreeVector insert_tree(const BraceTree& t, int i, const BraceTree& s) {
  return insert_tree(t, i, s, calibrated());
}
inline TreeVector insert(const TreeVector& t, int i, const TreeVector& s) {
  return insert(t, i, s, calibrated());
}

}  // namespace braceops
