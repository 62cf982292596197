#pragma once

// Brace trees: planar rooted trees whose non-root vertices are either
// labeled (bijectively by {1..n}) or neutral ("*", at least two children).
// The root is an auxiliary vertex with exactly one child.
//
// Canonical serialization (whitespace-insensitive on input):
//
//   tree := "(" "r" node ")"
//   node := "(" label node* ")"
//   label := positive integer | "*"
//
// A tree's identity IS its canonical serialization: BraceTree stores the
// canonical string, equality is byte equality, and the ordering used for
// bases, TreeVector iteration and report output is plain string order.
// Structural algorithms decode to the recursive Node form, operate, and
// re-encode.
//
// Grading: with n labels and k neutrals a tree has n+k-1 odd edges (all
// edges except the root edge) and degree 2k - (n+k-1) = k-n+1 <= 0.  The
// dual (cochain) degree is n-k-1 >= 0.

#include "braceops/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace braceops {

// Subtree hanging from one vertex; label == 0 marks a neutral vertex.
struct Node {
  int label = 0;
  std::vector<Node> kids;
};

namespace detail {

inline void encode_node(const Node& v, std::string& out) {
  out += '(';
  if (v.label == 0)
    out += '*';
  else
    out += std::to_string(v.label);
  for (const Node& c : v.kids) {
    out += ' ';
    encode_node(c, out);
  }
  out += ')';
}

struct Tokenizer {
  const std::string& s;
  std::size_t pos = 0;

  explicit Tokenizer(const std::string& str) : s(str) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  // Returns "(", ")", "r", "*" or a positive-integer literal.
  std::string next() {
    skip_ws();
    if (pos >= s.size()) throw std::invalid_argument("tree parse: unexpected end of input");
    char c = s[pos];
    if (c == '(' || c == ')' || c == '*' || c == 'r') {
      ++pos;
      return std::string(1, c);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return s.substr(start, pos - start);
    }
    throw std::invalid_argument(std::string("tree parse: unexpected character '") + c + "'");
  }

  bool done() {
    skip_ws();
    return pos >= s.size();
  }
};

inline Node parse_node(Tokenizer& tk) {
  if (tk.next() != "(") throw std::invalid_argument("tree parse: expected '('");
  std::string lab = tk.next();
  Node v;
  if (lab == "*") {
    v.label = 0;
  } else if (!lab.empty() && std::isdigit(static_cast<unsigned char>(lab[0]))) {
    v.label = std::stoi(lab);
    if (v.label <= 0) throw std::invalid_argument("tree parse: labels are positive");
  } else {
    throw std::invalid_argument("tree parse: expected label or '*', got '" + lab + "'");
  }
  for (;;) {
    tk.skip_ws();
    if (tk.pos < tk.s.size() && tk.s[tk.pos] == ')') {
      ++tk.pos;
      return v;
    }
    v.kids.push_back(parse_node(tk));
  }
}

inline void collect_labels(const Node& v, std::vector<int>& labels, int& neutrals) {
  if (v.label == 0)
    ++neutrals;
  else
    labels.push_back(v.label);
  for (const Node& c : v.kids) collect_labels(c, labels, neutrals);
}

inline void validate_node(const Node& v) {
  if (v.label == 0 && v.kids.size() < 2)
    throw std::invalid_argument("invalid tree: neutral vertex with fewer than 2 children");
  for (const Node& c : v.kids) validate_node(c);
}

}  // namespace detail

// Validates the brace-tree invariants for the subtree v, assuming it is the
// root's unique child of a tree on label set {1..n}: labels form exactly
// {1..n} (n >= 1, no repeats) and every neutral vertex has >= 2 children.
inline void validate_tree(const Node& v) {
  std::vector<int> labels;
  int neutrals = 0;
  detail::collect_labels(v, labels, neutrals);
  if (labels.empty()) throw std::invalid_argument("invalid tree: no labeled vertices");
  std::set<int> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("invalid tree: repeated label");
  int n = static_cast<int>(labels.size());
  if (*seen.begin() != 1 || *seen.rbegin() != n)
    throw std::invalid_argument("invalid tree: labels must be exactly {1..n}");
  detail::validate_node(v);
}

class BraceTree {
 public:
  BraceTree() = default;

  // Builds from the root's unique child; validates and canonicalizes.
  static BraceTree from_node(const Node& root_child) {
    validate_tree(root_child);
    return from_node_unchecked(root_child);
  }

  // For algorithm-internal use where validity is guaranteed by construction.
  static BraceTree from_node_unchecked(const Node& root_child) {
    std::string s = "(r ";
    detail::encode_node(root_child, s);
    s += ')';
    BraceTree t;
    t.s_ = std::move(s);
    return t;
  }

  // Whitespace-insensitive parse of "(r node)"; validates and canonicalizes.
  static BraceTree parse(const std::string& text) {
    detail::Tokenizer tk(text);
    if (tk.next() != "(") throw std::invalid_argument("tree parse: expected '(r ...)'");
    if (tk.next() != "r") throw std::invalid_argument("tree parse: expected root token 'r'");
    Node v = detail::parse_node(tk);
    if (tk.next() != ")") throw std::invalid_argument("tree parse: expected ')' after root child");
    if (!tk.done()) throw std::invalid_argument("tree parse: trailing input");
    return from_node(v);
  }

  bool valid() const { return !s_.empty(); }
  const std::string& str() const { return s_; }

  // Decodes back to the root's unique child.
  Node node() const {
    detail::Tokenizer tk(s_);
    tk.next();  // "("
    tk.next();  // "r"
    Node v = detail::parse_node(tk);
    tk.next();  // ")"
    return v;
  }

  friend bool operator==(const BraceTree& a, const BraceTree& b) { return a.s_ == b.s_; }
  friend bool operator<(const BraceTree& a, const BraceTree& b) { return a.s_ < b.s_; }

 private:
  std::string s_;
};

// ---- Grading and sector data ------------------------------------------------

inline int arity(const BraceTree& t) {
  // Number of labeled vertices = number of integer tokens in the body.
  int n = 0;
  const std::string& s = t.str();
  for (std::size_t i = 3; i < s.size(); ++i)  // skip "(r "
    if (std::isdigit(static_cast<unsigned char>(s[i])) &&
        !std::isdigit(static_cast<unsigned char>(s[i - 1])))
      ++n;
  return n;
}

inline int neutral_count(const BraceTree& t) {
  int k = 0;
  for (char c : t.str())
    if (c == '*') ++k;
  return k;
}

// Cohomological degree: 2k - (#odd edges) = k - n + 1, in [1-n, 0].
inline int degree(const BraceTree& t) { return neutral_count(t) - arity(t) + 1; }

// Degree in the dual (cochain) complexes: n - k - 1, in [0, n-1].
inline int dual_degree(const BraceTree& t) { return arity(t) - neutral_count(t) - 1; }

// Number of odd edges (all edges except the root edge).
inline int num_edges(const BraceTree& t) { return arity(t) + neutral_count(t) - 1; }

// Sector: V-circ = lowest (root-child) vertex labeled, V-bullet = lowest neutral.
inline bool is_vbul(const BraceTree& t) { return t.str().compare(0, 5, "(r (*") == 0; }
inline bool is_vcirc(const BraceTree& t) { return !is_vbul(t); }

// Number of children of the lowest vertex; filtration level for V-bullet.
inline int filtration_level(const BraceTree& t) {
  return static_cast<int>(t.node().kids.size());
}

enum class Sector { all, vcirc, vbul };

// ---- Basis enumeration ------------------------------------------------------

namespace detail {

// Enumerator for all valid subtrees on a fixed global label set; memoizes on
// (label subset bitmask, #neutrals).  Bit i of a mask stands for label i+1.
struct TreeGen {
  std::map<std::pair<unsigned, int>, std::vector<Node>> memo;

  const std::vector<Node>& trees(unsigned mask, int k) {
    auto key = std::make_pair(mask, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Node> out;
    if (mask != 0) {  // every valid subtree has a labeled leaf
      // Labeled root: pick the label, split the rest into an ordered forest.
      for (unsigned bit = 0; bit < 32; ++bit) {
        if (!(mask >> bit & 1u)) continue;
        for (auto& f : forests(mask & ~(1u << bit), k, 0)) {
          Node v;
          v.label = static_cast<int>(bit) + 1;
          v.kids = f;
          out.push_back(std::move(v));
        }
      }
      // Neutral root: needs at least two children.
      if (k >= 1) {
        for (auto& f : forests(mask, k - 1, 2)) {
          Node v;
          v.label = 0;
          v.kids = f;
          out.push_back(std::move(v));
        }
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  }

  // Ordered forests using exactly the given labels and neutrals, with at
  // least min_trees trees.
  std::vector<std::vector<Node>> forests(unsigned mask, int k, int min_trees) {
    std::vector<std::vector<Node>> out;
    if (mask == 0 && k == 0) {
      if (min_trees <= 0) out.push_back({});
      return out;
    }
    // First tree takes a nonempty sub-multiset (nonzero label subset; an
    // all-neutral subtree is impossible), the rest recurse.
    for (unsigned sub = mask; sub != 0; sub = (sub - 1) & mask) {
      for (int j = 0; j <= k; ++j) {
        const std::vector<Node>& firsts = trees(sub, j);
        if (firsts.empty()) continue;
        auto rests = forests(mask & ~sub, k - j, min_trees - 1);
        for (const Node& first : firsts)
          for (const auto& rest : rests) {
            std::vector<Node> f;
            f.reserve(rest.size() + 1);
            f.push_back(first);
            f.insert(f.end(), rest.begin(), rest.end());
            out.push_back(std::move(f));
          }
      }
    }
    return out;
  }
};

}  // namespace detail

// All basis trees of arity n, optionally restricted to one cohomological
// degree and/or one sector, sorted by canonical serialization.
inline std::vector<BraceTree> enumerate_basis(int n, std::optional<int> deg = std::nullopt,
                                              Sector sector = Sector::all) {
  if (n < 1) throw std::invalid_argument("enumerate_basis: arity must be >= 1");
  if (n > 31) throw std::invalid_argument("enumerate_basis: arity too large");
  detail::TreeGen gen;
  unsigned full = (1u << n) - 1u;
  int klo = 0, khi = n - 1;
  if (deg) {
    int k = *deg + n - 1;  // degree = k - n + 1
    if (k < 0 || k > n - 1) return {};
    klo = khi = k;
  }
  std::vector<BraceTree> out;
  for (int k = klo; k <= khi; ++k) {
    for (const Node& v : gen.trees(full, k)) {
      if (sector == Sector::vcirc && v.label == 0) continue;
      if (sector == Sector::vbul && v.label != 0) continue;
      out.push_back(BraceTree::from_node_unchecked(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- Linear combinations ----------------------------------------------------

// Finite Q-linear combination of basis trees, keyed (and iterated) in
// canonical-string order.  Zero coefficients are never stored.
using TreeVector = std::map<BraceTree, Rat>;

inline void tv_add(TreeVector& v, const BraceTree& t, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = v.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

inline void tv_add(TreeVector& v, const TreeVector& w, const Rat& scale = Rat(1)) {
  for (const auto& [t, c] : w) tv_add(v, t, scale * c);
}

inline TreeVector tv_scale(const Rat& c, const TreeVector& v) {
  TreeVector out;
  if (c == 0) return out;
  for (const auto& [t, x] : v) out.emplace(t, c * x);
  return out;
}

inline TreeVector tv_sub(const TreeVector& a, const TreeVector& b) {
  TreeVector out = a;
  tv_add(out, b, Rat(-1));
  return out;
}

inline std::string tv_str(const TreeVector& v) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : v) {
    if (!first) out += "  ";
    first = false;
    out += (c > 0 ? "+" : "") + rat_str(c) + " " + t.str();
  }
  return out;
}

}  // namespace braceops
