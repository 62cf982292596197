#pragma once

// The shuffle-algebra side of the dual complexes: words in odd letters, the
// signed riffle product, the tree-to-word maps f and g, string and fork
// trees, the antisymmetrized fork cocycles, and the cokernel count for the
// shuffle multiplication.

#include "braceops/linalg.hpp"
#include "braceops/operad.hpp"
#include "braceops/sign.hpp"
#include "braceops/tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace braceops {

// A word in the odd letters X_i; every letter has degree -1 (well, dual
// degree +1), so shuffles are signed.
using Word = std::vector<int>;
using WordVector = std::map<Word, Rat>;

inline std::string word_str(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += "X" + std::to_string(w[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string wv_str(const WordVector& v) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : v) {
    if (!first) out += "  ";
    first = false;
    out += (c > 0 ? "+" : "") + rat_str(c) + " " + word_str(w);
  }
  return out;
}

inline void wv_add(WordVector& v, const Word& w, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = v.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

inline void wv_add(WordVector& v, const WordVector& w, const Rat& scale = Rat(1)) {
  for (const auto& [x, c] : w) wv_add(v, x, scale * c);
}

// Signed riffle shuffle of two words: all interleavings preserving each
// factor's internal order; a term's sign is the parity of the number of
// crossed letter pairs (every letter is odd).
inline WordVector shuffle(const Word& u, const Word& v) {
  WordVector out;
  Word buf;
  buf.reserve(u.size() + v.size());
  struct Rec {
    const Word& u;
    const Word& v;
    Word& buf;
    WordVector& out;
    void operator()(std::size_t i, std::size_t j, int crossings) {
      if (i == u.size() && j == v.size()) {
        wv_add(out, buf, Rat(crossings % 2 == 0 ? 1 : -1));
        return;
      }
      if (i < u.size()) {
        buf.push_back(u[i]);
        (*this)(i + 1, j, crossings);
        buf.pop_back();
      }
      if (j < v.size()) {
        buf.push_back(v[j]);
        // placing a v-letter now crosses every u-letter still waiting
        (*this)(i, j + 1, crossings + static_cast<int>(u.size() - i));
        buf.pop_back();
      }
    }
  } rec{u, v, buf, out};
  rec(0, 0, 0);
  return out;
}

inline WordVector shuffle(const WordVector& a, const WordVector& b) {
  WordVector out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) wv_add(out, shuffle(u, v), cu * cv);
  return out;
}

// ---- Tree-to-word maps -----------------------------------------------------------

namespace detail {

inline WordVector f_node(const Node& v) {
  if (v.label == 0)
    throw std::invalid_argument("f: tree has a neutral vertex");
  WordVector acc{{Word{}, Rat(1)}};
  for (const Node& c : v.kids) acc = shuffle(acc, f_node(c));
  WordVector out;
  for (const auto& [w, coeff] : acc) {
    Word x;
    x.reserve(w.size() + 1);
    x.push_back(v.label);
    x.insert(x.end(), w.begin(), w.end());
    out.emplace(std::move(x), coeff);
  }
  return out;
}

}  // namespace detail

// f: a neutral-free tree maps to its vertex label prepended to the shuffle
// product of its subtrees' images.
inline WordVector f_map(const BraceTree& t) {
  if (neutral_count(t) != 0) throw std::invalid_argument("f: tree has a neutral vertex");
  return detail::f_node(t.node());
}

// g: f on neutral-free trees, zero on everything else.
inline WordVector g_map(const TreeVector& v) {
  WordVector out;
  for (const auto& [t, c] : v)
    if (neutral_count(t) == 0) wv_add(out, f_map(t), c);
  return out;
}

// ---- String and fork trees --------------------------------------------------------

namespace detail {

inline Node string_node(const Word& w) {
  if (w.empty()) throw std::invalid_argument("string_node: empty word");
  Node v;
  v.label = w.back();
  for (int i = static_cast<int>(w.size()) - 2; i >= 0; --i) {
    Node p;
    p.label = w[i];
    p.kids.push_back(std::move(v));
    v = std::move(p);
  }
  return v;
}

}  // namespace detail

// The string tree of a word: w[0] at the bottom, each letter the parent of
// the next.
inline BraceTree string_tree(const Word& w) {
  return BraceTree::from_node(detail::string_node(w));
}

// A bottom neutral vertex carrying string branches; each branch word is read
// bottom-up (first letter adjacent to the neutral vertex).
inline BraceTree fork_tree(const std::vector<Word>& branches) {
  if (branches.size() < 2) throw std::invalid_argument("fork_tree: need >= 2 branches");
  Node top;
  top.label = 0;
  for (const Word& w : branches) top.kids.push_back(detail::string_node(w));
  return BraceTree::from_node(top);
}

// The neutral corolla: a bottom neutral with q leaf children 1..q.
inline BraceTree corolla(int q) {
  std::vector<Word> branches;
  for (int i = 1; i <= q; ++i) branches.push_back({i});
  return fork_tree(branches);
}

// The corolla with legs i and i+1 merged into the string (i, i+1).
inline BraceTree corolla_merged(int q, int i) {
  if (i < 1 || i >= q) throw std::invalid_argument("corolla_merged: need 1 <= i < q");
  std::vector<Word> branches;
  for (int m = 1; m <= q; ++m) {
    if (m == i)
      branches.push_back({i, i + 1});
    else if (m != i + 1)
      branches.push_back({m});
  }
  return fork_tree(branches);
}

// ---- Antisymmetrized fork cocycles -------------------------------------------------

// Admissible fork data: branch words w_1..w_k (k >= 2) with each branch's
// minimum first and first letters increasing across branches.  The
// generator Y is the branch antisymmetrization of the fork tree, Koszul
// signs taken with branch parity |w_m| mod 2.
inline TreeVector fork_antisymmetrization(const std::vector<Word>& branches) {
  const int k = static_cast<int>(branches.size());
  TreeVector out;
  Rat coeff(1);
  for (int i = 2; i <= k; ++i) coeff /= i;  // 1/k!
  for (const Perm& tau : all_perms(k)) {
    int parity = 0;
    for (int a = 1; a <= k; ++a)
      for (int b = a + 1; b <= k; ++b)
        if (tau(a) > tau(b))
          parity += static_cast<int>(branches[tau(a) - 1].size()) *
                    static_cast<int>(branches[tau(b) - 1].size());
    std::vector<Word> arranged;
    for (int m = 1; m <= k; ++m) arranged.push_back(branches[tau(m) - 1]);
    tv_add(out, fork_tree(arranged), parity % 2 == 0 ? coeff : -coeff);
  }
  return out;
}

// All admissible fork generators in arity n, together with their branch
// data, ordered deterministically (k, then composition, then permutation).
struct ForkGenerator {
  std::vector<Word> branches;
  TreeVector y;
};

inline std::vector<ForkGenerator> xi_generators(int n) {
  std::vector<ForkGenerator> out;
  for (int k = 2; k <= n; ++k) {
    // compositions of n into k positive parts, lexicographic
    std::vector<int> parts(k, 1);
    int rest = n - k;
    // enumerate by distributing `rest` among parts
    struct Comp {
      int k;
      std::vector<int>& parts;
      std::vector<std::vector<int>> all;
      void operator()(int idx, int rest) {
        if (idx == k - 1) {
          parts[idx] = 1 + rest;
          all.push_back(parts);
          return;
        }
        for (int extra = 0; extra <= rest; ++extra) {
          parts[idx] = 1 + extra;
          (*this)(idx + 1, rest - extra);
        }
      }
    } comp{k, parts, {}};
    comp(0, rest);

    for (const auto& comp_parts : comp.all) {
      for (const Perm& s : all_perms(n)) {
        // cut the sequence s(1..n) into branch words
        std::vector<Word> branches;
        int pos = 1;
        for (int m = 0; m < k; ++m) {
          Word w;
          for (int q = 0; q < comp_parts[m]; ++q) w.push_back(s(pos++));
          branches.push_back(std::move(w));
        }
        bool admissible = true;
        int prev_first = 0;
        for (const Word& w : branches) {
          if (*std::min_element(w.begin(), w.end()) != w.front()) admissible = false;
          if (w.front() <= prev_first) admissible = false;
          prev_first = w.front();
          if (!admissible) break;
        }
        if (!admissible) continue;
        out.push_back({branches, fork_antisymmetrization(branches)});
      }
    }
  }
  return out;
}

// ---- Shuffle multiplication cokernel ------------------------------------------------

// dim of span{words of weight n} / span{u sh v : u,v nonempty}.
inline int colie_dim(int n) {
  std::vector<Word> words;
  {
    Word w(n);
    for (int i = 0; i < n; ++i) w[i] = i + 1;
    do words.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
  }
  std::map<Word, int> index;
  for (int i = 0; i < static_cast<int>(words.size()); ++i) index.emplace(words[i], i);

  SpanBuilder sb;
  // splittings with 1 in the left factor (the reversed products span the same)
  std::vector<int> rest;
  for (int i = 2; i <= n; ++i) rest.push_back(i);
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    if (mask + 1 == (1u << (n - 1))) continue;  // right factor must be nonempty
    std::vector<int> a{1}, b;
    for (int i = 0; i < n - 1; ++i) (mask >> i & 1u ? a : b).push_back(rest[i]);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    Word u(a.begin(), a.end()), v(b.begin(), b.end());
    do {
      Word vv = v;
      do {
        SparseVec row;
        for (const auto& [w, c] : shuffle(u, vv)) sv_add(row, index.at(w), c);
        sb.add(row);
      } while (std::next_permutation(vv.begin(), vv.end()));
    } while (std::next_permutation(u.begin(), u.end()));
  }
  return static_cast<int>(words.size()) - sb.dim();
}

}  // namespace braceops
