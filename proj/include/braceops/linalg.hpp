#pragma once

// Exact sparse linear algebra over Q.
//
// Everything is rational and deterministic: Gaussian elimination with
// Markowitz-style pivoting (cost (nnz_row - 1) * (nnz_col - 1), ties broken
// by lowest column then lowest row index), no floats, no modular arithmetic.
// Sizes here are small (hundreds to a few thousand); clarity wins over
// asymptotics.

#include "braceops/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace braceops {

using SparseVec = std::map<int, Rat>;  // index -> nonzero value

inline void sv_add(SparseVec& v, int i, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = v.emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

inline void sv_add(SparseVec& v, const SparseVec& w, const Rat& scale = Rat(1)) {
  if (scale == 0) return;
  for (const auto& [i, c] : w) sv_add(v, i, scale * c);
}

struct RationalMatrix {
  int rows = 0, cols = 0;
  std::vector<SparseVec> row;

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), row(r) {}

  void set(int i, int j, const Rat& v) {
    check(i, j);
    if (v == 0)
      row[i].erase(j);
    else
      row[i][j] = v;
  }

  void add(int i, int j, const Rat& v) {
    check(i, j);
    sv_add(row[i], j, v);
  }

  Rat get(int i, int j) const {
    check(i, j);
    auto it = row[i].find(j);
    return it == row[i].end() ? Rat(0) : it->second;
  }

  long long nnz() const {
    long long n = 0;
    for (const auto& r : row) n += static_cast<long long>(r.size());
    return n;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (const auto& [j, v] : row[i]) t.row[j].emplace(i, v);
    return t;
  }

  // y = M x
  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (int i = 0; i < rows; ++i) {
      Rat acc(0);
      const SparseVec& r = row[i];
      const SparseVec& a = r.size() < x.size() ? r : x;
      const SparseVec& b = r.size() < x.size() ? x : r;
      for (const auto& [j, v] : a) {
        auto it = b.find(j);
        if (it != b.end()) acc += v * it->second;
      }
      if (acc != 0) y.emplace(i, acc);
    }
    return y;
  }

  // Debug form: one "row col p/q" line per entry, row-major.
  std::string dump() const {
    std::string out;
    for (int i = 0; i < rows; ++i)
      for (const auto& [j, v] : row[i])
        out += std::to_string(i) + " " + std::to_string(j) + " " + rat_str(v) + "\n";
    return out;
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= rows || j < 0 || j >= cols)
      throw std::out_of_range("RationalMatrix: index out of range");
  }
};

inline RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
  RationalMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (const auto& [k, va] : a.row[i])
      for (const auto& [j, vb] : b.row[k]) sv_add(c.row[i], j, va * vb);
  return c;
}

namespace detail {

// Full Gauss-Jordan elimination with Markowitz pivoting.  Mutates `rows` to
// reduced form: each pivot column has a single nonzero entry, 1, in its
// pivot row.  Augmented columns (index >= aug_from) are never pivots.
// Returns the (row, col) pivot list in elimination order.
inline std::vector<std::pair<int, int>> gauss_jordan(std::vector<SparseVec>& rows, int aug_from) {
  const int nr = static_cast<int>(rows.size());
  std::vector<bool> pivoted(nr, false);
  std::vector<std::pair<int, int>> pivots;

  for (;;) {
    // column fill counts over non-pivoted rows (eligible columns only)
    std::map<int, int> col_count;
    for (int i = 0; i < nr; ++i) {
      if (pivoted[i]) continue;
      for (const auto& [j, v] : rows[i])
        if (j < aug_from) ++col_count[j];
    }
    if (col_count.empty()) break;

    long long best_cost = -1;
    int best_r = -1, best_c = -1;
    for (int i = 0; i < nr; ++i) {
      if (pivoted[i]) continue;
      // count eligible entries in this row
      int row_nnz = 0;
      for (const auto& [j, v] : rows[i])
        if (j < aug_from) ++row_nnz;
      if (row_nnz == 0) continue;
      for (const auto& [j, v] : rows[i]) {
        if (j >= aug_from) continue;
        long long cost =
            static_cast<long long>(row_nnz - 1) * static_cast<long long>(col_count[j] - 1);
        if (best_cost < 0 || cost < best_cost ||
            (cost == best_cost && (j < best_c || (j == best_c && i < best_r)))) {
          best_cost = cost;
          best_r = i;
          best_c = j;
        }
      }
    }
    if (best_r < 0) break;

    // normalize the pivot row and clear the pivot column everywhere else
    Rat pv = rows[best_r][best_c];
    for (auto& [j, v] : rows[best_r]) v /= pv;
    for (int i = 0; i < nr; ++i) {
      if (i == best_r) continue;
      auto it = rows[i].find(best_c);
      if (it == rows[i].end()) continue;
      Rat factor = it->second;
      sv_add(rows[i], rows[best_r], -factor);
    }
    pivoted[best_r] = true;
    pivots.emplace_back(best_r, best_c);
  }
  return pivots;
}

}  // namespace detail

inline int rank(const RationalMatrix& m) {
  std::vector<SparseVec> rows = m.row;
  return static_cast<int>(detail::gauss_jordan(rows, m.cols).size());
}

// Basis of { x : M x = 0 }, one vector per free column, in ascending free
// column order.  Works on the reduced form: x_free = 1, pivot entries read
// off the pivot rows.
inline std::vector<SparseVec> kernel(const RationalMatrix& m) {
  std::vector<SparseVec> rows = m.row;
  auto pivots = detail::gauss_jordan(rows, m.cols);
  std::vector<bool> is_pivot_col(m.cols, false);
  for (const auto& [r, c] : pivots) is_pivot_col[c] = true;

  std::vector<SparseVec> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot_col[f]) continue;
    SparseVec x;
    x.emplace(f, Rat(1));
    for (const auto& [r, c] : pivots) {
      auto it = rows[r].find(f);
      if (it != rows[r].end()) x.emplace(c, -it->second);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

// Solves M x = b exactly; returns a witness (free variables zero) or
// nullopt when b is outside the column span.
inline std::optional<SparseVec> solve_membership(const RationalMatrix& m, const SparseVec& b) {
  std::vector<SparseVec> rows = m.row;
  const int bcol = m.cols;
  for (const auto& [i, v] : b) {
    if (i < 0 || i >= m.rows) throw std::out_of_range("solve_membership: bad rhs index");
    if (v != 0) rows[i][bcol] = v;
  }
  auto pivots = detail::gauss_jordan(rows, m.cols);
  std::vector<bool> pivoted_row(m.rows, false);
  for (const auto& [r, c] : pivots) pivoted_row[r] = true;
  for (int i = 0; i < m.rows; ++i)
    if (!pivoted_row[i] && rows[i].count(bcol)) return std::nullopt;

  SparseVec x;
  for (const auto& [r, c] : pivots) {
    auto it = rows[r].find(bcol);
    if (it != rows[r].end()) x.emplace(c, it->second);
  }
  return x;
}

// Incremental echelon reducer: feed vectors, it keeps an echelon basis of
// their span.  Used for the extend-a-basis pattern.
struct SpanBuilder {
  // reduced rows keyed by leading index
  std::map<int, SparseVec> echelon;

  // Reduces v against the current span; returns the (possibly zero) residue.
  SparseVec reduce(SparseVec v) const {
    for (;;) {
      if (v.empty()) return v;
      int lead = v.begin()->first;
      auto it = echelon.find(lead);
      if (it == echelon.end()) return v;
      Rat factor = v.begin()->second / it->second.begin()->second;
      sv_add(v, it->second, -factor);
    }
  }

  // Adds v to the span; returns true if it increased the dimension.
  bool add(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    echelon.emplace(r.begin()->first, std::move(r));
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  int dim() const { return static_cast<int>(echelon.size()); }
};

// Indices of candidates that extend span(given), greedily in order.
inline std::vector<int> extend_independent(const std::vector<SparseVec>& given,
                                           const std::vector<SparseVec>& candidates) {
  SpanBuilder sb;
  for (const SparseVec& v : given) sb.add(v);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i)
    if (sb.add(candidates[i])) out.push_back(i);
  return out;
}

inline int rank_of(const std::vector<SparseVec>& vecs) {
  SpanBuilder sb;
  for (const SparseVec& v : vecs) sb.add(v);
  return sb.dim();
}

// ---- Graded complexes ----------------------------------------------------------

// A cochain complex presented by dimensions and differential matrices
// d[deg] : C^deg -> C^(deg+1).
struct GradedComplex {
  std::map<int, int> dims;
  std::map<int, RationalMatrix> d;

  // Shape compatibility and d o d = 0 on every composable pair.
  void validate() const {
    for (const auto& [deg, m] : d) {
      if (m.cols != dim_at(deg))
        throw std::logic_error("GradedComplex: d[" + std::to_string(deg) + "] has wrong cols");
      if (m.rows != dim_at(deg + 1))
        throw std::logic_error("GradedComplex: d[" + std::to_string(deg) + "] has wrong rows");
      auto next = d.find(deg + 1);
      if (next != d.end()) {
        RationalMatrix sq = matmul(next->second, m);
        if (sq.nnz() != 0)
          throw std::logic_error("GradedComplex: d^2 != 0 at degree " + std::to_string(deg));
      }
    }
  }

  int dim_at(int deg) const {
    auto it = dims.find(deg);
    return it == dims.end() ? 0 : it->second;
  }

  int rank_at(int deg) const {
    auto it = d.find(deg);
    return it == d.end() ? 0 : rank(it->second);
  }

  // h^deg = dim^deg - rank d^deg - rank d^(deg-1); zero entries omitted.
  std::map<int, int> cohomology_dims() const {
    std::map<int, int> out;
    for (const auto& [deg, n] : dims) {
      int h = n - rank_at(deg) - rank_at(deg - 1);
      if (h < 0) throw std::logic_error("cohomology_dims: negative dimension (broken complex)");
      if (h > 0) out[deg] = h;
    }
    return out;
  }
};

}  // namespace braceops
