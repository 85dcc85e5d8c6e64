#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fillrec/errors.hpp"
#include "fillrec/shapes.hpp"

namespace fillrec {

enum class Family { ssaf, nawf, ssyt, flagged, symplectic, set_valued, rpp };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::ssaf: return "ssaf";
    case Family::nawf: return "nawf";
    case Family::ssyt: return "ssyt";
    case Family::flagged: return "flagged";
    case Family::symplectic: return "symplectic";
    case Family::set_valued: return "set_valued";
    case Family::rpp: return "rpp";
  }
  return "?";
}

inline bool has_basement(Family f) { return f == Family::ssaf || f == Family::nawf; }

/// Which triples coinv counts. The literal reading counts configurations
/// failing T(a) >= T(c) >= T(b); the other counts those satisfying it.
enum class CoinvRule { failing, satisfying };

// Frozen by the P_mu = sum E_gamma identity check (tests/test_generators.cpp).
inline constexpr CoinvRule kCoinvRule = CoinvRule::satisfying;
inline constexpr bool kDnCountsBasement = true;

/// Alphabet and row bounds for is_member and enumeration.
struct FamilyRules {
  Family family = Family::ssyt;
  int n = 0;
  std::vector<int> flag_lo, flag_hi;  // flagged only, one per row
};

namespace cell {
inline int max_of(int mask) { return 31 - std::countl_zero(static_cast<std::uint32_t>(mask)); }
inline int min_of(int mask) { return std::countr_zero(static_cast<std::uint32_t>(mask)) + 1; }
/// Largest element (1-based) for a set mask.
inline int top(int mask) { return max_of(mask) + 1; }
inline int bit(int v) { return 1 << (v - 1); }
inline std::vector<int> elements(int mask) {
  std::vector<int> out;
  for (int v = 1; v <= 31; ++v)
    if (mask & bit(v)) out.push_back(v);
  return out;
}
/// Lexicographic order on sorted element lists.
inline bool set_less(int a, int b) {
  auto x = elements(a), y = elements(b);
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}
}  // namespace cell

struct AugmentedFilling {
  SkewShape shape;
  std::vector<int> basement;              // empty when absent, else one per row
  std::vector<std::vector<int>> rows;     // rows[r-1][k] sits at column inner+1+k
  bool set_valued = false;                // entries are bitmasks over [n]

  AugmentedFilling() = default;
  AugmentedFilling(SkewShape s, std::vector<int> b, std::vector<std::vector<int>> r, bool sets = false)
      : shape(std::move(s)), basement(std::move(b)), rows(std::move(r)), set_valued(sets) {
    validate();
  }

  void validate() const {
    if (static_cast<int>(rows.size()) != shape.rows()) throw ShapeError("row count differs from shape");
    for (int r = 1; r <= shape.rows(); ++r)
      if (static_cast<int>(rows[r - 1].size()) != shape.row_length(r))
        throw ShapeError("row " + std::to_string(r) + " length differs from shape");
    if (!basement.empty()) {
      if (static_cast<int>(basement.size()) != shape.rows()) throw ShapeError("basement needs one entry per row");
      for (int r = 0; r < shape.rows(); ++r)
        if (shape.inner[r] != 0) throw ShapeError("basement fillings need a straight shape");
      auto b = basement;
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(b.begin(), b.end()) != b.end() || b.front() < 1)
        throw UsageError("basement entries must be distinct positive integers");
    }
    for (const auto& row : rows)
      for (int v : row)
        if (v < 1) throw UsageError(set_valued ? "set-valued entries must be nonempty" : "entries must be positive");
  }

  bool has_basement() const { return !basement.empty(); }
  int num_rows() const { return shape.rows(); }
  int num_cols() const { return shape.max_col(); }
  bool has_box(int r, int c) const { return shape.has_box(r, c); }
  /// A box, or a basement cell at column 0.
  bool has_cell(int r, int c) const {
    if (c == 0) return has_basement() && r >= 1 && r <= num_rows();
    return has_box(r, c);
  }
  int at(int r, int c) const { return c == 0 ? basement[r - 1] : rows[r - 1][c - shape.inner[r - 1] - 1]; }
  int& at(int r, int c) { return rows[r - 1][c - shape.inner[r - 1] - 1]; }

  friend bool operator==(const AugmentedFilling&, const AugmentedFilling&) = default;
};

using BoxPair = std::pair<Box, Box>;

struct Triple {
  Box a, b, c;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleLists {
  std::vector<Triple> type_a;
  std::vector<Triple> type_b;
};

inline void require_scalar(const AugmentedFilling& t) {
  if (t.set_valued) throw UsageError("operation needs scalar entries");
}

/// Equal entries in one column, or in adjacent columns with the right one strictly lower.
inline std::vector<BoxPair> attacking_pairs(const AugmentedFilling& t) {
  require_scalar(t);
  std::vector<BoxPair> out;
  const int first = t.has_basement() ? 0 : 1;
  for (int c = first; c <= t.num_cols(); ++c)
    for (int r = 1; r <= t.num_rows(); ++r) {
      if (!t.has_cell(r, c)) continue;
      for (int r2 = r + 1; r2 <= t.num_rows(); ++r2)
        if (t.has_cell(r2, c) && t.at(r2, c) == t.at(r, c)) out.push_back({{r, c}, {r2, c}});
      for (int r2 = r + 1; r2 <= t.num_rows(); ++r2)
        if (t.has_cell(r2, c + 1) && t.at(r2, c + 1) == t.at(r, c)) out.push_back({{r, c}, {r2, c + 1}});
    }
  return out;
}

/// Every positional triple configuration, with a flag telling whether it
/// satisfies T(a) >= T(c) >= T(b).
template <class F>
void for_each_triple(const AugmentedFilling& t, F&& f) {
  require_scalar(t);
  const int first = t.has_basement() ? 0 : 1;
  for (int r = 1; r <= t.num_rows(); ++r)
    for (int j = first; j < t.num_cols(); ++j) {
      if (!t.has_cell(r, j) || !t.has_box(r, j + 1)) continue;
      const int va = t.at(r, j), vb = t.at(r, j + 1);
      const int len = t.shape.row_length(r);
      for (int r2 = r + 1; r2 <= t.num_rows(); ++r2) {
        if (!t.has_box(r2, j + 1) || len < t.shape.row_length(r2)) continue;
        const int vc = t.at(r2, j + 1);
        f(true, Triple{{r, j}, {r, j + 1}, {r2, j + 1}}, va >= vc && vc >= vb);
      }
      for (int r2 = 1; r2 < r; ++r2) {
        if (!t.has_cell(r2, j) || len <= t.shape.row_length(r2)) continue;
        const int vc = t.at(r2, j);
        f(false, Triple{{r, j}, {r, j + 1}, {r2, j}}, va >= vc && vc >= vb);
      }
    }
}

inline TripleLists inversion_triples(const AugmentedFilling& t) {
  TripleLists out;
  for_each_triple(t, [&](bool type_a, const Triple& tr, bool inv) {
    if (inv) (type_a ? out.type_a : out.type_b).push_back(tr);
  });
  return out;
}

inline int coinv(const AugmentedFilling& t, CoinvRule rule = kCoinvRule) {
  int count = 0;
  for_each_triple(t, [&](bool, const Triple&, bool inv) {
    if (inv == (rule == CoinvRule::satisfying)) ++count;
  });
  return count;
}

inline int dn(const AugmentedFilling& t, bool count_basement = kDnCountsBasement) {
  require_scalar(t);
  int count = 0;
  for (int r = 1; r <= t.num_rows(); ++r)
    for (int j = (count_basement && t.has_basement()) ? 0 : 1; j < t.num_cols(); ++j)
      if (t.has_cell(r, j) && t.has_box(r, j + 1) && t.at(r, j) != t.at(r, j + 1)) ++count;
  return count;
}

/// Entry counts, basement excluded; for sets, number of sets containing i.
inline std::vector<int> weight(const AugmentedFilling& t, int n) {
  std::vector<int> w(n, 0);
  for (const auto& row : t.rows)
    for (int v : row) {
      if (t.set_valued) {
        for (int i : cell::elements(v))
          if (i <= n) ++w[i - 1];
      } else if (v <= n) {
        ++w[v - 1];
      }
    }
  return w;
}

/// Encoded symplectic entries: 2i-1 is i, 2i is i-bar.
inline std::vector<int> symplectic_weight(const AugmentedFilling& t, int n) {
  require_scalar(t);
  std::vector<int> w(n, 0);
  for (const auto& row : t.rows)
    for (int v : row) {
      int i = (v + 1) / 2;
      if (i >= 1 && i <= n) w[i - 1] += (v % 2 == 1) ? 1 : -1;
    }
  return w;
}

/// ev_i = number of columns containing i.
inline std::vector<int> ev(const AugmentedFilling& t, int n) {
  require_scalar(t);
  std::vector<int> out(n, 0);
  for (int c = 1; c <= t.num_cols(); ++c) {
    std::vector<bool> seen(n + 1, false);
    for (int r = 1; r <= t.num_rows(); ++r)
      if (t.has_box(r, c) && t.at(r, c) <= n && !seen[t.at(r, c)]) {
        seen[t.at(r, c)] = true;
        ++out[t.at(r, c) - 1];
      }
  }
  return out;
}

/// Sum of (|set| - 1) over boxes.
inline int excess(const AugmentedFilling& t) {
  int e = 0;
  for (const auto& row : t.rows)
    for (int v : row) e += t.set_valued ? std::popcount(static_cast<std::uint32_t>(v)) - 1 : 0;
  return e;
}

namespace detail {
inline bool cell_le(bool sets, int a, int b) { return sets ? cell::top(a) <= cell::min_of(b) : a <= b; }
inline bool cell_lt(bool sets, int a, int b) { return sets ? cell::top(a) < cell::min_of(b) : a < b; }
}  // namespace detail

inline bool rows_weakly_decreasing(const AugmentedFilling& t) {
  for (int r = 1; r <= t.num_rows(); ++r)
    for (int c = t.has_basement() ? 0 : 1; c < t.num_cols(); ++c)
      if (t.has_cell(r, c) && t.has_box(r, c + 1) && !detail::cell_le(t.set_valued, t.at(r, c + 1), t.at(r, c)))
        return false;
  return true;
}

inline bool rows_weakly_increasing(const AugmentedFilling& t) {
  for (int r = 1; r <= t.num_rows(); ++r)
    for (int c = 1; c < t.num_cols(); ++c)
      if (t.has_box(r, c) && t.has_box(r, c + 1) && !detail::cell_le(t.set_valued, t.at(r, c), t.at(r, c + 1)))
        return false;
  return true;
}

/// Vertically adjacent boxes strictly increase downward.
inline bool columns_strictly_increasing(const AugmentedFilling& t) {
  for (int c = 1; c <= t.num_cols(); ++c)
    for (int r = 1; r < t.num_rows(); ++r)
      if (t.has_box(r, c) && t.has_box(r + 1, c) && !detail::cell_lt(t.set_valued, t.at(r, c), t.at(r + 1, c)))
        return false;
  return true;
}

inline bool columns_weakly_decreasing(const AugmentedFilling& t) {
  for (int c = 1; c <= t.num_cols(); ++c)
    for (int r = 1; r < t.num_rows(); ++r)
      if (t.has_box(r, c) && t.has_box(r + 1, c) && t.at(r + 1, c) > t.at(r, c)) return false;
  return true;
}

inline bool is_member(const AugmentedFilling& t, const FamilyRules& rules) {
  const Family f = rules.family;
  if ((f == Family::set_valued) != t.set_valued) throw UsageError("entry kind does not match family " + family_name(f));
  if (has_basement(f) != t.has_basement() && t.num_rows() > 0) return false;
  const int alphabet = f == Family::symplectic ? 2 * rules.n : rules.n;
  for (const auto& row : t.rows)
    for (int v : row) {
      int hi = t.set_valued ? cell::top(v) : v;
      if (alphabet > 0 && hi > alphabet) return false;
    }
  switch (f) {
    case Family::ssaf: {
      if (!rows_weakly_decreasing(t)) return false;
      auto tr = inversion_triples(t);
      return tr.type_a.empty() && tr.type_b.empty();
    }
    case Family::nawf:
      return rows_weakly_decreasing(t) && attacking_pairs(t).empty();
    case Family::ssyt:
    case Family::set_valued:
      return rows_weakly_increasing(t) && columns_strictly_increasing(t);
    case Family::flagged: {
      if (static_cast<int>(rules.flag_lo.size()) < t.num_rows() || static_cast<int>(rules.flag_hi.size()) < t.num_rows())
        throw UsageError("flags must cover every row");
      for (int r = 1; r <= t.num_rows(); ++r)
        for (int v : t.rows[r - 1])
          if (v < rules.flag_lo[r - 1] || v > rules.flag_hi[r - 1]) return false;
      return rows_weakly_increasing(t) && columns_strictly_increasing(t);
    }
    case Family::symplectic:
      for (int r = 1; r <= t.num_rows(); ++r)
        for (int v : t.rows[r - 1])
          if (v < 2 * r - 1) return false;
      return rows_weakly_increasing(t) && columns_strictly_increasing(t);
    case Family::rpp:
      return rows_weakly_decreasing(t) && columns_weakly_decreasing(t);
  }
  return false;
}

/// Column j repeated m times. Rows whose inner part covers j grow their inner part.
inline AugmentedFilling duplicate_column(const AugmentedFilling& t, int j, int m) {
  if (j < 1 || j > t.num_cols()) throw UsageError("column index out of range");
  if (m < 1) throw UsageError("multiplicity must be positive");
  bool nonempty = false;
  for (int r = 1; r <= t.num_rows(); ++r) nonempty = nonempty || t.has_box(r, j);
  if (!nonempty) throw UsageError("cannot duplicate an empty column");
  AugmentedFilling out = t;
  for (int r = 1; r <= t.num_rows(); ++r) {
    int& in = out.shape.inner[r - 1];
    int& ou = out.shape.outer[r - 1];
    if (t.has_box(r, j)) {
      auto& row = out.rows[r - 1];
      int k = j - t.shape.inner[r - 1] - 1;
      row.insert(row.begin() + k, m - 1, row[k]);
      ou += m - 1;
    } else if (j <= t.shape.inner[r - 1]) {
      in += m - 1;
      ou += m - 1;
    }
  }
  return out;
}

inline AugmentedFilling delete_column(const AugmentedFilling& t, int j) {
  if (j < 1 || j > t.num_cols()) throw UsageError("column index out of range");
  AugmentedFilling out = t;
  for (int r = 1; r <= t.num_rows(); ++r) {
    int& in = out.shape.inner[r - 1];
    int& ou = out.shape.outer[r - 1];
    if (t.has_box(r, j)) {
      auto& row = out.rows[r - 1];
      row.erase(row.begin() + (j - t.shape.inner[r - 1] - 1));
      --ou;
    } else if (j <= t.shape.inner[r - 1]) {
      --in;
      --ou;
    }
  }
  return out;
}

namespace detail {
/// Column-by-column sort of a padded rectangle; column 0 is the basement.
/// m[r][c] for r in rows, c in 0..L. Returns false if some row has no fit.
inline bool sort_padded(std::vector<std::vector<int>>& m) {
  const int h = static_cast<int>(m.size());
  if (!h) return true;
  const int width = static_cast<int>(m[0].size());
  for (int c = 1; c < width; ++c) {
    for (int i = 0; i < h; ++i) {
      int best = -1;
      for (int k = i; k < h; ++k)
        if (m[k][c] <= m[i][c - 1] && (best < 0 || m[k][c] > m[best][c])) best = k;
      if (best < 0) return false;
      if (best != i)
        for (int cc = c; cc < width; ++cc) std::swap(m[i][cc], m[best][cc]);
    }
  }
  return true;
}
}  // namespace detail

/// Sort columns of a basement filling of partition shape into the unique key tableau.
/// `columns[c-1]` lists the entries of column c, topmost first; order within a column is irrelevant.
inline AugmentedFilling sort_columns_to_key(const std::vector<int>& basement, const Composition& lambda,
                                            const std::vector<std::vector<int>>& columns) {
  const int h = static_cast<int>(basement.size());
  if (static_cast<int>(lambda.size()) != h) throw NotSortable("basement and shape lengths differ");
  if (!is_partition(lambda)) throw NotSortable("shape must be a partition");
  const int width = h ? lambda[0] : 0;
  if (static_cast<int>(columns.size()) != width) throw NotSortable("column count differs from shape");
  std::vector<std::vector<int>> m(h, std::vector<int>(width + 1));
  for (int i = 0; i < h; ++i) m[i][0] = basement[i];
  for (int c = 1; c <= width; ++c) {
    int height = 0;
    while (height < h && lambda[height] >= c) ++height;
    const auto& col = columns[c - 1];
    if (static_cast<int>(col.size()) != height) throw NotSortable("column height differs from shape");
    auto sorted = col;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw NotSortable("repeated entry in a column");
    for (int i = 0; i < h; ++i) m[i][c] = i < height ? col[i] : -(i + 1);
  }
  if (!detail::sort_padded(m)) throw NotSortable("no entry fits next to the previous column");
  std::vector<std::vector<int>> rows(h);
  for (int i = 0; i < h; ++i) {
    for (int c = 1; c <= width; ++c) {
      if (m[i][c] > 0) {
        if (static_cast<int>(rows[i].size()) != c - 1) throw NotSortable("sentinel left inside a row");
        rows[i].push_back(m[i][c]);
      }
    }
    if (static_cast<int>(rows[i].size()) != lambda[i]) throw NotSortable("sorted rows do not match the shape");
  }
  return AugmentedFilling(SkewShape(lambda), basement, rows);
}

inline AugmentedFilling sort_to_key(const AugmentedFilling& t) {
  require_scalar(t);
  if (!t.has_basement()) throw NotSortable("basement required");
  if (!is_partition(t.shape.outer)) throw NotSortable("shape must be a partition");
  for (int v : t.shape.inner)
    if (v) throw NotSortable("shape must be straight");
  if (!rows_weakly_decreasing(t)) throw NotSortable("rows must be weakly decreasing");
  std::vector<std::vector<int>> cols(t.num_cols());
  for (int c = 1; c <= t.num_cols(); ++c)
    for (int r = 1; r <= t.num_rows(); ++r)
      if (t.has_box(r, c)) cols[c - 1].push_back(t.at(r, c));
  return sort_columns_to_key(t.basement, t.shape.outer, cols);
}

}  // namespace fillrec
