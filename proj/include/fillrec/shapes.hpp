#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fillrec/errors.hpp"

namespace fillrec {

/// Weak composition; zeros allowed, length significant.
using Composition = std::vector<int>;

struct Box {
  int row = 1;
  int col = 1;
  friend auto operator<=>(const Box&, const Box&) = default;
};

/// Finite set of boxes, English orientation, 1-indexed.
struct Diagram {
  std::set<Box> boxes;
  friend bool operator==(const Diagram&, const Diagram&) = default;
  std::size_t size() const { return boxes.size(); }
  bool empty() const { return boxes.empty(); }
  bool contains(int r, int c) const { return boxes.count({r, c}) != 0; }
  int max_row() const {
    int m = 0;
    for (const auto& b : boxes) m = std::max(m, b.row);
    return m;
  }
  int max_col() const {
    int m = 0;
    for (const auto& b : boxes) m = std::max(m, b.col);
    return m;
  }
};

/// Skew composition shape outer/inner: row i holds columns inner_i+1..outer_i.
struct SkewShape {
  Composition outer;
  Composition inner;

  SkewShape() = default;
  SkewShape(Composition o, Composition i = {}) : outer(std::move(o)), inner(std::move(i)) {
    if (inner.size() > outer.size()) {
      for (std::size_t r = outer.size(); r < inner.size(); ++r)
        if (inner[r] != 0) throw ShapeError("inner shape has more rows than outer");
      inner.resize(outer.size());
    }
    inner.resize(outer.size(), 0);
    for (std::size_t r = 0; r < outer.size(); ++r) {
      if (outer[r] < 0 || inner[r] < 0) throw ShapeError("negative part");
      if (inner[r] > outer[r]) throw ShapeError("inner shape not contained in outer shape");
    }
  }

  int rows() const { return static_cast<int>(outer.size()); }
  int row_length(int r) const { return outer[r - 1] - inner[r - 1]; }
  bool has_box(int r, int c) const {
    return r >= 1 && r <= rows() && c > inner[r - 1] && c <= outer[r - 1];
  }
  int max_col() const {
    int m = 0;
    for (int v : outer) m = std::max(m, v);
    return m;
  }
  std::size_t size() const {
    std::size_t s = 0;
    for (int r = 1; r <= rows(); ++r) s += static_cast<std::size_t>(row_length(r));
    return s;
  }
  /// Rows with a box in column c, top to bottom.
  std::vector<int> column_rows(int c) const {
    std::vector<int> out;
    for (int r = 1; r <= rows(); ++r)
      if (has_box(r, c)) out.push_back(r);
    return out;
  }
  friend bool operator==(const SkewShape&, const SkewShape&) = default;
};

struct BasementShape {
  std::vector<int> basement;
  Composition shape;
  friend bool operator==(const BasementShape&, const BasementShape&) = default;
};

struct ColumnRun {
  int multiplicity = 0;
  std::vector<int> rows;
  friend bool operator==(const ColumnRun&, const ColumnRun&) = default;
};

inline Composition parse_composition(std::string_view s) {
  Composition out;
  std::string buf(s);
  if (buf.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream ss(buf);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad composition entry '" + item + "'");
    }
    if (item.find_first_not_of(" \t", pos) != std::string::npos) throw UsageError("bad composition entry '" + item + "'");
    if (v < 0) throw UsageError("composition parts must be nonnegative");
    out.push_back(v);
  }
  return out;
}

inline std::string format_composition(const Composition& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

inline int composition_size(const Composition& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline bool is_partition(const Composition& a) {
  return std::is_sorted(a.begin(), a.end(), std::greater<>()) &&
         std::all_of(a.begin(), a.end(), [](int v) { return v >= 0; });
}

/// Parts sorted decreasingly, length kept.
inline Composition sorted_decreasing(Composition a) {
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

inline Composition scale(Composition a, int k) {
  for (int& v : a) v *= k;
  return a;
}

inline SkewShape scale(const SkewShape& s, int k) { return SkewShape(scale(s.outer, k), scale(s.inner, k)); }

inline Diagram diagram(const SkewShape& s) {
  Diagram d;
  for (int r = 1; r <= s.rows(); ++r)
    for (int c = s.inner[r - 1] + 1; c <= s.outer[r - 1]; ++c) d.boxes.insert({r, c});
  return d;
}

inline Diagram diagram_from_composition(const Composition& a) { return diagram(SkewShape(a)); }

inline Diagram skew_diagram(const Composition& outer, const Composition& inner) {
  return diagram(SkewShape(outer, inner));
}

inline Diagram dilate(const Diagram& d, int k) {
  if (k < 1) throw UsageError("dilation factor must be positive");
  Diagram out;
  for (const auto& b : d.boxes)
    for (int c = k * b.col - k + 1; c <= k * b.col; ++c) out.boxes.insert({b.row, c});
  return out;
}

/// Recover outer/inner from a diagram whose rows are contiguous.
inline SkewShape skew_from_diagram(const Diagram& d, int num_rows = 0) {
  int rows = std::max(num_rows, d.max_row());
  Composition outer(rows, 0), inner(rows, 0);
  for (int r = 1; r <= rows; ++r) {
    int lo = 0, hi = 0, count = 0;
    for (const auto& b : d.boxes)
      if (b.row == r) {
        if (!count) lo = b.col;
        hi = b.col;
        ++count;
      }
    if (!count) continue;
    if (hi - lo + 1 != count) throw ShapeError("row " + std::to_string(r) + " is not contiguous");
    outer[r - 1] = hi;
    inner[r - 1] = lo - 1;
  }
  return SkewShape(outer, inner);
}

/// Drops zero rows, stable-sorts by length decreasing; row i carries label n+1-i.
inline BasementShape shape_data(const Composition& alpha, int n) {
  if (static_cast<int>(alpha.size()) != n) throw UsageError("composition length must equal n");
  std::vector<std::pair<int, int>> rows;
  for (int i = 0; i < n; ++i)
    if (alpha[i] > 0) rows.push_back({alpha[i], n - i});
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  BasementShape out;
  for (const auto& [len, label] : rows) {
    out.shape.push_back(len);
    out.basement.push_back(label);
  }
  return out;
}

/// Run-length encoding of column shapes, left to right.
inline std::vector<ColumnRun> column_decomposition(const Diagram& d) {
  std::vector<ColumnRun> runs;
  int cols = d.max_col();
  for (int c = 1; c <= cols; ++c) {
    std::vector<int> rows;
    for (const auto& b : d.boxes)
      if (b.col == c) rows.push_back(b.row);
    if (!runs.empty() && runs.back().rows == rows)
      ++runs.back().multiplicity;
    else
      runs.push_back({1, rows});
  }
  return runs;
}

inline Diagram from_column_runs(const std::vector<ColumnRun>& runs) {
  Diagram d;
  int c = 0;
  for (const auto& run : runs)
    for (int m = 0; m < run.multiplicity; ++m) {
      ++c;
      for (int r : run.rows) d.boxes.insert({r, c});
    }
  return d;
}

/// All weak compositions of the given length with parts in 0..max_part.
inline std::vector<Composition> all_compositions(int length, int max_part) {
  std::vector<Composition> out;
  Composition cur(length, 0);
  while (true) {
    out.push_back(cur);
    int i = length - 1;
    while (i >= 0 && cur[i] == max_part) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

/// Distinct rearrangements of a, in lexicographic order.
inline std::vector<Composition> rearrangements(Composition a) {
  std::sort(a.begin(), a.end());
  std::vector<Composition> out;
  do out.push_back(a);
  while (std::next_permutation(a.begin(), a.end()));
  return out;
}

/// Partitions contained in a rows x cols rectangle, zero-padded to rows.
inline std::vector<Composition> partitions_in_box(int rows, int cols) {
  std::vector<Composition> out;
  for (auto& c : all_compositions(rows, cols))
    if (is_partition(c)) out.push_back(c);
  return out;
}

}  // namespace fillrec
