#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fillrec/fillings.hpp"
#include "fillrec/parallel.hpp"
#include "fillrec/poly.hpp"
#include "fillrec/shapes.hpp"

namespace fillrec {

/// Brute force (row products filtered by is_member) or column transfer matrix.
enum class Path { oracle, fast };

struct FillingSpec {
  Family family = Family::ssyt;
  SkewShape shape;
  std::vector<int> basement;
  int n = 0;
  std::vector<int> flag_lo, flag_hi;

  FamilyRules rules() const { return {family, n, flag_lo, flag_hi}; }

  void validate() const {
    if (n < 1) throw UsageError("alphabet bound n must be at least 1");
    if (n > kMaxVars) throw UsageError("alphabet bound n too large");
    if (has_basement(family)) {
      if (static_cast<int>(basement.size()) != shape.rows()) throw UsageError("basement needs one entry per row");
      auto b = basement;
      std::sort(b.begin(), b.end());
      if (!b.empty() && (b.front() < 1 || std::adjacent_find(b.begin(), b.end()) != b.end()))
        throw UsageError("basement entries must be distinct positive integers");
      for (int v : shape.inner)
        if (v) throw UsageError("basement families need straight shapes");
    } else if (!basement.empty()) {
      throw UsageError("family " + family_name(family) + " takes no basement");
    }
    if (family == Family::flagged) {
      if (static_cast<int>(flag_lo.size()) != shape.rows() || static_cast<int>(flag_hi.size()) != shape.rows())
        throw UsageError("flags need one entry per row");
      for (int r = 0; r < shape.rows(); ++r) {
        if (flag_lo[r] > flag_hi[r]) throw UsageError("flag a_i exceeds b_i");
        if (r && (flag_lo[r] < flag_lo[r - 1] || flag_hi[r] < flag_hi[r - 1]))
          throw UsageError("flags must be weakly increasing");
      }
    }
  }

  FillingSpec dilated(int k) const {
    FillingSpec s = *this;
    s.shape = scale(shape, k);
    return s;
  }
};

/// The monomial (with sign and t-factors) a single filling contributes.
inline Polynomial filling_term(const AugmentedFilling& t, const FillingSpec& s) {
  const int n = s.n;
  switch (s.family) {
    case Family::ssaf:
    case Family::ssyt:
    case Family::flagged:
      return Polynomial::from_exponents(n, weight(t, n));
    case Family::nawf: {
      Polynomial one_minus_t = Polynomial(n, 1) - Polynomial::t_var(n);
      return Polynomial::from_exponents(n, weight(t, n), coinv(t)) * one_minus_t.pow(static_cast<unsigned>(dn(t)));
    }
    case Family::symplectic:
      return Polynomial::from_exponents(n, symplectic_weight(t, n));
    case Family::set_valued:
      return Polynomial::from_exponents(n, weight(t, n), 0, excess(t) % 2 ? -1 : 1);
    case Family::rpp:
      return Polynomial::from_exponents(n, ev(t, n));
  }
  return Polynomial(n);
}

namespace detail {

/// Candidate cell values for row r (1-based), ascending in the cell order.
inline std::vector<int> row_candidates(const FillingSpec& s, int r) {
  std::vector<int> out;
  switch (s.family) {
    case Family::ssaf:
    case Family::nawf:
      for (int v = 1; v <= std::min(s.n, s.basement[r - 1]); ++v) out.push_back(v);
      break;
    case Family::ssyt:
    case Family::rpp:
      for (int v = 1; v <= s.n; ++v) out.push_back(v);
      break;
    case Family::flagged:
      for (int v = std::max(1, s.flag_lo[r - 1]); v <= std::min(s.n, s.flag_hi[r - 1]); ++v) out.push_back(v);
      break;
    case Family::symplectic:
      for (int v = 2 * r - 1; v <= 2 * s.n; ++v) out.push_back(v);
      break;
    case Family::set_valued:
      for (int m = 1; m < (1 << s.n); ++m) out.push_back(m);
      std::sort(out.begin(), out.end(), cell::set_less);
      break;
  }
  return out;
}

inline bool cell_less(Family f, int a, int b) { return f == Family::set_valued ? cell::set_less(a, b) : a < b; }

/// Column-major reading order comparison.
inline bool reading_less(Family f, const AugmentedFilling& a, const AugmentedFilling& b) {
  for (int c = 1; c <= a.num_cols(); ++c)
    for (int r = 1; r <= a.num_rows(); ++r) {
      if (!a.has_box(r, c)) continue;
      int x = a.at(r, c), y = b.at(r, c);
      if (x != y) return cell_less(f, x, y);
    }
  return false;
}

}  // namespace detail

namespace oracle {

/// Plain enumeration: every row independently obeys its row rule, the full
/// product is filtered by is_member, then sorted into reading order.
inline std::vector<AugmentedFilling> enumerate(const FillingSpec& s) {
  s.validate();
  const int h = s.shape.rows();
  const bool decreasing = s.family == Family::ssaf || s.family == Family::nawf || s.family == Family::rpp;
  const bool sets = s.family == Family::set_valued;
  std::vector<std::vector<std::vector<int>>> row_choices(h);
  for (int r = 1; r <= h; ++r) {
    auto cand = detail::row_candidates(s, r);
    const int len = s.shape.row_length(r);
    std::vector<int> cur;
    std::function<void()> rec = [&] {
      if (static_cast<int>(cur.size()) == len) {
        row_choices[r - 1].push_back(cur);
        return;
      }
      for (int v : cand) {
        if (!cur.empty()) {
          int p = cur.back();
          bool ok = decreasing ? v <= p : (sets ? cell::top(p) <= cell::min_of(v) : p <= v);
          if (!ok) continue;
        } else if (has_basement(s.family) && v > s.basement[r - 1]) {
          continue;
        }
        cur.push_back(v);
        rec();
        cur.pop_back();
      }
    };
    rec();
  }
  std::vector<AugmentedFilling> out;
  const auto rules = s.rules();
  std::vector<std::size_t> idx(h, 0);
  for (const auto& rc : row_choices)
    if (rc.empty()) return out;
  while (true) {
    std::vector<std::vector<int>> rows(h);
    for (int r = 0; r < h; ++r) rows[r] = row_choices[r][idx[r]];
    AugmentedFilling t(s.shape, s.basement, rows, sets);
    if (is_member(t, rules)) out.push_back(std::move(t));
    int r = h - 1;
    while (r >= 0 && ++idx[r] == row_choices[r].size()) idx[r--] = 0;
    if (r < 0) break;
  }
  std::sort(out.begin(), out.end(),
            [&](const AugmentedFilling& a, const AugmentedFilling& b) { return detail::reading_less(s.family, a, b); });
  return out;
}

inline Polynomial generating_function(const FillingSpec& s) {
  std::vector<Polynomial> terms;
  for (const auto& t : enumerate(s)) terms.push_back(filling_term(t, s));
  if (terms.empty()) return Polynomial(s.n);
  return Polynomial::sum(s.n, terms);
}

}  // namespace oracle

/// Column transfer-matrix engine. Column fillings and adjacent-column
/// compatibility are memoized per row set, so every dilation of a shape
/// reuses the same tables.
class TransferEngine {
 public:
  struct ColumnSet {
    std::vector<int> rows;
    std::vector<std::vector<int>> fills;  // cells top to bottom, reading order
    std::vector<Monomial> mono;
    std::vector<int> sign;
  };
  struct Edge {
    int other = 0;
    int coinv = 0;
    int dn = 0;
  };
  struct EdgeTable {
    std::vector<std::vector<Edge>> by_left;   // sorted by right fill index
    std::vector<std::vector<Edge>> by_right;  // sorted by left fill index
  };
  static constexpr int kBasement = -1;

  explicit TransferEngine(FillingSpec base) : spec_(std::move(base)) {
    spec_.validate();
    for (int r = 1; r <= spec_.shape.rows(); ++r) cand_.push_back(detail::row_candidates(spec_, r));
    lengths_.resize(spec_.shape.rows());
    for (int r = 1; r <= spec_.shape.rows(); ++r) lengths_[r - 1] = spec_.shape.row_length(r);
    if (has_basement(spec_.family)) {
      ColumnSet b;
      for (int r = 1; r <= spec_.shape.rows(); ++r) b.rows.push_back(r);
      b.fills.push_back(spec_.basement);
      b.mono.push_back(Monomial{});
      b.sign.push_back(1);
      basement_ = std::move(b);
    }
  }

  const FillingSpec& spec() const { return spec_; }

  int column_set_id(const std::vector<int>& rows) {
    auto it = set_ids_.find(rows);
    if (it != set_ids_.end()) return it->second;
    sets_.push_back(build_column_set(rows));
    int id = static_cast<int>(sets_.size()) - 1;
    set_ids_.emplace(rows, id);
    return id;
  }

  const ColumnSet& column_set(int id) const { return id == kBasement ? basement_ : sets_.at(id); }

  const EdgeTable& edges(int left, int right) {
    auto key = std::make_pair(left, right);
    auto it = edges_.find(key);
    if (it != edges_.end()) return it->second;
    return edges_.emplace(key, build_edges(column_set(left), column_set(right), left == kBasement)).first->second;
  }

  /// Column set ids for the columns of a shape, left to right.
  std::vector<int> column_plan(const SkewShape& shape) {
    check_shape(shape);
    std::vector<int> plan;
    for (int c = 1; c <= shape.max_col(); ++c) plan.push_back(column_set_id(shape.column_rows(c)));
    return plan;
  }

  /// Generating function over the given dilation of the base rows. With
  /// `ones`, x-weights are dropped (evaluation at x = 1).
  Polynomial generating_function(const SkewShape& shape, bool ones = false) {
    const int n = spec_.n;
    auto plan = column_plan(shape);
    if (plan.empty()) return Polynomial(n, 1);
    const bool basement = has_basement(spec_.family);
    int prev = basement ? kBasement : plan[0];
    std::vector<Polynomial> cur;
    std::size_t start = 0;
    if (basement) {
      cur.assign(1, Polynomial(n, 1));
    } else {
      const auto& cs = column_set(plan[0]);
      cur.resize(cs.fills.size());
      for (std::size_t f = 0; f < cs.fills.size(); ++f) cur[f] = column_weight(cs, f, ones);
      start = 1;
    }
    for (std::size_t c = start; c < plan.size(); ++c) {
      const EdgeTable& et = edges(prev, plan[c]);
      const ColumnSet& cs = column_set(plan[c]);
      auto ew = edge_weights(et);
      std::vector<Polynomial> next(cs.fills.size());
      parallel_for(cs.fills.size(), [&](std::size_t f) {
        std::map<std::pair<int, int>, std::vector<Polynomial::Term>> groups;
        for (const auto& e : et.by_right[f]) {
          if (cur[e.other].is_zero()) continue;
          auto& g = groups[{e.coinv, e.dn}];
          g.insert(g.end(), cur[e.other].terms().begin(), cur[e.other].terms().end());
        }
        std::vector<Polynomial> parts;
        for (auto& [k, terms] : groups) {
          Polynomial s = Polynomial::from_terms(n, std::move(terms));
          parts.push_back(k == std::make_pair(0, 0) ? s : s * ew.at(k));
        }
        Polynomial acc = parts.size() == 1 ? parts[0] : Polynomial::sum(n, parts);
        next[f] = column_weight(cs, f, ones) * acc;
      });
      cur = std::move(next);
      prev = plan[c];
    }
    return Polynomial::sum(n, cur);
  }

  /// Depth-first walk in reading order; cb returns false to stop.
  void enumerate(const SkewShape& shape, const std::function<bool(const AugmentedFilling&)>& cb) {
    auto plan = column_plan(shape);
    const bool basement = has_basement(spec_.family);
    const bool sets = spec_.family == Family::set_valued;
    if (plan.empty()) {
      cb(AugmentedFilling(shape, spec_.basement, std::vector<std::vector<int>>(shape.rows()), sets));
      return;
    }
    // alive[c][f]: fill f of column c extends to a full filling.
    std::vector<std::vector<char>> alive(plan.size());
    alive.back().assign(column_set(plan.back()).fills.size(), 1);
    for (std::size_t c = plan.size() - 1; c-- > 0;) {
      const auto& et = edges(plan[c], plan[c + 1]);
      alive[c].assign(column_set(plan[c]).fills.size(), 0);
      for (std::size_t f = 0; f < alive[c].size(); ++f)
        for (const auto& e : et.by_left[f])
          if (alive[c + 1][e.other]) {
            alive[c][f] = 1;
            break;
          }
    }
    std::vector<int> choice(plan.size());
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
      if (stop) return;
      if (c == plan.size()) {
        std::vector<std::vector<int>> rows(shape.rows());
        for (std::size_t k = 0; k < plan.size(); ++k) {
          const auto& cs = column_set(plan[k]);
          for (std::size_t i = 0; i < cs.rows.size(); ++i) rows[cs.rows[i] - 1].push_back(cs.fills[choice[k]][i]);
        }
        if (!cb(AugmentedFilling(shape, spec_.basement, rows, sets))) stop = true;
        return;
      }
      auto visit = [&](int f) {
        if (!alive[c][f]) return;
        choice[c] = f;
        rec(c + 1);
      };
      if (c == 0 && !basement) {
        for (std::size_t f = 0; f < alive[0].size() && !stop; ++f) visit(static_cast<int>(f));
      } else {
        const auto& et = c == 0 ? edges(kBasement, plan[0]) : edges(plan[c - 1], plan[c]);
        for (const auto& e : et.by_left[c == 0 ? 0 : choice[c - 1]]) {
          if (stop) break;
          visit(e.other);
        }
      }
    };
    rec(0);
  }

  Polynomial column_weight(const ColumnSet& cs, std::size_t f, bool ones) const {
    Monomial m = ones ? Monomial{} : cs.mono[f];
    return Polynomial::from_monomial(spec_.n, m, cs.sign[f]);
  }

 private:
  void check_shape(const SkewShape& shape) const {
    if (shape.rows() != spec_.shape.rows()) throw UsageError("shape row count differs from the engine's rows");
    if (!has_basement(spec_.family) || shape.size() == 0) return;
    for (int a = 1; a <= shape.rows(); ++a)
      for (int b = 1; b <= shape.rows(); ++b) {
        int x = shape.row_length(a) - shape.row_length(b);
        int y = lengths_[a - 1] - lengths_[b - 1];
        if ((x > 0) != (y > 0) || (x < 0) != (y < 0))
          throw UsageError("shape has a different row-length order than the engine's base shape");
      }
  }

  bool vertical_ok(int upper_row, int upper, int lower_row, int lower) const {
    const Family f = spec_.family;
    if (f == Family::ssaf || f == Family::nawf) return upper != lower;
    if (lower_row != upper_row + 1) return true;
    switch (f) {
      case Family::ssyt:
      case Family::flagged:
      case Family::symplectic:
        return upper < lower;
      case Family::set_valued:
        return cell::top(upper) < cell::min_of(lower);
      case Family::rpp:
        return lower <= upper;
      default:
        return true;
    }
  }

  ColumnSet build_column_set(const std::vector<int>& rows) const {
    ColumnSet cs;
    cs.rows = rows;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == rows.size()) {
        cs.fills.push_back(cur);
        return;
      }
      for (int v : cand_[rows[i] - 1]) {
        bool ok = true;
        const bool all_above = spec_.family == Family::ssaf || spec_.family == Family::nawf;
        for (std::size_t k = all_above ? 0 : (i ? i - 1 : i); k < i && ok; ++k) ok = vertical_ok(rows[k], cur[k], rows[i], v);
        if (!ok) continue;
        cur.push_back(v);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    for (const auto& fill : cs.fills) {
      Monomial m;
      int sign = 1;
      switch (spec_.family) {
        case Family::symplectic:
          for (int v : fill) m.e[(v + 1) / 2] += (v % 2) ? 1 : -1;
          break;
        case Family::set_valued:
          for (int v : fill) {
            for (int i : cell::elements(v)) ++m.e[i];
            if ((std::popcount(static_cast<unsigned>(v)) - 1) % 2) sign = -sign;
          }
          break;
        case Family::rpp: {
          auto d = fill;
          std::sort(d.begin(), d.end());
          d.erase(std::unique(d.begin(), d.end()), d.end());
          for (int v : d) ++m.e[v];
          break;
        }
        default:
          for (int v : fill) ++m.e[v];
      }
      cs.mono.push_back(m);
      cs.sign.push_back(sign);
    }
    return cs;
  }

  /// Checks one adjacent pair and collects its coinv/dn contributions.
  bool pair_ok(const ColumnSet& ls, const std::vector<int>& lf, const ColumnSet& rs, const std::vector<int>& rf,
               bool left_basement, int& coinv_out, int& dn_out) const {
    const int h = spec_.shape.rows();
    std::vector<int> L(h + 1, 0), R(h + 1, 0);
    for (std::size_t i = 0; i < ls.rows.size(); ++i) L[ls.rows[i]] = lf[i];
    for (std::size_t i = 0; i < rs.rows.size(); ++i) R[rs.rows[i]] = rf[i];
    const Family f = spec_.family;
    coinv_out = dn_out = 0;
    for (int r = 1; r <= h; ++r) {
      if (!L[r] || !R[r]) continue;
      switch (f) {
        case Family::ssaf:
        case Family::nawf:
        case Family::rpp:
          if (R[r] > L[r]) return false;
          break;
        case Family::set_valued:
          if (cell::top(L[r]) > cell::min_of(R[r])) return false;
          break;
        default:
          if (L[r] > R[r]) return false;
      }
    }
    if (f != Family::ssaf && f != Family::nawf) return true;
    for (int r = 1; r <= h; ++r)
      if (L[r])
        for (int r2 = r + 1; r2 <= h; ++r2)
          if (R[r2] && R[r2] == L[r]) return false;
    const bool satisfying = kCoinvRule == CoinvRule::satisfying;
    const bool stats = f == Family::nawf;
    for (int r = 1; r <= h; ++r) {
      if (!L[r] || !R[r]) continue;
      const int len = lengths_[r - 1];
      for (int r2 = r + 1; r2 <= h; ++r2) {
        if (!R[r2] || len < lengths_[r2 - 1]) continue;
        bool inv = L[r] >= R[r2] && R[r2] >= R[r];
        if (f == Family::ssaf && inv) return false;
        if (stats && inv == satisfying) ++coinv_out;
      }
      for (int r2 = 1; r2 < r; ++r2) {
        if (!L[r2] || len <= lengths_[r2 - 1]) continue;
        bool inv = L[r] >= L[r2] && L[r2] >= R[r];
        if (f == Family::ssaf && inv) return false;
        if (stats && inv == satisfying) ++coinv_out;
      }
      if (stats && L[r] != R[r] && (!left_basement || kDnCountsBasement)) ++dn_out;
    }
    return true;
  }

  EdgeTable build_edges(const ColumnSet& ls, const ColumnSet& rs, bool left_basement) const {
    EdgeTable et;
    et.by_left.resize(ls.fills.size());
    et.by_right.resize(rs.fills.size());
    std::vector<std::vector<Edge>> rows_of(ls.fills.size());
    parallel_for(ls.fills.size(), [&](std::size_t a) {
      for (std::size_t b = 0; b < rs.fills.size(); ++b) {
        int ci = 0, d = 0;
        if (pair_ok(ls, ls.fills[a], rs, rs.fills[b], left_basement, ci, d))
          rows_of[a].push_back({static_cast<int>(b), ci, d});
      }
    });
    for (std::size_t a = 0; a < rows_of.size(); ++a)
      for (const auto& e : rows_of[a]) et.by_right[e.other].push_back({static_cast<int>(a), e.coinv, e.dn});
    et.by_left = std::move(rows_of);
    return et;
  }

  std::map<std::pair<int, int>, Polynomial> edge_weights(const EdgeTable& et) const {
    std::map<std::pair<int, int>, Polynomial> out;
    const int n = spec_.n;
    Polynomial one_minus_t = Polynomial(n, 1) - Polynomial::t_var(n);
    for (const auto& lst : et.by_right)
      for (const auto& e : lst) {
        auto k = std::make_pair(e.coinv, e.dn);
        if (!out.count(k)) {
          Monomial m;
          m.e[0] = e.coinv;
          out.emplace(k, Polynomial::from_monomial(n, m) * one_minus_t.pow(static_cast<unsigned>(e.dn)));
        }
      }
    return out;
  }

  FillingSpec spec_;
  std::vector<std::vector<int>> cand_;
  std::vector<int> lengths_;
  ColumnSet basement_;
  std::vector<ColumnSet> sets_;
  std::map<std::vector<int>, int> set_ids_;
  std::map<std::pair<int, int>, EdgeTable> edges_;
};

/// Members of the family at the requested shape, each once, in reading order.
inline std::vector<AugmentedFilling> enumerate(const FillingSpec& s, Path path = Path::fast) {
  if (path == Path::oracle) return oracle::enumerate(s);
  std::vector<AugmentedFilling> out;
  TransferEngine eng(s);
  eng.enumerate(s.shape, [&](const AugmentedFilling& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

inline Polynomial generating_function(const FillingSpec& s, Path path = Path::fast) {
  if (path == Path::oracle) return oracle::generating_function(s);
  TransferEngine eng(s);
  return eng.generating_function(s.shape);
}

}  // namespace fillrec
