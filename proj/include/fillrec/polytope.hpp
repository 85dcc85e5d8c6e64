#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "fillrec/parallel.hpp"
#include "fillrec/poly.hpp"
#include "fillrec/recurrence.hpp"

namespace fillrec {

using Point = std::vector<std::int64_t>;
using PointSet = std::set<Point>;

struct Inequality {
  std::vector<std::int64_t> a;
  std::int64_t b = 0;  // a . x <= b
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// {x : a.x <= b for every row}, with a box containing every solution.
/// A reversed box interval marks a polytope that is empty for k >= 1.
struct HPolytope {
  int dim = 0;
  std::vector<Inequality> ineqs;
  std::vector<std::pair<std::int64_t, std::int64_t>> box;

  void validate() const {
    if (dim < 0 || dim > kMaxVars) throw UsageError("polytope dimension out of range");
    if (static_cast<int>(box.size()) != dim) throw UsageError("bounding box needs one interval per coordinate");
    for (const auto& q : ineqs)
      if (static_cast<int>(q.a.size()) != dim) throw UsageError("inequality has the wrong length");
  }

  bool box_empty() const {
    for (const auto& [lo, hi] : box)
      if (lo > hi) return true;
    return false;
  }
  friend bool operator==(const HPolytope&, const HPolytope&) = default;
};

inline bool contains(const HPolytope& p, const Point& x, std::int64_t k) {
  for (const auto& q : p.ineqs) {
    std::int64_t s = 0;
    for (int i = 0; i < p.dim; ++i) s += q.a[i] * x[i];
    if (s > k * q.b) return false;
  }
  return true;
}

/// Reference: scan the whole k-scaled box.
inline PointSet lattice_points_exhaustive(const HPolytope& p, std::int64_t k) {
  p.validate();
  if (k < 0) throw UsageError("dilation must be nonnegative");
  PointSet out;
  if (k > 0 && p.box_empty()) return out;
  Point x(p.dim);
  std::function<void(int)> rec = [&](int i) {
    if (i == p.dim) {
      if (contains(p, x, k)) out.insert(x);
      return;
    }
    for (std::int64_t v = k * p.box[i].first; v <= k * p.box[i].second; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

namespace detail {
/// Prunes a prefix when some inequality cannot be met by any completion
/// inside the box.
inline bool prefix_feasible(const HPolytope& p, const Point& x, int fixed, std::int64_t k) {
  for (const auto& q : p.ineqs) {
    std::int64_t s = 0;
    for (int i = 0; i < fixed; ++i) s += q.a[i] * x[i];
    for (int i = fixed; i < p.dim; ++i) s += std::min(q.a[i] * k * p.box[i].first, q.a[i] * k * p.box[i].second);
    if (s > k * q.b) return false;
  }
  return true;
}
}  // namespace detail

/// k P intersected with Z^d. Slabs of the first coordinate run in parallel.
inline PointSet lattice_points(const HPolytope& p, std::int64_t k) {
  p.validate();
  if (k < 0) throw UsageError("dilation must be nonnegative");
  if (p.dim == 0) return contains(p, {}, k) ? PointSet{Point{}} : PointSet{};
  if (k > 0 && p.box_empty()) return {};
  const std::int64_t lo = k * p.box[0].first, hi = k * p.box[0].second;
  std::vector<PointSet> slabs(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(
      slabs.size(),
      [&](std::size_t s) {
        Point x(p.dim);
        x[0] = lo + static_cast<std::int64_t>(s);
        std::function<void(int)> rec = [&](int i) {
          if (!detail::prefix_feasible(p, x, i, k)) return;
          if (i == p.dim) {
            slabs[s].insert(x);
            return;
          }
          for (std::int64_t v = k * p.box[i].first; v <= k * p.box[i].second; ++v) {
            x[i] = v;
            rec(i + 1);
          }
        };
        rec(1);
      },
      1);
  PointSet out;
  for (auto& s : slabs) out.insert(s.begin(), s.end());
  return out;
}

inline Polynomial integer_point_transform(const PointSet& pts, int dim) {
  std::vector<Polynomial::Term> terms;
  for (const auto& x : pts) {
    if (static_cast<int>(x.size()) != dim) throw UsageError("point has the wrong dimension");
    Monomial m;
    for (int i = 0; i < dim; ++i) m.e[i + 1] = static_cast<std::int32_t>(x[i]);
    terms.push_back({m, 1});
  }
  return Polynomial::from_terms(dim, std::move(terms));
}

inline CharPoly idp_char_poly(const HPolytope& p) {
  CharPoly chi;
  for (const auto& x : lattice_points(p, 1)) chi.add(integer_point_transform({x}, p.dim));
  return chi;
}

struct IdpReport {
  bool passed = false;
  std::optional<int> failing_index;
  CharPoly chi;
  SequenceWindow window;
};

/// Window of transforms of kP, k = 0..kmax, against prod_{x in P} (t - z^x).
inline IdpReport idp_recurrence_check(const HPolytope& p, int kmax) {
  IdpReport rep;
  rep.chi = idp_char_poly(p);
  if (kmax < rep.chi.degree())
    throw WindowTooShort("kmax must be at least the number of lattice points (" + std::to_string(rep.chi.degree()) + ")");
  for (int k = 0; k <= kmax; ++k) rep.window.push_back(integer_point_transform(lattice_points(p, k), p.dim));
  rep.failing_index = first_annihilation_failure(rep.chi, rep.window);
  rep.passed = !rep.failing_index;
  return rep;
}

/// Exhaustive check that each lattice point of kP splits into k points of P, k <= kmax.
inline bool is_idp_small(const HPolytope& p, int kmax) {
  const PointSet base = lattice_points(p, 1);
  std::vector<PointSet> sums{PointSet{Point(p.dim, 0)}};
  for (int k = 1; k <= kmax; ++k) {
    PointSet next;
    for (const auto& s : sums.back())
      for (const auto& x : base) {
        Point y = s;
        for (int i = 0; i < p.dim; ++i) y[i] += x[i];
        next.insert(y);
      }
    if (next != lattice_points(p, k)) return false;
    sums.push_back(std::move(next));
  }
  return true;
}

inline HPolytope intersect(const HPolytope& a, const HPolytope& b) {
  if (a.dim != b.dim) throw UsageError("faces live in different dimensions");
  HPolytope out = a;
  out.ineqs.insert(out.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
  for (int i = 0; i < a.dim; ++i) {
    out.box[i].first = std::max(a.box[i].first, b.box[i].first);
    out.box[i].second = std::min(a.box[i].second, b.box[i].second);
  }
  return out;
}

/// Transform of k(F_1 u ... u F_l) by inclusion-exclusion over the sets
/// kF_i n kF_j n ..., each cut out by the concatenated inequalities at scale
/// k, cross-checked against the direct union. At k = 0 every nonempty face
/// dilates to the origin, so the value there is 1.
inline Polynomial faces_union_transform(const std::vector<HPolytope>& faces, int k) {
  if (faces.empty()) throw UsageError("need at least one face");
  const int dim = faces[0].dim;
  const std::size_t l = faces.size();
  if (l > 20) throw UsageError("too many faces for inclusion-exclusion");
  PointSet direct;
  for (const auto& f : faces) {
    auto pts = lattice_points(f, k);
    direct.insert(pts.begin(), pts.end());
  }
  std::vector<Polynomial> parts;
  for (std::size_t mask = 1; mask < (std::size_t{1} << l); ++mask) {
    std::optional<HPolytope> inter;
    for (std::size_t i = 0; i < l; ++i)
      if (mask >> i & 1) inter = inter ? intersect(*inter, faces[i]) : faces[i];
    Polynomial t = integer_point_transform(lattice_points(*inter, k), dim);
    parts.push_back(std::popcount(mask) % 2 ? t : -t);
  }
  Polynomial ie = Polynomial::sum(dim, parts);
  Polynomial un = integer_point_transform(direct, dim);
  if (ie != un) throw Inconsistency("inclusion-exclusion disagrees with the direct union");
  return ie;
}

}  // namespace fillrec
