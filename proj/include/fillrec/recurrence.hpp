#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fillrec/enumerate.hpp"
#include "fillrec/generators.hpp"
#include "fillrec/poly.hpp"

namespace fillrec {

using Rational = boost::multiprecision::cpp_rational;
using SequenceWindow = std::vector<Polynomial>;

namespace detail {
inline bool poly_less(const Polynomial& a, const Polynomial& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i].mono != y[i].mono) return x[i].mono < y[i].mono;
    if (x[i].coeff != y[i].coeff) return x[i].coeff < y[i].coeff;
  }
  return x.size() < y.size();
}
}  // namespace detail

/// Characteristic polynomial kept factored: distinct roots with multiplicities,
/// stored in canonical polynomial order.
class CharPoly {
 public:
  struct Root {
    Polynomial poly;
    int mult = 1;
    friend bool operator==(const Root&, const Root&) = default;
  };

  CharPoly() = default;

  /// Adds a root; a repeated root keeps the larger multiplicity.
  void add(const Polynomial& p, int mult = 1) {
    if (mult < 1) throw UsageError("root multiplicity must be positive");
    if (!roots_.empty() && roots_.front().poly.num_vars() != p.num_vars())
      throw ScopeError("roots in different variable scopes");
    auto it = std::lower_bound(roots_.begin(), roots_.end(), p,
                               [](const Root& r, const Polynomial& q) { return detail::poly_less(r.poly, q); });
    if (it != roots_.end() && it->poly == p)
      it->mult = std::max(it->mult, mult);
    else
      roots_.insert(it, {p, mult});
  }

  const std::vector<Root>& roots() const { return roots_; }
  int degree() const {
    int d = 0;
    for (const auto& r : roots_) d += r.mult;
    return d;
  }
  std::size_t distinct() const { return roots_.size(); }
  bool empty() const { return roots_.empty(); }
  int num_vars() const { return roots_.empty() ? 0 : roots_.front().poly.num_vars(); }
  friend bool operator==(const CharPoly&, const CharPoly&) = default;

 private:
  std::vector<Root> roots_;
};

/// c_1..c_r with c_j = (-1)^j e_j of the roots (with multiplicity).
inline std::vector<Polynomial> char_coeffs(const CharPoly& chi) {
  if (chi.empty()) return {};
  const int n = chi.num_vars();
  std::vector<Polynomial> e{Polynomial(n, 1)};  // monic, descending powers
  for (const auto& r : chi.roots())
    for (int m = 0; m < r.mult; ++m) {
      std::vector<Polynomial> next(e.size() + 1, Polynomial(n));
      for (std::size_t j = 0; j < e.size(); ++j) {
        next[j] += e[j];
        next[j + 1] -= r.poly * e[j];
      }
      e = std::move(next);
    }
  return std::vector<Polynomial>(e.begin() + 1, e.end());
}

/// First k in r..m where the recurrence fails, if any.
inline std::optional<int> first_annihilation_failure(const CharPoly& chi, const SequenceWindow& w) {
  const int r = chi.degree();
  const int m = static_cast<int>(w.size()) - 1;
  if (m + 1 < r + 1) throw WindowTooShort("window needs at least r+1 = " + std::to_string(r + 1) + " values");
  auto c = char_coeffs(chi);
  for (int k = r; k <= m; ++k) {
    Polynomial acc = w[k];
    for (int j = 1; j <= r; ++j) acc += c[j - 1] * w[k - j];
    if (!acc.is_zero()) return k;
  }
  return std::nullopt;
}

inline bool annihilates(const CharPoly& chi, const SequenceWindow& w) { return !first_annihilation_failure(chi, w); }

namespace detail {

inline constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

inline bool det_nonzero_mod(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
  const std::size_t r = m.size();
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t piv = col;
    while (piv < r && m[piv][col] == 0) ++piv;
    if (piv == r) return false;
    std::swap(m[piv], m[col]);
    std::uint64_t inv = powmod(m[col][col], p - 2, p);
    for (std::size_t i = col + 1; i < r; ++i) {
      if (!m[i][col]) continue;
      std::uint64_t f = mulmod(m[i][col], inv, p);
      for (std::size_t j = col; j < r; ++j) m[i][j] = (m[i][j] + p - mulmod(f, m[col][j], p)) % p;
    }
  }
  return true;
}

/// Fraction-free elimination with exact polynomial division.
inline bool det_is_zero_exact(std::vector<std::vector<Polynomial>> m) {
  const std::size_t r = m.size();
  if (!r) return false;
  const int n = m[0][0].num_vars();
  Polynomial prev(n, 1);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t piv = k;
    while (piv < r && m[piv][k].is_zero()) ++piv;
    if (piv == r) return true;
    std::swap(m[piv], m[k]);
    for (std::size_t i = k + 1; i < r; ++i)
      for (std::size_t j = k + 1; j < r; ++j) m[i][j] = divide_exact(Polynomial::mul_sub(m[k][k], m[i][j], m[i][k], m[k][j]), prev);
    prev = m[k][k];
  }
  return false;
}

}  // namespace detail

/// Every formable size x size determinant det[a_{k+i-j}] vanishes. A nonzero
/// value at a random point mod 2^61-1 proves nonvanishing; otherwise the
/// determinant is confirmed exactly.
inline bool toeplitz_minors_vanish(const SequenceWindow& w, int size) {
  if (size < 1) throw UsageError("determinant size must be positive");
  const int m = static_cast<int>(w.size()) - 1;
  if (m + 1 < 2 * size - 1)
    throw WindowTooShort("window needs at least " + std::to_string(2 * size - 1) + " values");
  const int n = w[0].num_vars();
  std::mt19937_64 rng(0x5eed + size);
  std::vector<std::vector<std::uint64_t>> evals;
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<std::uint64_t> pt(n + 1);
    for (auto& v : pt) v = 2 + rng() % (detail::kPrime - 3);
    std::vector<std::uint64_t> ev;
    for (const auto& a : w) ev.push_back(eval_mod(a, pt, detail::kPrime));
    evals.push_back(std::move(ev));
  }
  for (int k = size - 1; k + size - 1 <= m; ++k) {
    bool nonzero = false;
    for (const auto& ev : evals) {
      std::vector<std::vector<std::uint64_t>> mm(size, std::vector<std::uint64_t>(size));
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) mm[i][j] = ev[k + i - j];
      if (detail::det_nonzero_mod(mm, detail::kPrime)) nonzero = true;
    }
    if (nonzero) return false;
    std::vector<std::vector<Polynomial>> mm(size, std::vector<Polynomial>(size));
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) mm[i][j] = w[k + i - j];
    if (!detail::det_is_zero_exact(mm)) return false;
  }
  return true;
}

/// Recurrence of length r (r coefficients): all (r+1) x (r+1) minors vanish.
inline bool determinant_test(const SequenceWindow& w, int r) {
  if (r < 1) throw UsageError("order must be positive");
  return toeplitz_minors_vanish(w, r + 1);
}

/// Smallest r <= max_order passing determinant_test with at least two
/// determinants formed.
inline std::optional<int> detect_order(const SequenceWindow& w, int max_order) {
  for (int r = 1; r <= max_order; ++r) {
    if (static_cast<int>(w.size()) < 2 * r + 2) break;
    if (determinant_test(w, r)) return r;
  }
  return std::nullopt;
}

/// Roots from key tableaux whose equal-height columns agree: one column per
/// distinct height, weights scaled by that height's multiplicity.
inline CharPoly char_poly_key(const Composition& alpha, int n) {
  CharPoly chi;
  auto bs = shape_data(alpha, n);
  if (bs.shape.empty()) {
    chi.add(Polynomial(n, 1));
    return chi;
  }
  const Composition& lambda = bs.shape;
  std::vector<int> heights, mults;
  for (int c = 1; c <= lambda[0]; ++c) {
    int h = 0;
    while (h < static_cast<int>(lambda.size()) && lambda[h] >= c) ++h;
    if (!heights.empty() && heights.back() == h)
      ++mults.back();
    else {
      heights.push_back(h);
      mults.push_back(1);
    }
  }
  Composition collapsed(lambda.size(), 0);
  for (std::size_t r = 0; r < lambda.size(); ++r)
    for (int h : heights)
      if (h > static_cast<int>(r)) ++collapsed[r];
  FillingSpec s;
  s.family = Family::ssaf;
  s.shape = SkewShape(collapsed);
  s.basement = bs.basement;
  s.n = n;
  for (const auto& t : enumerate(s)) {
    Monomial m;
    for (int c = 1; c <= t.num_cols(); ++c)
      for (int r = 1; r <= t.num_rows(); ++r)
        if (t.has_box(r, c)) m.e[t.at(r, c)] += mults[c - 1];
    chi.add(Polynomial::from_monomial(n, m));
  }
  return chi;
}

/// Product form for families with a linear statistic: one representative
/// column per block of equal column shapes, over all column lists that
/// survive in some dilation.
inline CharPoly char_poly_family(const FamilySpec& f) {
  if (f.family == Gen::hl_E || f.family == Gen::hl_P)
    throw UnsupportedProduct("family " + gen_name(f.family) + " has an affine statistic; use determinant_test");
  if (f.family == Gen::grothendieck)
    throw UnsupportedProduct("set-valued tableaux are not closed under column duplication");
  FillingSpec base = filling_spec(f);
  CharPoly chi;
  if (base.shape.size() == 0) {
    chi.add(Polynomial(f.n, 1));
    return chi;
  }
  TransferEngine eng(base);
  auto plan = eng.column_plan(base.shape);
  std::vector<std::pair<int, int>> blocks;  // (set id, multiplicity)
  for (int id : plan) {
    if (!blocks.empty() && blocks.back().first == id)
      ++blocks.back().second;
    else
      blocks.push_back({id, 1});
  }
  const bool basement = has_basement(base.family);
  std::map<int, std::set<Monomial>> states;  // last fill -> accumulated exponents
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [sid, mult] = blocks[b];
    const auto& cs = eng.column_set(sid);
    const std::size_t nf = cs.fills.size();
    const auto& inner = eng.edges(sid, sid);
    std::vector<std::vector<char>> reach(nf, std::vector<char>(nf, 0));
    for (std::size_t s = 0; s < nf; ++s) {
      std::vector<std::size_t> stack{s};
      reach[s][s] = 1;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (const auto& e : inner.by_left[u])
          if (!reach[s][e.other]) {
            reach[s][e.other] = 1;
            stack.push_back(static_cast<std::size_t>(e.other));
          }
      }
    }
    std::map<int, std::set<Monomial>> next;
    auto expand = [&](int entry, const std::set<Monomial>& accs) {
      for (std::size_t rep = 0; rep < nf; ++rep) {
        if (!reach[entry][rep]) continue;
        Monomial add;
        for (std::size_t v = 0; v < add.e.size(); ++v) add.e[v] = mult * cs.mono[rep].e[v];
        for (std::size_t last = 0; last < nf; ++last) {
          if (!reach[rep][last]) continue;
          auto& dst = next[static_cast<int>(last)];
          for (const auto& a : accs) dst.insert(a * add);
        }
      }
    };
    if (b == 0) {
      const std::set<Monomial> unit{Monomial{}};
      if (basement) {
        for (const auto& e : eng.edges(TransferEngine::kBasement, sid).by_left[0]) expand(e.other, unit);
      } else {
        for (std::size_t f0 = 0; f0 < nf; ++f0) expand(static_cast<int>(f0), unit);
      }
    } else {
      const auto& between = eng.edges(blocks[b - 1].first, sid);
      for (const auto& [last, accs] : states)
        for (const auto& e : between.by_left[last]) expand(e.other, accs);
    }
    states = std::move(next);
  }
  std::set<Monomial> roots;
  for (const auto& [last, accs] : states) roots.insert(accs.begin(), accs.end());
  for (const auto& m : roots) chi.add(Polynomial::from_monomial(f.n, m));
  return chi;
}

inline CharPoly seq_sum(const CharPoly& a, const CharPoly& b) {
  CharPoly out = a;
  for (const auto& r : b.roots()) out.add(r.poly, r.mult);
  return out;
}

inline CharPoly seq_product(const CharPoly& a, const CharPoly& b) {
  CharPoly out;
  for (const auto& x : a.roots())
    for (const auto& y : b.roots()) out.add(x.poly * y.poly, x.mult + y.mult - 1);
  return out;
}

inline CharPoly seq_decimate(const CharPoly& chi, int s) {
  if (s < 1) throw UsageError("decimation step must be positive");
  CharPoly out;
  for (const auto& r : chi.roots()) out.add(r.poly.pow(static_cast<unsigned>(s)), r.mult);
  return out;
}

/// Exact interpolating polynomial through (k, v_k), k = 0..m, ascending
/// coefficients with trailing zeros removed.
inline std::vector<Rational> interpolate(const std::vector<Integer>& values) {
  const std::size_t m = values.size();
  std::vector<Rational> d(values.begin(), values.end());
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i) {
      d[i] = (d[i] - d[i - 1]) / Rational(static_cast<long long>(j));
      if (i == j) break;
    }
  // Newton form sum d_j prod_{i<j} (k - i), expanded.
  std::vector<Rational> coeffs(m, Rational(0)), basis{Rational(1)};
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t e = 0; e < basis.size(); ++e) coeffs[e] += d[j] * basis[e];
    std::vector<Rational> nb(basis.size() + 1, Rational(0));
    for (std::size_t e = 0; e < basis.size(); ++e) {
      nb[e + 1] += basis[e];
      nb[e] -= basis[e] * Rational(static_cast<long long>(j));
    }
    basis = std::move(nb);
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

inline Rational evaluate(const std::vector<Rational>& coeffs, long long k) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * k + *it;
  return acc;
}

struct FitResult {
  std::vector<Rational> coeffs;  // ascending powers of k
  std::vector<Integer> samples;  // k = 0..kmax+1
  int roots = 0;
  bool held_out_ok = false;
  bool nonnegative = false;
};

/// Fits k -> K_{k alpha}(1^n) on k = 0..kmax and checks sample kmax+1.
inline FitResult specialize_and_fit(const Composition& alpha, int n, int kmax) {
  FitResult res;
  res.roots = static_cast<int>(char_poly_key(alpha, n).distinct());
  if (kmax < res.roots)
    throw WindowTooShort("kmax must be at least the root count " + std::to_string(res.roots));
  res.samples = sequence_at_ones({Gen::key, alpha, {}, {}, {}, {}, n}, kmax + 1);
  std::vector<Integer> fit(res.samples.begin(), res.samples.end() - 1);
  res.coeffs = interpolate(fit);
  res.held_out_ok = evaluate(res.coeffs, kmax + 1) == Rational(res.samples.back());
  if (!res.held_out_ok) throw Inconsistency("fitted polynomial misses the held-out sample");
  res.nonnegative = std::all_of(res.coeffs.begin(), res.coeffs.end(), [](const Rational& c) { return c >= 0; });
  return res;
}

}  // namespace fillrec
