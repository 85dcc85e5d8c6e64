#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fillrec/errors.hpp"

namespace fillrec {

using Integer = boost::multiprecision::cpp_int;

inline constexpr int kMaxVars = 15;

/// Exponent vector. Slot 0 holds t, slots 1..kMaxVars hold x_1..x_n.
/// The defaulted ordering is lexicographic on (t, x_1, ..., x_n), which is
/// the canonical term order.
struct Monomial {
  std::array<std::int32_t, kMaxVars + 1> e{};

  int t() const { return e[0]; }
  int x(int i) const { return e[i]; }

  Monomial& operator*=(const Monomial& o) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
    return *this;
  }
  Monomial& operator/=(const Monomial& o) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  friend Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  int x_degree() const {
    int d = 0;
    for (int i = 1; i <= kMaxVars; ++i) d += e[i];
    return d;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : m.e) h = (h ^ static_cast<std::uint32_t>(v)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

namespace detail {

/// Order-preserving 64-bit encoding of monomials whose exponents lie in a
/// known box: slot 0 (t) most significant, then x_1, ..., x_n. Encodings
/// with shifted offsets add up to the encoding of the product.
struct Packer {
  int n = 0;
  std::array<int, kMaxVars + 1> lo{}, shift{};
  std::array<std::uint64_t, kMaxVars + 1> mask{};

  /// Fails when the box needs more than 62 bits.
  static std::optional<Packer> make(int n, const std::array<int, kMaxVars + 1>& lo,
                                    const std::array<int, kMaxVars + 1>& hi) {
    Packer pk;
    pk.n = n;
    pk.lo = lo;
    int bits = 0;
    for (int v = n; v >= 0; --v) {
      const long long span = static_cast<long long>(hi[v]) - lo[v];
      if (span < 0) return std::nullopt;
      int w = span == 0 ? 0 : std::bit_width(static_cast<std::uint64_t>(span));
      pk.shift[v] = bits;
      pk.mask[v] = w ? (std::uint64_t{1} << w) - 1 : 0;
      bits += w;
      if (bits > 62) return std::nullopt;
    }
    return pk;
  }

  std::uint64_t encode(const Monomial& m, const std::array<int, kMaxVars + 1>& offset) const {
    std::uint64_t k = 0;
    for (int v = 0; v <= n; ++v) k += static_cast<std::uint64_t>(m.e[v] - offset[v]) << shift[v];
    return k;
  }
  std::uint64_t encode(const Monomial& m) const { return encode(m, lo); }

  Monomial decode(std::uint64_t k) const {
    Monomial m;
    for (int v = 0; v <= n; ++v) m.e[v] = lo[v] + static_cast<int>((k >> shift[v]) & mask[v]);
    return m;
  }
};

/// Open-addressing accumulator from packed monomial keys to 128-bit sums.
class FlatAccumulator {
 public:
  explicit FlatAccumulator(std::size_t expect) {
    std::size_t cap = 16;
    while (cap < 2 * expect) cap <<= 1;
    keys_.assign(cap, 0);
    vals_.assign(cap, 0);
  }

  /// Adds v at key; false on overflow.
  bool add(std::uint64_t key, __int128 v) {
    bool fresh;
    __int128& slot_val = at(key, fresh);
    return !__builtin_add_overflow(slot_val, v, &slot_val);
  }

  /// Value slot for key, created as zero when absent. Invalidated by the
  /// next insertion.
  __int128& at(std::uint64_t key, bool& fresh) {
    if (2 * (used_ + 1) > keys_.size()) grow();
    const std::uint64_t stored = key + 1;
    std::size_t i = slot(stored);
    while (keys_[i] && keys_[i] != stored) i = (i + 1) & (keys_.size() - 1);
    fresh = !keys_[i];
    if (fresh) {
      keys_[i] = stored;
      ++used_;
    }
    return vals_[i];
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i] && vals_[i] != 0) f(keys_[i] - 1, vals_[i]);
  }

 private:
  std::size_t slot(std::uint64_t k) const {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    return static_cast<std::size_t>(k) & (keys_.size() - 1);
  }
  void grow() {
    std::vector<std::uint64_t> ok = std::move(keys_);
    std::vector<__int128> ov = std::move(vals_);
    keys_.assign(ok.size() * 2, 0);
    vals_.assign(ok.size() * 2, 0);
    for (std::size_t j = 0; j < ok.size(); ++j) {
      if (!ok[j]) continue;
      std::size_t i = slot(ok[j]);
      while (keys_[i]) i = (i + 1) & (keys_.size() - 1);
      keys_[i] = ok[j];
      vals_[i] = ov[j];
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<__int128> vals_;
  std::size_t used_ = 0;
};

}  // namespace detail

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Integer coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Polynomial() = default;
  explicit Polynomial(int num_vars) : n_(checked_vars(num_vars)) {}
  Polynomial(int num_vars, const Integer& c) : n_(checked_vars(num_vars)) {
    if (c != 0) terms_.push_back({Monomial{}, c});
  }

  static Polynomial constant(int num_vars, const Integer& c) { return Polynomial(num_vars, c); }

  /// x_i, 1-based.
  static Polynomial variable(int num_vars, int i) {
    if (i < 1 || i > num_vars) throw ScopeError("variable index out of scope");
    Monomial m;
    m.e[i] = 1;
    return from_monomial(num_vars, m);
  }

  static Polynomial t_var(int num_vars) {
    Monomial m;
    m.e[0] = 1;
    return from_monomial(num_vars, m);
  }

  static Polynomial from_monomial(int num_vars, const Monomial& m, const Integer& c = 1) {
    Polynomial p(num_vars);
    check_monomial(num_vars, m);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// x^exps * t^t_exp.
  static Polynomial from_exponents(int num_vars, const std::vector<int>& exps, int t_exp = 0,
                                   const Integer& c = 1) {
    if (static_cast<int>(exps.size()) != num_vars) throw ScopeError("exponent vector length differs from num_vars");
    Monomial m;
    m.e[0] = t_exp;
    for (int i = 0; i < num_vars; ++i) m.e[i + 1] = exps[i];
    return from_monomial(num_vars, m, c);
  }

  static Polynomial from_terms(int num_vars, std::vector<Term> terms) {
    Polynomial p(num_vars);
    for (const auto& t : terms) check_monomial(num_vars, t.mono);
    canonicalize(terms);
    p.terms_ = std::move(terms);
    return p;
  }

  int num_vars() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Monomial{});
  }
  Integer constant_term() const {
    for (const auto& t : terms_)
      if (t.mono == Monomial{}) return t.coeff;
    return 0;
  }
  /// Largest term in canonical order.
  const Term& leading() const { return terms_.back(); }
  const Term& lowest() const { return terms_.front(); }

  bool has_negative_x() const {
    for (const auto& t : terms_)
      for (int i = 1; i <= n_; ++i)
        if (t.mono.e[i] < 0) return true;
    return false;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    same_scope(a, b);
    Polynomial r(a.n_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() && j != b.terms_.end()) {
      if (i->mono < j->mono) {
        r.terms_.push_back(*i++);
      } else if (j->mono < i->mono) {
        r.terms_.push_back(*j++);
      } else {
        Integer c = i->coeff + j->coeff;
        if (c != 0) r.terms_.push_back({i->mono, std::move(c)});
        ++i, ++j;
      }
    }
    r.terms_.insert(r.terms_.end(), i, a.terms_.end());
    r.terms_.insert(r.terms_.end(), j, b.terms_.end());
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    same_scope(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.n_);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    return product_sum({{&a, &b, 1}});
  }

  /// a*b - c*d accumulated in one pass.
  static Polynomial mul_sub(const Polynomial& a, const Polynomial& b, const Polynomial& c, const Polynomial& d) {
    same_scope(a, b);
    same_scope(a, c);
    same_scope(a, d);
    return product_sum({{&a, &b, 1}, {&c, &d, -1}});
  }

  friend Polynomial operator*(const Integer& c, const Polynomial& p) {
    Polynomial r(p.n_);
    if (c == 0) return r;
    r.terms_ = p.terms_;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Multiply by a single monomial; order is preserved so no re-sort.
  Polynomial times_monomial(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.mono *= m;
    for (const auto& t : r.terms_) check_monomial(n_, t.mono);
    return r;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result(n_, 1), base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  /// Sum of many polynomials in one sort.
  static Polynomial sum(int num_vars, const std::vector<Polynomial>& ps) {
    std::vector<Term> all;
    std::size_t total = 0;
    for (const auto& p : ps) total += p.terms_.size();
    all.reserve(total);
    for (const auto& p : ps) {
      if (p.n_ != num_vars) throw ScopeError("mismatched variable scope in sum");
      all.insert(all.end(), p.terms_.begin(), p.terms_.end());
    }
    Polynomial r(num_vars);
    canonicalize(all);
    r.terms_ = std::move(all);
    return r;
  }

  static void canonicalize(std::vector<Term>& v) {
    std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < v.size();) {
      std::size_t s = r;
      Integer c = std::move(v[r].coeff);
      for (++s; s < v.size() && v[s].mono == v[r].mono; ++s) c += v[s].coeff;
      if (c != 0) {
        v[w].mono = v[r].mono;
        v[w].coeff = std::move(c);
        ++w;
      }
      r = s;
    }
    v.resize(w);
  }

  static void check_monomial(int num_vars, const Monomial& m) {
    if (m.e[0] < 0) throw InvariantViolation("negative t exponent");
    for (int i = num_vars + 1; i <= kMaxVars; ++i)
      if (m.e[i] != 0) throw ScopeError("exponent outside variable scope");
  }

 private:
  static int checked_vars(int n) {
    if (n < 0 || n > kMaxVars) throw ScopeError("num_vars must be in 0.." + std::to_string(kMaxVars));
    return n;
  }
  static void same_scope(const Polynomial& a, const Polynomial& b) {
    if (a.n_ != b.n_)
      throw ScopeError("mismatched variable scope: " + std::to_string(a.n_) + " vs " + std::to_string(b.n_));
  }
  struct Product {
    const Polynomial* a;
    const Polynomial* b;
    int sign;
  };

  static bool fits_i64(const Integer& c) {
    return c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max();
  }

  /// Sum of signed products. Runs in 128-bit arithmetic when every input
  /// coefficient fits in 64 bits and no partial sum overflows; otherwise
  /// in big integers.
  using Range = std::array<int, kMaxVars + 1>;

  static void exponent_range(const Polynomial& f, Range& mn, Range& mx) {
    mn.fill(std::numeric_limits<int>::max());
    mx.fill(std::numeric_limits<int>::min());
    for (const auto& t : f.terms_)
      for (int v = 0; v <= f.n_; ++v) {
        mn[v] = std::min(mn[v], t.mono.e[v]);
        mx[v] = std::max(mx[v], t.mono.e[v]);
      }
  }

  /// 128-bit sums over packed keys; nullopt on overflow or an oversized box.
  static std::optional<Polynomial> packed_product_sum(const std::vector<Product>& prods, int n) {
    std::vector<Range> alo(prods.size()), ahi(prods.size()), blo(prods.size()), bhi(prods.size());
    Range lo, hi;
    lo.fill(std::numeric_limits<int>::max());
    hi.fill(std::numeric_limits<int>::min());
    std::size_t work = 0;
    for (std::size_t i = 0; i < prods.size(); ++i) {
      exponent_range(*prods[i].a, alo[i], ahi[i]);
      exponent_range(*prods[i].b, blo[i], bhi[i]);
      for (int v = 0; v <= n; ++v) {
        lo[v] = std::min(lo[v], alo[i][v] + blo[i][v]);
        hi[v] = std::max(hi[v], ahi[i][v] + bhi[i][v]);
      }
      work += prods[i].a->size() * prods[i].b->size();
    }
    auto pk = detail::Packer::make(n, lo, hi);
    if (!pk) return std::nullopt;
    detail::FlatAccumulator acc(std::min<std::size_t>(work, 1u << 16));
    for (std::size_t i = 0; i < prods.size(); ++i) {
      Range boff;
      for (int v = 0; v <= kMaxVars; ++v) boff[v] = v <= n ? lo[v] - alo[i][v] : 0;
      std::vector<std::pair<std::uint64_t, std::int64_t>> bk;
      bk.reserve(prods[i].b->size());
      for (const auto& t : prods[i].b->terms_) bk.push_back({pk->encode(t.mono, boff), t.coeff.convert_to<std::int64_t>()});
      for (const auto& s : prods[i].a->terms_) {
        const std::uint64_t ka = pk->encode(s.mono, alo[i]);
        const __int128 sc = static_cast<__int128>(s.coeff.convert_to<std::int64_t>()) * prods[i].sign;
        for (const auto& [kb, cb] : bk)
          if (!acc.add(ka + kb, sc * cb)) return std::nullopt;
      }
    }
    std::vector<std::pair<std::uint64_t, __int128>> kv;
    acc.for_each([&](std::uint64_t k, __int128 c) { kv.push_back({k, c}); });
    std::sort(kv.begin(), kv.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Polynomial r(n);
    r.terms_.reserve(kv.size());
    for (const auto& [k, c] : kv) r.terms_.push_back({pk->decode(k), from_i128(c)});
    return r;
  }

  static Polynomial product_sum(const std::vector<Product>& prods) {
    const int n = prods.front().a->n_;
    std::size_t work = 0;
    bool small = true;
    for (const auto& pr : prods) {
      work += pr.a->terms_.size() * pr.b->terms_.size();
      for (const auto* f : {pr.a, pr.b})
        for (const auto& t : f->terms_) small = small && fits_i64(t.coeff);
    }
    const std::size_t cap = std::min<std::size_t>(work, 1u << 20);
    std::vector<Term> out;
    if (small) {
      if (auto r = packed_product_sum(prods, n)) return *std::move(r);
    }
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(cap);
    Integer prod;
    for (const auto& pr : prods)
      for (const auto& s : pr.a->terms_)
        for (const auto& t : pr.b->terms_) {
          boost::multiprecision::multiply(prod, s.coeff, t.coeff);
          if (pr.sign > 0)
            acc[s.mono * t.mono] += prod;
          else
            acc[s.mono * t.mono] -= prod;
        }
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
    Polynomial r(n);
    r.terms_ = std::move(out);
    return r;
  }

 public:
  static Integer from_i128(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? Integer(-r) : r;
  }

 private:
  Polynomial times_term(const Term& s) const {
    Polynomial r = times_monomial(s.mono);
    if (s.coeff != 1)
      for (auto& t : r.terms_) t.coeff *= s.coeff;
    return r;
  }

  int n_ = 0;
  std::vector<Term> terms_;
};

inline Polynomial poly_add(const Polynomial& p, const Polynomial& q) { return p + q; }
inline Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

/// Exact division p / q in the Laurent ring; nullopt when q does not divide p.
/// Quotient exponents are confined to the box spanned by the exponent ranges,
/// which makes the loop finite even for Laurent input.
inline std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& q) {
  if (p.num_vars() != q.num_vars()) throw ScopeError("mismatched variable scope in division");
  if (q.is_zero()) throw InvariantViolation("division by zero polynomial");
  const int n = p.num_vars();
  if (p.is_zero()) return Polynomial(n);

  std::array<int, kMaxVars + 1> lo{}, hi{};
  auto range = [n](const Polynomial& f, std::array<int, kMaxVars + 1>& mn, std::array<int, kMaxVars + 1>& mx) {
    mn.fill(std::numeric_limits<int>::max());
    mx.fill(std::numeric_limits<int>::min());
    for (const auto& t : f.terms())
      for (int v = 0; v <= n; ++v) {
        mn[v] = std::min(mn[v], t.mono.e[v]);
        mx[v] = std::max(mx[v], t.mono.e[v]);
      }
  };
  std::array<int, kMaxVars + 1> pmin, pmax, qmin, qmax;
  range(p, pmin, pmax);
  range(q, qmin, qmax);
  for (int v = 0; v <= n; ++v) {
    lo[v] = pmin[v] - qmin[v];
    hi[v] = pmax[v] - qmax[v];
    if (lo[v] > hi[v]) return std::nullopt;
  }

  auto in_box = [&](const Monomial& m) {
    if (m.e[0] < 0) return false;
    for (int v = 0; v <= n; ++v)
      if (m.e[v] < lo[v] || m.e[v] > hi[v]) return false;
    return true;
  };
  const auto& lq = q.leading();

  bool small = true;
  for (const auto* f : {&p, &q})
    for (const auto& t : f->terms())
      small = small && t.coeff >= std::numeric_limits<std::int64_t>::min() &&
              t.coeff <= std::numeric_limits<std::int64_t>::max();
  std::optional<detail::Packer> pk;
  if (small) pk = detail::Packer::make(n, pmin, pmax);
  if (pk) {
    // Remainder monomials stay inside the box of p. Packed keys with 128-bit
    // coefficients; any overflow drops to the big-integer loop below.
    // Every update after popping key k lands strictly below k, so a popped
    // key is final and stale heap entries are skipped by value.
    detail::FlatAccumulator rem(p.size() * 4);
    std::priority_queue<std::uint64_t> heap;
    for (const auto& t : p.terms()) {
      const std::uint64_t k = pk->encode(t.mono);
      rem.add(k, t.coeff.convert_to<std::int64_t>());
      heap.push(k);
    }
    std::vector<std::pair<std::uint64_t, std::int64_t>> qs;
    for (const auto& t : q.terms()) qs.push_back({pk->encode(t.mono, qmin), t.coeff.convert_to<std::int64_t>()});
    const std::int64_t lc = lq.coeff.convert_to<std::int64_t>();
    std::vector<std::pair<Monomial, __int128>> quot;
    bool overflow = false;
    while (!heap.empty() && !overflow) {
      const std::uint64_t top = heap.top();
      heap.pop();
      bool fresh;
      const __int128 v = rem.at(top, fresh);
      if (v == 0) continue;
      Monomial m = pk->decode(top) / lq.mono;
      if (!in_box(m) || v % lc != 0) return std::nullopt;
      const __int128 c = v / lc;
      const std::uint64_t km = pk->encode(m, lo);
      for (const auto& [kq, qc] : qs) {
        __int128 d;
        if (__builtin_mul_overflow(c, static_cast<__int128>(qc), &d)) {
          overflow = true;
          break;
        }
        __int128& cell = rem.at(km + kq, fresh);
        if (fresh) heap.push(km + kq);
        if (__builtin_sub_overflow(cell, d, &cell)) {
          overflow = true;
          break;
        }
      }
      quot.push_back({m, c});
    }
    if (!overflow) {
      std::vector<Polynomial::Term> terms;
      terms.reserve(quot.size());
      for (auto it = quot.rbegin(); it != quot.rend(); ++it) terms.push_back({it->first, Polynomial::from_i128(it->second)});
      return Polynomial::from_terms(n, std::move(terms));
    }
  }

  std::map<Monomial, Integer> rem;
  for (const auto& t : p.terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Polynomial::Term> quot;
  while (!rem.empty()) {
    auto it = std::prev(rem.end());
    Monomial m = it->first / lq.mono;
    if (!in_box(m)) return std::nullopt;
    Integer r;
    Integer c;
    boost::multiprecision::divide_qr(it->second, lq.coeff, c, r);
    if (r != 0) return std::nullopt;
    for (const auto& qt : q.terms()) {
      Monomial mm = qt.mono * m;
      auto [pos, inserted] = rem.try_emplace(mm, 0);
      pos->second -= qt.coeff * c;
      if (pos->second == 0) rem.erase(pos);
    }
    quot.push_back({m, std::move(c)});
  }
  std::reverse(quot.begin(), quot.end());
  return Polynomial::from_terms(n, std::move(quot));
}

/// Division that must be exact; anything else is an arithmetic bug.
inline Polynomial divide_exact(const Polynomial& p, const Polynomial& q) {
  auto r = try_divide(p, q);
  if (!r) throw InvariantViolation("nonexact polynomial division");
  return *std::move(r);
}

/// Variable key for substitution: 0 is t, i >= 1 is x_i.
using Assignment = std::map<int, Polynomial>;

inline Polynomial substitute(const Polynomial& p, const Assignment& a) {
  const int n = p.num_vars();
  for (const auto& [v, val] : a) {
    if (v < 0 || v > n) throw ScopeError("substitution variable out of scope");
    if (val.num_vars() != n) throw ScopeError("substituted value in a different scope");
  }
  std::map<std::pair<int, int>, Polynomial> cache;
  auto power = [&](int v, int e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const Polynomial& val = a.at(v);
    Polynomial r;
    if (e >= 0) {
      r = val.pow(static_cast<unsigned>(e));
    } else {
      if (val.is_zero()) throw SingularSubstitution("zero substituted into a negative exponent");
      if (val.size() != 1 || (val.leading().coeff != 1 && val.leading().coeff != -1))
        throw SingularSubstitution("non-unit substituted into a negative exponent");
      Monomial inv = Monomial{} / val.leading().mono;
      r = Polynomial::from_monomial(n, inv, val.leading().coeff).pow(static_cast<unsigned>(-e));
    }
    return cache.emplace(key, std::move(r)).first->second;
  };
  std::vector<Polynomial> parts;
  parts.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial rest = t.mono;
    Polynomial term(n, t.coeff);
    for (const auto& [v, val] : a) {
      int e = rest.e[v];
      if (e == 0) continue;
      rest.e[v] = 0;
      term *= power(v, e);
    }
    parts.push_back(term.times_monomial(rest));
  }
  return Polynomial::sum(n, parts);
}

/// Integer point substitution: every listed variable gets an integer.
inline Polynomial substitute(const Polynomial& p, const std::map<int, Integer>& a) {
  Assignment b;
  for (const auto& [v, c] : a) b.emplace(v, Polynomial(p.num_vars(), c));
  return substitute(p, b);
}

/// All x_i := 1, t untouched.
inline Polynomial at_ones(const Polynomial& p) {
  std::map<int, Integer> a;
  for (int i = 1; i <= p.num_vars(); ++i) a[i] = 1;
  return substitute(p, a);
}

inline Polynomial at_t(const Polynomial& p, const Integer& tv) { return substitute(p, std::map<int, Integer>{{0, tv}}); }

/// x_i -> x_{sigma(i)}; sigma in one-line notation over 1..n.
inline Polynomial permute_vars(const Polynomial& p, const std::vector<int>& sigma) {
  const int n = p.num_vars();
  if (static_cast<int>(sigma.size()) != n) throw ScopeError("permutation size differs from num_vars");
  std::vector<bool> seen(n + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[v]) throw UsageError("not a permutation of 1..n");
    seen[v] = true;
  }
  std::vector<Polynomial::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    m.e[0] = t.mono.e[0];
    for (int i = 1; i <= n; ++i) m.e[sigma[i - 1]] = t.mono.e[i];
    out.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(n, std::move(out));
}

/// s_i: swap x_i and x_{i+1}.
inline Polynomial swap_vars(const Polynomial& p, int i) {
  std::vector<int> s(p.num_vars());
  for (int k = 0; k < p.num_vars(); ++k) s[k] = k + 1;
  std::swap(s[i - 1], s[i]);
  return permute_vars(p, s);
}

inline Polynomial divided_difference(const Polynomial& p, int i) {
  const int n = p.num_vars();
  if (i < 1 || i > n - 1) throw UsageError("divided difference index out of range");
  if (p.has_negative_x()) throw UsageError("divided difference needs nonnegative exponents");
  Polynomial num = p - swap_vars(p, i);
  Polynomial den = Polynomial::variable(n, i) - Polynomial::variable(n, i + 1);
  auto q = try_divide(num, den);
  if (!q) throw InvariantViolation("antisymmetric numerator not divisible by x_i - x_{i+1}");
  return *std::move(q);
}

inline Polynomial pi_op(const Polynomial& p, int i) {
  if (i < 1 || i > p.num_vars() - 1) throw UsageError("isobaric operator index out of range");
  return divided_difference(Polynomial::variable(p.num_vars(), i) * p, i);
}

/// Terms of total x-degree d.
inline Polynomial homogeneous_part(const Polynomial& p, int d) {
  std::vector<Polynomial::Term> out;
  for (const auto& t : p.terms())
    if (t.mono.x_degree() == d) out.push_back(t);
  return Polynomial::from_terms(p.num_vars(), std::move(out));
}

inline int min_x_degree(const Polynomial& p) {
  if (p.is_zero()) throw UsageError("degree of the zero polynomial");
  int d = std::numeric_limits<int>::max();
  for (const auto& t : p.terms()) d = std::min(d, t.mono.x_degree());
  return d;
}

inline bool is_symmetric(const Polynomial& p) {
  for (int i = 1; i < p.num_vars(); ++i)
    if (swap_vars(p, i) != p) return false;
  return true;
}

namespace detail {
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1u) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1u;
  }
  return r;
}
inline std::uint64_t reduce(const Integer& c, std::uint64_t m) {
  Integer r = c % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}
}  // namespace detail

/// Evaluate modulo a prime; point[0] is t, point[i] is x_i. Points must be
/// nonzero mod the prime wherever a negative exponent occurs.
inline std::uint64_t eval_mod(const Polynomial& p, const std::vector<std::uint64_t>& point, std::uint64_t prime) {
  if (static_cast<int>(point.size()) != p.num_vars() + 1) throw ScopeError("evaluation point has wrong length");
  std::uint64_t acc = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t v = detail::reduce(t.coeff, prime);
    for (int i = 0; i <= p.num_vars(); ++i) {
      int e = t.mono.e[i];
      if (e == 0) continue;
      std::uint64_t base = point[i] % prime;
      if (e < 0) {
        if (base == 0) throw SingularSubstitution("zero evaluation of a negative exponent");
        base = detail::powmod(base, prime - 2, prime);
        e = -e;
      }
      v = detail::mulmod(v, detail::powmod(base, static_cast<std::uint64_t>(e), prime), prime);
    }
    acc = (acc + v) % prime;
  }
  return acc;
}

inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Integer c = it->coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    if (it->mono.e[0]) factors.push_back(it->mono.e[0] == 1 ? "t" : "t^" + std::to_string(it->mono.e[0]));
    for (int i = 1; i <= p.num_vars(); ++i) {
      int e = it->mono.e[i];
      if (!e) continue;
      std::string s = "x" + std::to_string(i);
      if (e != 1) s += "^" + std::to_string(e);
      factors.push_back(s);
    }
    if (factors.empty()) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
  }
  return os.str();
}

}  // namespace fillrec
