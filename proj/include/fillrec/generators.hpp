#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fillrec/enumerate.hpp"
#include "fillrec/poly.hpp"
#include "fillrec/shapes.hpp"

namespace fillrec {

enum class Gen { schur, flagged_schur, key, atom, hl_E, hl_P, symplectic, grothendieck, dual_grothendieck };

inline const std::vector<std::pair<Gen, std::string>>& gen_names() {
  static const std::vector<std::pair<Gen, std::string>> names = {
      {Gen::schur, "schur"},           {Gen::flagged_schur, "flagged_schur"}, {Gen::key, "key"},
      {Gen::atom, "atom"},             {Gen::hl_E, "hl_E"},                   {Gen::hl_P, "hl_P"},
      {Gen::symplectic, "symplectic"}, {Gen::grothendieck, "grothendieck"}, {Gen::dual_grothendieck, "dual_grothendieck"}};
  return names;
}

inline std::string gen_name(Gen g) {
  for (const auto& [k, v] : gen_names())
    if (k == g) return v;
  return "?";
}

inline Gen parse_gen(const std::string& s) {
  for (const auto& [k, v] : gen_names())
    if (v == s) return k;
  if (s == "flagged") return Gen::flagged_schur;
  if (s == "symplectic_schur") return Gen::symplectic;
  if (s == "demazure_atom") return Gen::atom;
  throw UsageError("unknown family '" + s + "'");
}

/// A family member: shape is lambda, alpha or mu depending on the tag.
struct FamilySpec {
  Gen family = Gen::schur;
  Composition shape;
  Composition inner;
  std::vector<int> basement;
  std::vector<int> flag_lo, flag_hi;
  int n = 0;

  FamilySpec dilated(int k) const {
    FamilySpec s = *this;
    s.shape = scale(shape, k);
    s.inner = scale(inner, k);
    return s;
  }

  bool uses_fillings() const { return family != Gen::hl_P; }
};

/// The filling problem behind a family; hl_P has none.
inline FillingSpec filling_spec(const FamilySpec& f) {
  FillingSpec s;
  s.n = f.n;
  auto need_length = [&] {
    if (static_cast<int>(f.shape.size()) != f.n) throw UsageError("composition length must equal n");
  };
  auto no_inner = [&] {
    for (int v : f.inner)
      if (v) throw UsageError("family " + gen_name(f.family) + " takes no inner shape");
  };
  switch (f.family) {
    case Gen::schur:
      s.family = Family::ssyt;
      s.shape = SkewShape(f.shape, f.inner);
      break;
    case Gen::flagged_schur:
      s.family = Family::flagged;
      s.shape = SkewShape(f.shape, f.inner);
      s.flag_lo = f.flag_lo;
      s.flag_hi = f.flag_hi;
      break;
    case Gen::key: {
      need_length();
      no_inner();
      auto bs = shape_data(f.shape, f.n);
      s.family = Family::ssaf;
      s.shape = SkewShape(bs.shape);
      s.basement = bs.basement;
      break;
    }
    case Gen::atom:
      no_inner();
      s.family = Family::ssaf;
      s.shape = SkewShape(f.shape);
      s.basement = f.basement;
      if (s.basement.empty())
        for (int i = 1; i <= static_cast<int>(f.shape.size()); ++i) s.basement.push_back(i);
      break;
    case Gen::hl_E:
      need_length();
      no_inner();
      s.family = Family::nawf;
      s.shape = SkewShape(f.shape);
      for (int i = 1; i <= f.n; ++i) s.basement.push_back(i);
      break;
    case Gen::symplectic:
      no_inner();
      s.family = Family::symplectic;
      s.shape = SkewShape(f.shape);
      break;
    case Gen::grothendieck:
      no_inner();
      s.family = Family::set_valued;
      s.shape = SkewShape(f.shape);
      break;
    case Gen::dual_grothendieck:
      no_inner();
      s.family = Family::rpp;
      s.shape = SkewShape(f.shape);
      break;
    case Gen::hl_P:
      throw UsageError("hl_P is defined by symmetrization, not by fillings");
  }
  if (f.family != Gen::flagged_schur && (!f.flag_lo.empty() || !f.flag_hi.empty()))
    throw UsageError("flags only apply to flagged_schur");
  if (f.family != Gen::atom && !f.basement.empty()) throw UsageError("basement only applies to atom");
  s.validate();
  return s;
}

namespace detail {
inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}
}  // namespace detail

/// Symmetrization over S_n with one exact division by the Vandermonde
/// product and one by prod [j]_t.
inline Polynomial hl_P(const Composition& mu_in, int n) {
  if (n < 1 || n > kMaxVars) throw UsageError("n out of range");
  Composition mu = mu_in;
  if (static_cast<int>(mu.size()) > n) {
    for (std::size_t i = n; i < mu.size(); ++i)
      if (mu[i]) throw UsageError("mu has more than n nonzero parts");
    mu.resize(n);
  }
  mu.resize(n, 0);
  if (!is_partition(mu)) throw UsageError("hl_P needs a partition");
  const Polynomial t = Polynomial::t_var(n);
  Polynomial base = Polynomial::from_exponents(n, mu);
  Polynomial vdm(n, 1);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      base *= Polynomial::variable(n, i) - t * Polynomial::variable(n, j);
      vdm *= Polynomial::variable(n, i) - Polynomial::variable(n, j);
    }
  std::vector<Polynomial> terms;
  for (const auto& sigma : detail::all_permutations(n)) {
    Polynomial p = permute_vars(base, sigma);
    terms.push_back(detail::permutation_sign(sigma) < 0 ? -p : p);
  }
  Polynomial sym = divide_exact(Polynomial::sum(n, terms), vdm);
  std::map<int, int> mult;
  for (int v : mu) ++mult[v];
  Polynomial den(n, 1);
  for (const auto& [part, m] : mult)
    for (int j = 1; j <= m; ++j) {
      Polynomial q(n);
      for (int e = 0; e < j; ++e) q += t.pow(static_cast<unsigned>(e));
      den *= q;
    }
  return divide_exact(sym, den);
}

inline Polynomial generate(const FamilySpec& f, Path path = Path::fast) {
  if (f.family == Gen::hl_P) return hl_P(f.shape, f.n);
  return generating_function(filling_spec(f), path);
}

inline Polynomial schur(const Composition& outer, const Composition& inner, int n, Path path = Path::fast) {
  return generate({Gen::schur, outer, inner, {}, {}, {}, n}, path);
}
inline Polynomial schur(const Composition& lambda, int n, Path path = Path::fast) { return schur(lambda, {}, n, path); }

inline Polynomial flagged_schur(const Composition& outer, const Composition& inner, const std::vector<int>& a,
                                const std::vector<int>& b, int n, Path path = Path::fast) {
  return generate({Gen::flagged_schur, outer, inner, {}, a, b, n}, path);
}

inline Polynomial demazure_atom(const std::vector<int>& basement, const Composition& shape, int n,
                                Path path = Path::fast) {
  if (basement.size() != shape.size()) throw UsageError("basement and shape lengths differ");
  return generate({Gen::atom, shape, {}, basement, {}, {}, n}, path);
}

/// Standard atom: basement 1..n on shape alpha.
inline Polynomial standard_atom(const Composition& alpha, int n, Path path = Path::fast) {
  return generate({Gen::atom, alpha, {}, {}, {}, {}, n}, path);
}

inline Polynomial key_polynomial(const Composition& alpha, int n, Path path = Path::fast) {
  return generate({Gen::key, alpha, {}, {}, {}, {}, n}, path);
}

inline Polynomial hl_E(const Composition& alpha, int n, Path path = Path::fast) {
  return generate({Gen::hl_E, alpha, {}, {}, {}, {}, n}, path);
}

inline Polynomial symplectic_schur(const Composition& lambda, int n, Path path = Path::fast) {
  return generate({Gen::symplectic, lambda, {}, {}, {}, {}, n}, path);
}

inline Polynomial grothendieck(const Composition& lambda, int n, Path path = Path::fast) {
  return generate({Gen::grothendieck, lambda, {}, {}, {}, {}, n}, path);
}

inline Polynomial dual_grothendieck(const Composition& lambda, int n, Path path = Path::fast) {
  return generate({Gen::dual_grothendieck, lambda, {}, {}, {}, {}, n}, path);
}

/// Window F(0 S), ..., F(kmax S). The fast path builds one engine and
/// reuses its memo tables across all k.
inline std::vector<Polynomial> sequence(const FamilySpec& f, int kmax, Path path = Path::fast) {
  if (kmax < 0) throw UsageError("kmax must be nonnegative");
  std::vector<Polynomial> out;
  if (f.family == Gen::hl_P || path == Path::oracle) {
    for (int k = 0; k <= kmax; ++k) out.push_back(generate(f.dilated(k), path));
    return out;
  }
  FillingSpec base = filling_spec(f);
  out.push_back(Polynomial(f.n, 1));
  if (kmax == 0) return out;
  if (base.shape.size() == 0) {
    for (int k = 1; k <= kmax; ++k) out.push_back(Polynomial(f.n, 1));
    return out;
  }
  TransferEngine eng(base);
  for (int k = 1; k <= kmax; ++k) out.push_back(eng.generating_function(scale(base.shape, k)));
  return out;
}

/// F(kS) at x = 1 (t kept), for k = 0..kmax.
inline std::vector<Integer> sequence_at_ones(const FamilySpec& f, int kmax) {
  std::vector<Integer> out;
  if (f.family == Gen::hl_P) {
    for (int k = 0; k <= kmax; ++k) out.push_back(at_ones(hl_P(scale(f.shape, k), f.n)).constant_term());
    return out;
  }
  FillingSpec base = filling_spec(f);
  out.push_back(1);
  if (base.shape.size() == 0) {
    for (int k = 1; k <= kmax; ++k) out.push_back(1);
    return out;
  }
  TransferEngine eng(base);
  for (int k = 1; k <= kmax; ++k) {
    Polynomial p = eng.generating_function(scale(base.shape, k), true);
    if (!p.is_constant()) throw UsageError("x = 1 specialization leaves t; use t-free families");
    out.push_back(p.constant_term());
  }
  return out;
}

}  // namespace fillrec
