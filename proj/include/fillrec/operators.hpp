#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "fillrec/generators.hpp"
#include "fillrec/poly.hpp"
#include "fillrec/shapes.hpp"

namespace fillrec {

/// One-line notation over 1..n.
using Permutation = std::vector<int>;
using ReducedWord = std::vector<int>;

inline void check_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size() + 1, false);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[v]) throw UsageError("not a permutation");
    seen[v] = true;
  }
}

inline Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

inline Permutation longest_permutation(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = n - i;
  return p;
}

/// (u v)(j) = u(v(j)).
inline Permutation compose(const Permutation& u, const Permutation& v) {
  if (u.size() != v.size()) throw UsageError("permutation sizes differ");
  Permutation r(u.size());
  for (std::size_t j = 0; j < v.size(); ++j) r[j] = u[v[j] - 1];
  return r;
}

inline Permutation inverse(const Permutation& u) {
  Permutation r(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) r[u[j] - 1] = static_cast<int>(j) + 1;
  return r;
}

inline int inversions(const Permutation& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++c;
  return c;
}

inline Permutation transposition(int n, int i) {
  Permutation s = identity_permutation(n);
  std::swap(s[i - 1], s[i]);
  return s;
}

/// s_{i_1} s_{i_2} ... s_{i_l} as a permutation.
inline Permutation replay(const ReducedWord& w, int n) {
  Permutation p = identity_permutation(n);
  for (int i : w) p = compose(p, transposition(n, i));
  return p;
}

/// Moves the largest misplaced value one step right until sorted; the
/// recorded positions, reversed, spell omega.
inline ReducedWord reduced_word(const Permutation& omega) {
  check_permutation(omega);
  Permutation w = omega;
  ReducedWord rec;
  const int n = static_cast<int>(w.size());
  while (true) {
    int v = n;
    while (v >= 1 && w[v - 1] == v) --v;
    if (v < 1) break;
    int p = static_cast<int>(std::find(w.begin(), w.end(), v) - w.begin()) + 1;
    std::swap(w[p - 1], w[p]);
    rec.push_back(p);
  }
  std::reverse(rec.begin(), rec.end());
  return rec;
}

/// Every reduced word, via right descents.
inline std::vector<ReducedWord> all_reduced_words(const Permutation& omega) {
  check_permutation(omega);
  if (inversions(omega) == 0) return {ReducedWord{}};
  std::vector<ReducedWord> out;
  const int n = static_cast<int>(omega.size());
  for (int i = 1; i < n; ++i)
    if (omega[i - 1] > omega[i]) {
      Permutation shorter = compose(omega, transposition(n, i));
      for (auto w : all_reduced_words(shorter)) {
        w.push_back(i);
        out.push_back(std::move(w));
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// lambda_k = alpha_{u(k)}, stable on ties.
inline Permutation sorting_permutation(const Composition& alpha) {
  Permutation u = identity_permutation(static_cast<int>(alpha.size()));
  std::stable_sort(u.begin(), u.end(), [&](int a, int b) { return alpha[a - 1] > alpha[b - 1]; });
  return u;
}

inline Composition apply_sorting(const Permutation& u, const Composition& alpha) {
  Composition out(alpha.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = alpha[u[k] - 1];
  return out;
}

/// op_{i_1} o ... o op_{i_l}, rightmost applied first.
inline Polynomial apply_word(const ReducedWord& w, Polynomial f, const std::function<Polynomial(const Polynomial&, int)>& op) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) f = op(f, *it);
  return f;
}

inline Polynomial apply_pi_word(const ReducedWord& w, const Polynomial& f) { return apply_word(w, f, pi_op); }
inline Polynomial apply_partial_word(const ReducedWord& w, const Polynomial& f) {
  return apply_word(w, f, divided_difference);
}

inline Polynomial key_via_operators(const Composition& alpha, int n) {
  if (static_cast<int>(alpha.size()) != n) throw UsageError("composition length must equal n");
  Permutation u = sorting_permutation(alpha);
  return apply_pi_word(reduced_word(u), Polynomial::from_exponents(n, sorted_decreasing(alpha)));
}

/// Staircase monomial x_1^{n-1} ... x_{n-1}.
inline Polynomial staircase(int n) {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = n - 1 - i;
  return Polynomial::from_exponents(n, e);
}

inline Polynomial schubert(const Permutation& omega, int n) {
  if (static_cast<int>(omega.size()) != n) throw UsageError("permutation size must equal n");
  check_permutation(omega);
  Permutation v = compose(inverse(omega), longest_permutation(n));
  return apply_partial_word(reduced_word(v), staircase(n));
}

/// Index map between filling-side and operator-side key polynomials.
enum class IndexMap { identity, reversal };

inline std::string index_map_name(IndexMap m) { return m == IndexMap::identity ? "identity" : "reversal"; }

inline Composition apply_index_map(IndexMap m, Composition a) {
  if (m == IndexMap::reversal) std::reverse(a.begin(), a.end());
  return a;
}

// Frozen from discover_key_index_maps over |alpha| <= 4, n <= 3.
inline constexpr IndexMap kKeyIndexMap = IndexMap::reversal;

/// Compositions of length 1..max_n with total size <= max_size.
inline std::vector<Composition> small_compositions(int max_size, int max_n) {
  std::vector<Composition> out;
  for (int n = 1; n <= max_n; ++n)
    for (auto& a : all_compositions(n, max_size))
      if (composition_size(a) <= max_size) out.push_back(a);
  return out;
}

/// Every candidate map under which key_polynomial(alpha) equals
/// key_via_operators(tau(alpha)) on the whole range.
inline std::vector<IndexMap> discover_key_index_maps(int max_size, int max_n) {
  std::vector<IndexMap> ok;
  for (IndexMap m : {IndexMap::identity, IndexMap::reversal}) {
    bool all = true;
    for (const auto& a : small_compositions(max_size, max_n)) {
      int n = static_cast<int>(a.size());
      if (key_polynomial(a, n) != key_via_operators(apply_index_map(m, a), n)) {
        all = false;
        break;
      }
    }
    if (all) ok.push_back(m);
  }
  return ok;
}

}  // namespace fillrec
