#pragma once

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fillrec/poly.hpp"

namespace testing_support {

using fillrec::Integer;
using fillrec::Monomial;
using fillrec::Polynomial;

/// Exponent vector (t first) to coefficient; the reference representation.
using Dense = std::map<std::vector<int>, Integer>;

inline Dense to_dense(const Polynomial& p) {
  Dense d;
  for (const auto& t : p.terms()) {
    std::vector<int> e(t.mono.e.begin(), t.mono.e.begin() + p.num_vars() + 1);
    d[e] += t.coeff;
  }
  return d;
}

inline Polynomial from_dense(int n, const Dense& d) {
  std::vector<Polynomial::Term> terms;
  for (const auto& [e, c] : d) {
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = e[i];
    terms.push_back({m, c});
  }
  return Polynomial::from_terms(n, std::move(terms));
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

struct PolyGen {
  std::mt19937_64 rng;
  explicit PolyGen(std::uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  /// Random polynomial; coefficients up to 2^coeff_bits in absolute value.
  Polynomial poly(int n, int max_terms, int max_exp, int coeff_bits = 6, bool with_t = true) {
    Dense d;
    int terms = uniform(1, max_terms);
    for (int k = 0; k < terms; ++k) {
      std::vector<int> e(n + 1, 0);
      e[0] = with_t ? uniform(0, max_exp) : 0;
      for (int i = 1; i <= n; ++i) e[i] = uniform(0, max_exp);
      Integer c = 0;
      for (int b = 0; b < coeff_bits; b += 30) c = (c << 30) + uniform(0, (1 << 30) - 1);
      c = c % (Integer(1) << coeff_bits) + 1;
      if (uniform(0, 1)) c = -c;
      d[e] += c;
    }
    std::erase_if(d, [](const auto& kv) { return kv.second == 0; });
    return from_dense(n, d);
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace testing_support
