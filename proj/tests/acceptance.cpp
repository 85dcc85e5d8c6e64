// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "fillrec/cli.hpp"
#include "fillrec/fillrec.hpp"

using namespace fillrec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Check {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }

SequenceWindow window_upto(const SequenceWindow& w, std::size_t last) { return SequenceWindow(w.begin(), w.begin() + last + 1); }

/// p(k) * rho^k for k = 0..m, p given by ascending integer coefficients.
SequenceWindow quasi_geometric(const std::vector<long long>& p, const Polynomial& rho, int m) {
  SequenceWindow w;
  for (int k = 0; k <= m; ++k) {
    long long v = 0, kp = 1;
    for (long long c : p) {
      v += c * kp;
      kp *= k;
    }
    w.push_back(Integer(v) * rho.pow(static_cast<unsigned>(k)));
  }
  return w;
}

CharPoly single_root(const Polynomial& rho, int mult) {
  CharPoly chi;
  chi.add(rho, mult);
  return chi;
}

Integer hook_content_at_ones(const Composition& lambda) {
  Rational q = 1;
  const int n = static_cast<int>(lambda.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) q *= Rational(lambda[i] - lambda[j] + j - i, j - i);
  return boost::multiprecision::numerator(q);
}

std::vector<Permutation> all_perms(int n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

HPolytope load_polytope(const std::string& name) {
  return polytope_from_json(Json::parse(read_file(std::string(FILLREC_DATA_DIR) + "/polytopes/" + name)));
}

std::vector<HPolytope> load_faces(const std::string& name) {
  const Json doc = Json::parse(read_file(std::string(FILLREC_DATA_DIR) + "/polytopes/" + name));
  std::vector<HPolytope> out;
  for (const auto& f : doc.at("faces")) out.push_back(polytope_from_json(f));
  return out;
}

Check c1() {
  Check c;
  auto bs = shape_data({0, 2, 3, 4, 2, 0, 1}, 7);
  c.require(bs.basement == std::vector<int>{4, 5, 6, 3, 1}, "beta " + format_composition(bs.basement));
  c.require(bs.shape == Composition{4, 3, 2, 2, 1}, "lambda " + format_composition(bs.shape));
  return c;
}

Check c2() {
  Check c;
  // First entry of each row is the basement.
  AugmentedFilling t(SkewShape({3, 3, 2, 1}), {8, 4, 6, 7}, {{5, 4, 1}, {3, 2, 2}, {6, 5}, {4}});
  auto k = sort_to_key(t);
  c.require(k.basement == std::vector<int>{8, 4, 6, 7}, "basement moved");
  c.require(k.rows == std::vector<std::vector<int>>{{6, 5, 2}, {4, 4, 1}, {5, 2}, {3}}, "sorted rows differ");
  return c;
}

Check c3() {
  Check c;
  AugmentedFilling t(SkewShape({0, 3, 1, 3, 4}), {1, 3, 2, 5, 4}, {{}, {3, 1, 1}, {2}, {5, 5, 5}, {4, 4, 3, 2}});
  c.require(is_member(t, {Family::ssaf, 5, {}, {}}), "not an SSAF");
  c.require(attacking_pairs(t).empty(), "attacking pairs present");
  auto tr = inversion_triples(t);
  c.require(tr.type_a.empty() && tr.type_b.empty(), "inversion triples present");
  return c;
}

Check c4() {
  Check c;
  int count = 0;
  for (int len = 1; len <= 3; ++len)
    for (const auto& alpha : all_compositions(len, 3)) {
      const int n = len;
      auto chi = char_poly_key(alpha, n);
      const int r = chi.degree();
      auto w = sequence({Gen::key, alpha, {}, {}, {}, {}, n}, std::max(r + 2, 2 * r + 1));
      const std::string a = format_composition(alpha);
      c.require(annihilates(chi, window_upto(w, r + 2)), "annihilation fails for " + a);
      c.require(determinant_test(window_upto(w, 2 * r + 1), r), "determinant test fails for " + a);
      ++count;
    }
  c.note = c.ok ? std::to_string(count) + " compositions" : c.note;
  return c;
}

Check c5() {
  Check c;
  const int n = 1;
  auto rho = Integer(5) * x(n, 1);
  auto sigma = Integer(2) * x(n, 1) - Polynomial(n, 1);
  auto a = quasi_geometric({1, 0, 0, 1}, rho, 14);
  auto b = quasi_geometric({2, 0, 1, 0, -1}, sigma, 14);
  c.require(annihilates(single_root(rho, 4), a), "a_k not annihilated");
  c.require(annihilates(single_root(sigma, 5), b), "b_k not annihilated");
  SequenceWindow ab;
  for (std::size_t k = 0; k < a.size(); ++k) ab.push_back(a[k] * b[k]);
  auto chi = seq_product(single_root(rho, 4), single_root(sigma, 5));
  const auto want = Integer(10) * x(n, 1) * x(n, 1) - Integer(5) * x(n, 1);
  c.require(chi.distinct() == 1 && chi.roots()[0].poly == want && chi.roots()[0].mult == 8, "product char poly differs");
  c.require(annihilates(chi, ab), "product not annihilated");
  c.require(!annihilates(single_root(want, 7), ab), "multiplicity 7 already annihilates");
  return c;
}

Check c6() {
  Check c;
  for (const auto& mu : partitions_in_box(3, 2)) {
    Polynomial sum(3);
    for (const auto& g : rearrangements(mu)) sum += hl_E(g, 3);
    auto p = hl_P(mu, 3);
    c.require(p == sum, "P != sum E for " + format_composition(mu));
    c.require(at_t(p, 0) == schur(mu, 3), "P(t=0) != s for " + format_composition(mu));
  }
  return c;
}

Check c7() {
  Check c;
  for (const auto& lambda : partitions_in_box(3, 3)) {
    auto v = at_ones(schur(lambda, 3));
    c.require(v.is_constant() && v.constant_term() == hook_content_at_ones(lambda), "hook content " + format_composition(lambda));
  }
  const Composition lambda{2, 1, 0};
  Composition alpha;
  for (const auto& g : rearrangements(lambda))
    if (key_polynomial(g, 3) == schur(lambda, 3)) alpha = g;
  c.require(!alpha.empty(), "no rearrangement gives the Schur polynomial");
  if (!c.ok) return c;
  auto fit = specialize_and_fit(alpha, 3, static_cast<int>(char_poly_key(alpha, 3).distinct()));
  c.require(fit.held_out_ok, "fit fails held-out samples");
  for (int k = 0; k <= 4; ++k)
    c.require(evaluate(fit.coeffs, k) == Rational(hook_content_at_ones(scale(lambda, k))), "fit at k=" + std::to_string(k));
  return c;
}

struct Case8 {
  FamilySpec f;
  std::string label;
};

Check c8() {
  Check c;
  const std::vector<Case8> cases = {
      {{Gen::schur, {1}, {}, {}, {}, {}, 2}, "schur 1"},
      {{Gen::schur, {1, 1}, {}, {}, {}, {}, 3}, "schur 11"},
      {{Gen::schur, {2, 1}, {1}, {}, {}, {}, 2}, "schur 21/1"},
      {{Gen::flagged_schur, {1, 1}, {}, {}, {1, 1}, {2, 3}, 3}, "flagged 11"},
      {{Gen::flagged_schur, {2, 1}, {}, {}, {1, 2}, {1, 3}, 3}, "flagged 21"},
      {{Gen::symplectic, {1}, {}, {}, {}, {}, 2}, "symplectic 1"},
      {{Gen::symplectic, {2}, {}, {}, {}, {}, 1}, "symplectic 2"},
      {{Gen::dual_grothendieck, {1}, {}, {}, {}, {}, 2}, "dual_grothendieck 1"},
      {{Gen::dual_grothendieck, {1, 1}, {}, {}, {}, {}, 2}, "dual_grothendieck 11"},
      {{Gen::atom, {1, 0, 0}, {}, {}, {}, {}, 3}, "atom 100"},
      {{Gen::atom, {2, 1, 0}, {}, {}, {}, {}, 3}, "atom 210"},
      {{Gen::atom, {1, 2}, {}, {2, 1}, {}, {}, 2}, "atom 12 basement 21"},
      {{Gen::hl_E, {1, 0}, {}, {}, {}, {}, 2}, "hl_E 10"},
      {{Gen::hl_E, {0, 1}, {}, {}, {}, {}, 2}, "hl_E 01"},
      {{Gen::hl_E, {1, 1}, {}, {}, {}, {}, 2}, "hl_E 11"},
      {{Gen::hl_E, {2, 0}, {}, {}, {}, {}, 2}, "hl_E 20"},
  };
  std::ostringstream orders;
  for (const auto& cs : cases) {
    int r = 0;
    try {
      r = char_poly_family(cs.f).degree();
    } catch (const UnsupportedProduct&) {
      auto d = detect_order(sequence(cs.f, 13), 6);
      c.require(d.has_value(), "no order <= 6 for " + cs.label);
      if (!d) continue;
      r = *d;
    }
    c.require(determinant_test(sequence(cs.f, 2 * r + 1), r), "determinant test fails for " + cs.label);
    orders << (orders.tellp() ? ", " : "") << cs.label << " r=" << r;
  }
  if (c.ok) c.note = orders.str();
  return c;
}

Check c9() {
  Check c;
  for (const Composition& lambda : {Composition{1}, Composition{2}, Composition{1, 1}, Composition{2, 1}}) {
    auto g = grothendieck(lambda, 3);
    const int d = min_x_degree(g);
    c.require(d == composition_size(lambda), "bottom degree for " + format_composition(lambda));
    c.require(homogeneous_part(g, d) == schur(lambda, 3), "bottom part for " + format_composition(lambda));
  }
  return c;
}

Check c10() {
  Check c;
  int count = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& a : all_compositions(n, 4)) {
      if (composition_size(a) > 4) continue;
      c.require(key_polynomial(a, n) == key_via_operators(apply_index_map(kKeyIndexMap, a), n), "tau fails for " + format_composition(a));
      ++count;
    }
  const int n = 3;
  std::vector<Polynomial> probes;
  for (const auto& e : all_compositions(3, 2)) probes.push_back(Polynomial::from_exponents(n, e));
  probes.push_back(x(n, 1).pow(3) * x(n, 2) - Integer(7) * x(n, 2) * x(n, 3).pow(2) + Polynomial(n, 5));
  for (const auto& w : all_perms(n)) {
    auto words = all_reduced_words(w);
    for (const auto& f : probes) {
      const auto pi0 = apply_pi_word(words[0], f);
      const auto d0 = apply_partial_word(words[0], f);
      for (const auto& word : words) {
        c.require(apply_pi_word(word, f) == pi0, "pi word dependence");
        c.require(apply_partial_word(word, f) == d0, "partial word dependence");
      }
    }
  }
  if (c.ok) c.note = std::to_string(count) + " compositions, map " + index_map_name(kKeyIndexMap);
  return c;
}

Check c11() {
  Check c;
  for (const char* name : {"segment.json", "simplex2.json", "square.json", "order_chain.json"}) {
    auto p = load_polytope(name);
    auto rep = idp_recurrence_check(p, 6);
    CharPoly want;
    for (const auto& pt : lattice_points_exhaustive(p, 1)) want.add(integer_point_transform({pt}, p.dim));
    c.require(rep.chi == want, std::string("char poly for ") + name);
    c.require(rep.passed, std::string("idp window fails for ") + name);
  }
  for (const char* name : {"square_two_edges.json", "cube_two_edges.json"}) {
    auto faces = load_faces(name);
    const int r = static_cast<int>(faces_union_transform(faces, 1).size());
    SequenceWindow w;
    for (int k = 0; k <= 2 * r + 1; ++k) w.push_back(faces_union_transform(faces, k));
    c.require(determinant_test(w, r), std::string("face union fails for ") + name);
  }
  return c;
}

Check c12() {
  Check c;
  const std::string dir = FILLREC_GOLDEN_DIR;
  std::istringstream in(read_file(dir + "/cases.txt"));
  int count = 0;
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    run_cli(args, out, err);
    return out.str();
  };
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    const std::string name = split(line.substr(0, bar)).at(0);
    auto args = split(line.substr(bar + 1));
    const std::string golden = read_file(dir + "/" + name + ".json");
    const bool has_path = args[0] == "poly" || args[0] == "seq" || args[0] == "enumerate";
    if (has_path) {
      auto fast = args, oracle = args;
      fast.insert(fast.end(), {"--path", "fast"});
      oracle.insert(oracle.end(), {"--path", "oracle"});
      c.require(run(fast) == golden, "fast path differs on " + name);
      c.require(run(oracle) == golden, "oracle path differs on " + name);
    } else {
      c.require(run(args) == golden, "output differs on " + name);
    }
    ++count;
  }
  c.require(count > 0, "no golden cases");
  if (c.ok) c.note = std::to_string(count) + " golden files";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"shape_data worked example", c1},
      {"sort_to_key worked example", c2},
      {"SSAF example has no attacking pairs or inversion triples", c3},
      {"key dilation windows, length <= 3, parts <= 3", c4},
      {"quasi-geometric product annihilator", c5},
      {"hl_P equals the sum of hl_E", c6},
      {"hook-content and scaled fit", c7},
      {"dilation recurrences across families", c8},
      {"Grothendieck bottom degree", c9},
      {"key operators and word independence", c10},
      {"polytope IDP and face unions", c11},
      {"golden files on both enumeration paths", c12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !c.ok;
    std::cout << (c.ok ? "PASS " : "FAIL ") << (i + 1) << " " << criteria[i].first;
    if (!c.note.empty()) std::cout << " (" << c.note << ")";
    std::cout << " [" << std::fixed << std::setprecision(2) << secs << "s]\n" << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
