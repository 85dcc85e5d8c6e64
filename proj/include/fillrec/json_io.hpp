#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fillrec/fillings.hpp"
#include "fillrec/polytope.hpp"
#include "fillrec/poly.hpp"
#include "fillrec/recurrence.hpp"

namespace fillrec {

using Json = nlohmann::ordered_json;

inline Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json x = Json::array();
    for (int i = 1; i <= p.num_vars(); ++i) x.push_back(t.mono.e[i]);
    terms.push_back({{"coeff", t.coeff.str()}, {"x", x}, {"t", t.mono.e[0]}});
  }
  return {{"num_vars", p.num_vars()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const Json& j) {
  try {
    const int n = j.at("num_vars").get<int>();
    std::vector<Polynomial::Term> terms;
    for (const auto& t : j.at("terms")) {
      Monomial m;
      const auto& x = t.at("x");
      if (static_cast<int>(x.size()) != n) throw UsageError("term exponent vector has the wrong length");
      for (int i = 0; i < n; ++i) m.e[i + 1] = x[i].get<int>();
      m.e[0] = t.value("t", 0);
      terms.push_back({m, Integer(t.at("coeff").get<std::string>())});
    }
    return Polynomial::from_terms(n, std::move(terms));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad polynomial JSON: ") + e.what());
  }
}

inline Json to_json(const CharPoly& chi) {
  Json roots = Json::array();
  for (const auto& r : chi.roots()) roots.push_back({{"poly", to_json(r.poly)}, {"mult", r.mult}});
  return {{"roots", roots}};
}

inline Json to_json(const std::vector<Polynomial>& w) {
  Json a = Json::array();
  for (const auto& p : w) a.push_back(to_json(p));
  return a;
}

inline Json to_json(const AugmentedFilling& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::array();
    for (int v : row) {
      if (t.set_valued)
        r.push_back(cell::elements(v));
      else
        r.push_back(v);
    }
    rows.push_back(r);
  }
  Json out = {{"basement", t.basement}, {"rows", rows}};
  bool skew = false;
  for (int v : t.shape.inner) skew = skew || v;
  if (skew) out["inner"] = t.shape.inner;
  return out;
}

inline std::string rational_string(const Rational& q) {
  std::string s = boost::multiprecision::numerator(q).str();
  Integer d = boost::multiprecision::denominator(q);
  if (d != 1) s += "/" + d.str();
  return s;
}

inline Json to_json(const HPolytope& p) {
  Json ineqs = Json::array();
  for (const auto& q : p.ineqs) ineqs.push_back({{"a", q.a}, {"b", q.b}});
  Json box = Json::array();
  for (const auto& [lo, hi] : p.box) box.push_back({lo, hi});
  return {{"dim", p.dim}, {"ineqs", ineqs}, {"box", box}};
}

inline HPolytope polytope_from_json(const Json& j) {
  try {
    HPolytope p;
    p.dim = j.at("dim").get<int>();
    for (const auto& q : j.at("ineqs")) p.ineqs.push_back({q.at("a").get<std::vector<std::int64_t>>(), q.at("b").get<std::int64_t>()});
    for (const auto& b : j.at("box")) p.box.push_back({b.at(0).get<std::int64_t>(), b.at(1).get<std::int64_t>()});
    p.validate();
    if (p.box_empty()) throw UsageError("empty bounding-box interval");
    return p;
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad polytope JSON: ") + e.what());
  }
}

inline Json points_to_json(const PointSet& pts) {
  Json a = Json::array();
  for (const auto& x : pts) a.push_back(x);
  return a;
}

}  // namespace fillrec
