#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fillrec/enumerate.hpp"
#include "fillrec/generators.hpp"
#include "fillrec/json_io.hpp"
#include "fillrec/operators.hpp"
#include "fillrec/polytope.hpp"
#include "fillrec/recurrence.hpp"

namespace fillrec {

/// Process exit codes.
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kWindowTooShort = 3, kInconsistency = 4 };

namespace cli_detail {

struct FamilyArgs {
  std::string family;
  std::string shape;
  std::string inner;
  std::string basement;
  std::string flags_a;
  std::string flags_b;
  int n = 0;
  std::string path = "fast";
};

inline void add_family_options(CLI::App* app, FamilyArgs& a) {
  app->add_option("--family", a.family, "schur, flagged_schur, key, atom, hl_E, hl_P, symplectic, grothendieck, dual_grothendieck")
      ->required();
  app->add_option("--shape,--alpha,--lambda,--mu", a.shape, "comma-separated composition")->required();
  app->add_option("--inner", a.inner, "inner shape for skew families");
  app->add_option("--basement", a.basement, "atom basement, one entry per row");
  app->add_option("--flags-a", a.flags_a, "flagged lower bounds");
  app->add_option("--flags-b", a.flags_b, "flagged upper bounds");
  app->add_option("--n", a.n, "number of variables")->required();
}

inline void add_path_option(CLI::App* app, FamilyArgs& a) {
  app->add_option("--path", a.path, "fast or oracle")->check(CLI::IsMember({"fast", "oracle"}));
}

inline std::vector<int> parse_list(const std::string& s) { return s.empty() ? std::vector<int>{} : parse_composition(s); }

inline FamilySpec family_spec(const FamilyArgs& a) {
  FamilySpec f;
  f.family = parse_gen(a.family);
  f.shape = parse_composition(a.shape);
  f.inner = parse_list(a.inner);
  f.basement = parse_list(a.basement);
  f.flag_lo = parse_list(a.flags_a);
  f.flag_hi = parse_list(a.flags_b);
  f.n = a.n;
  if (f.family != Gen::hl_P) filling_spec(f);
  else if (f.n < 1) throw UsageError("n must be at least 1");
  return f;
}

inline Path path_of(const FamilyArgs& a) { return a.path == "oracle" ? Path::oracle : Path::fast; }

inline Json spec_json(const FamilySpec& f) {
  Json j = {{"family", gen_name(f.family)}, {"shape", f.shape}, {"n", f.n}};
  if (!f.inner.empty()) j["inner"] = f.inner;
  if (!f.basement.empty()) j["basement"] = f.basement;
  if (!f.flag_lo.empty()) j["flags_a"] = f.flag_lo;
  if (!f.flag_hi.empty()) j["flags_b"] = f.flag_hi;
  return j;
}

inline std::optional<CharPoly> product_char_poly(const FamilySpec& f) {
  if (f.family == Gen::key) return char_poly_key(f.shape, f.n);
  try {
    return char_poly_family(f);
  } catch (const UnsupportedProduct&) {
    return std::nullopt;
  }
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("bad JSON in " + path + ": " + e.what());
  }
}

}  // namespace cli_detail

/// Runs one command line (program name excluded). Math goes to out as
/// JSON, the human summary to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Linear recurrences for dilated tableau generating functions"};
  app.require_subcommand(1);

  FamilyArgs fa;
  int kmax = -1, order = 0, k = 1, max_size = 4, max_n = 3;
  std::string name, file, op;

  auto* poly = app.add_subcommand("poly", "generating function of one family member");
  add_family_options(poly, fa);
  add_path_option(poly, fa);

  auto* seq = app.add_subcommand("seq", "window F(kS), k = 0..kmax");
  add_family_options(seq, fa);
  add_path_option(seq, fa);
  seq->add_option("--kmax", kmax, "last dilation")->required();

  auto* check = app.add_subcommand("check", "annihilation and determinant test on a dilation window");
  add_family_options(check, fa);
  check->add_option("--kmax", kmax, "last dilation (default 2r+1)");
  check->add_option("--order", order, "recurrence length to test (default: product root count, else detected)");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list the fillings of one family member");
  add_family_options(enumerate_cmd, fa);
  add_path_option(enumerate_cmd, fa);

  auto* identity = app.add_subcommand("identity", "exact identity checks");
  identity->add_option("--name", name, "hlp_sum, grothendieck_bottom or key_operator")->required();
  identity->add_option("--shape,--mu,--lambda", fa.shape, "partition for hlp_sum and grothendieck_bottom");
  identity->add_option("--n", fa.n, "number of variables");
  identity->add_option("--max-size", max_size, "key_operator: largest |alpha|");
  identity->add_option("--max-n", max_n, "key_operator: largest n");

  auto* specialize = app.add_subcommand("specialize", "fit k -> K_{k alpha}(1^n)");
  specialize->add_option("--alpha,--shape", fa.shape, "composition")->required();
  specialize->add_option("--n", fa.n, "number of variables")->required();
  specialize->add_option("--kmax", kmax, "last fitted dilation (default: root count)");

  auto* polytope = app.add_subcommand("polytope", "lattice points, transforms and recurrences of polytopes");
  polytope->add_option("--file", file, "HPolytope JSON, or {\"faces\": [...]} for the faces op")->required();
  polytope->add_option("--op", op, "points, transform, idp or faces")
      ->required()
      ->check(CLI::IsMember({"points", "transform", "idp", "faces"}));
  polytope->add_option("--k", k, "dilation for points and transform");
  polytope->add_option("--kmax", kmax, "window end (idp default 6, faces default 2r+1)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (poly->parsed()) {
      FamilySpec f = family_spec(fa);
      Polynomial p = generate(f, path_of(fa));
      emit(out, to_json(p));
      err << gen_name(f.family) << " " << format_composition(f.shape) << " n=" << f.n << ": " << to_string(p) << "\n";
      return kPass;
    }

    if (seq->parsed()) {
      FamilySpec f = family_spec(fa);
      auto w = sequence(f, kmax, path_of(fa));
      emit(out, to_json(w));
      err << gen_name(f.family) << " window of " << w.size() << " polynomials\n";
      return kPass;
    }

    if (enumerate_cmd->parsed()) {
      FamilySpec f = family_spec(fa);
      if (f.family == Gen::hl_P) throw UsageError("hl_P has no fillings");
      FillingSpec s = filling_spec(f);
      Json list = Json::array();
      auto all = fillrec::enumerate(s, path_of(fa));
      for (const auto& t : all) list.push_back(to_json(t));
      emit(out, list);
      err << all.size() << " fillings\n";
      return kPass;
    }

    if (check->parsed()) {
      FamilySpec f = family_spec(fa);
      auto chi = product_char_poly(f);
      Json rep = spec_json(f);
      int r = order;
      std::string source = "given";
      if (!r && chi) {
        r = chi->degree();
        source = "product";
      }
      if (!r) {
        const int m = kmax >= 0 ? kmax : 13;
        auto w = sequence(f, m);
        auto det = detect_order(w, 6);
        source = "detected";
        if (!det) {
          rep["order"] = nullptr;
          rep["order_source"] = source;
          rep["verdict"] = "fail";
          emit(out, rep);
          err << "no recurrence of length <= 6 found on k = 0.." << m << "\n";
          return kFail;
        }
        r = *det;
      }
      const int m = kmax >= 0 ? kmax : 2 * r + 1;
      if (m + 1 < 2 * r + 1)
        throw WindowTooShort("order " + std::to_string(r) + " needs kmax >= " + std::to_string(2 * r));
      auto w = sequence(f, m);
      rep["order"] = r;
      rep["order_source"] = source;
      rep["kmax"] = m;
      bool pass = true;
      if (chi) {
        rep["char_poly"] = to_json(*chi);
        auto fail = first_annihilation_failure(*chi, w);
        rep["annihilation"] = {{"passed", !fail}, {"failing_index", fail ? Json(*fail) : Json(nullptr)}};
        pass = pass && !fail;
      } else {
        rep["annihilation"] = nullptr;
      }
      const bool det = determinant_test(w, r);
      rep["determinant_test"] = {{"order", r}, {"passed", det}};
      pass = pass && det;
      rep["verdict"] = pass ? "pass" : "fail";
      emit(out, rep);
      err << gen_name(f.family) << " " << format_composition(f.shape) << ": " << (pass ? "pass" : "fail")
          << " at order " << r << "\n";
      return pass ? kPass : kFail;
    }

    if (identity->parsed()) {
      Json rep = {{"identity", name}};
      bool pass = false;
      if (name == "hlp_sum" || name == "grothendieck_bottom") {
        if (fa.shape.empty() || fa.n < 1) throw UsageError(name + " needs --shape and --n");
        Composition mu = parse_composition(fa.shape);
        Polynomial lhs, rhs;
        if (name == "hlp_sum") {
          lhs = hl_P(mu, fa.n);
          Composition padded = mu;
          padded.resize(fa.n, 0);
          std::vector<Polynomial> parts;
          for (const auto& g : rearrangements(padded)) parts.push_back(hl_E(g, fa.n));
          rhs = Polynomial::sum(fa.n, parts);
        } else {
          Polynomial g = grothendieck(mu, fa.n);
          lhs = homogeneous_part(g, min_x_degree(g));
          rhs = schur(mu, fa.n);
        }
        pass = lhs == rhs;
        rep["shape"] = mu;
        rep["n"] = fa.n;
        rep["lhs"] = to_json(lhs);
        rep["rhs"] = to_json(rhs);
        if (!pass) rep["diff"] = to_json(lhs - rhs);
      } else if (name == "key_operator") {
        auto maps = discover_key_index_maps(max_size, max_n);
        Json names = Json::array();
        for (auto m : maps) names.push_back(index_map_name(m));
        pass = std::find(maps.begin(), maps.end(), kKeyIndexMap) != maps.end();
        rep["max_size"] = max_size;
        rep["max_n"] = max_n;
        rep["index_maps"] = names;
        rep["frozen"] = index_map_name(kKeyIndexMap);
        err << "index maps: " << names.dump() << "\n";
      } else {
        throw UsageError("unknown identity '" + name + "'");
      }
      rep["passed"] = pass;
      emit(out, rep);
      err << name << ": " << (pass ? "pass" : "fail") << "\n";
      return pass ? kPass : kFail;
    }

    if (specialize->parsed()) {
      Composition alpha = parse_composition(fa.shape);
      const int m = kmax >= 0 ? kmax : static_cast<int>(char_poly_key(alpha, fa.n).distinct());
      FitResult fit = specialize_and_fit(alpha, fa.n, m);
      Json coeffs = Json::array(), samples = Json::array();
      for (const auto& c : fit.coeffs) coeffs.push_back(rational_string(c));
      for (const auto& s : fit.samples) samples.push_back(s.str());
      Json rep = {{"alpha", alpha},
                  {"n", fa.n},
                  {"kmax", m},
                  {"coeffs", coeffs},
                  {"samples", samples},
                  {"held_out", fit.held_out_ok},
                  {"verdict", fit.nonnegative ? "nonnegative" : "negative-found"}};
      emit(out, rep);
      err << "K_{k(" << format_composition(alpha) << ")}(1^" << fa.n << ") fitted with " << fit.coeffs.size()
          << " coefficients: " << (fit.nonnegative ? "nonnegative" : "negative coefficient found") << "\n";
      return kPass;
    }

    if (polytope->parsed()) {
      Json in = read_json_file(file);
      if (op == "faces") {
        if (!in.contains("faces")) throw UsageError("faces op needs {\"faces\": [...]}");
        std::vector<HPolytope> faces;
        for (const auto& j : in.at("faces")) faces.push_back(polytope_from_json(j));
        if (faces.empty()) throw UsageError("need at least one face");
        const int dim = faces[0].dim;
        const int r = static_cast<int>(faces_union_transform(faces, 1).size());
        const int m = kmax >= 0 ? kmax : 2 * r + 1;
        SequenceWindow w;
        for (int kk = 0; kk <= m; ++kk) w.push_back(faces_union_transform(faces, kk));
        const bool det = determinant_test(w, r);
        Json rep = {{"dim", dim}, {"faces", faces.size()}, {"kmax", m}, {"order", r}, {"window", to_json(w)},
                    {"determinant_test", {{"order", r}, {"passed", det}}}};
        emit(out, rep);
        err << "union of " << faces.size() << " faces: determinant test at order " << r << " "
            << (det ? "pass" : "fail") << "\n";
        return det ? kPass : kFail;
      }
      HPolytope p = polytope_from_json(in);
      if (op == "points") {
        auto pts = lattice_points(p, k);
        emit(out, points_to_json(pts));
        err << pts.size() << " lattice points in " << k << "P\n";
        return kPass;
      }
      if (op == "transform") {
        Polynomial t = integer_point_transform(lattice_points(p, k), p.dim);
        emit(out, to_json(t));
        err << to_string(t) << "\n";
        return kPass;
      }
      const int m = kmax >= 0 ? kmax : 6;
      IdpReport rep = idp_recurrence_check(p, m);
      Json j = {{"dim", p.dim},
                {"kmax", m},
                {"char_poly", to_json(rep.chi)},
                {"passed", rep.passed},
                {"failing_index", rep.failing_index ? Json(*rep.failing_index) : Json(nullptr)}};
      emit(out, j);
      err << "IDP recurrence with " << rep.chi.degree() << " roots: " << (rep.passed ? "pass" : "fail") << "\n";
      return rep.passed ? kPass : kFail;
    }
  } catch (const WindowTooShort& e) {
    err << "window too short: " << e.what() << "\n";
    return kWindowTooShort;
  } catch (const Inconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kInconsistency;
  } catch (const InvariantViolation& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kInconsistency;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace fillrec
