#pragma once

// JSON transport for problems and results.
//
// Polynomials are arrays of decimal coefficient strings, lowest degree
// first; rationals are "p/q". A rational function is a polynomial array
// when its denominator is constant and {"num": [...], "den": [...]}
// otherwise. Unbounded integers (thresholds, sample points) are strings.
// Serialization is canonical, so serialize(parse(serialize(x))) is
// byte-identical to serialize(x).

#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "paralat/paralat.hpp"

namespace paralat {

using Json = nlohmann::ordered_json;

struct ProblemFile {
  std::size_t m = 0;
  ParamBasis basis;
  std::optional<RatFuncVec> target;
  std::optional<Rat> delta;
};

// ---- scalars and polynomials -----------------------------------------------

inline Rat parse_rational(const std::string& s) {
  static const auto is_int = [](const std::string& x) {
    std::size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (x[i] < '0' || x[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  const std::string p = s.substr(0, slash);
  const std::string q = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(p) || !is_int(q) || q[0] == '-' || q[0] == '+') throw ParseError("not a rational: \"" + s + "\"");
  Int num(p[0] == '+' ? p.substr(1) : p), den(q);
  if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
  return make_rat(num, den);
}

inline std::string rational_string(const Rat& x) { return x.get_str(); }

inline Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  if (p.is_zero()) {
    a.push_back("0");
    return a;
  }
  for (int k = 0; k <= p.degree(); ++k) a.push_back(rational_string(p.coeff(k)));
  return a;
}

inline Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("a polynomial must be an array of coefficient strings");
  std::vector<Rat> c;
  for (const Json& x : j) {
    if (x.is_string()) {
      c.push_back(parse_rational(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      c.emplace_back(Int(std::to_string(x.get<long long>())));
    } else {
      throw ParseError("polynomial coefficients must be strings");
    }
  }
  return Poly(std::move(c));
}

inline Json ratfunc_to_json(const RatFunc& f) {
  if (f.is_polynomial()) return poly_to_json(f.num() * (Rat(1) / f.den().coeff(0)));
  return Json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

inline RatFunc ratfunc_from_json(const Json& j) {
  if (j.is_array()) return RatFunc(poly_from_json(j));
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw ParseError("a rational function is a coefficient array or {\"num\", \"den\"}");
  Poly den = poly_from_json(j.at("den"));
  if (den.is_zero()) throw ParseError("rational function with zero denominator");
  return RatFunc(poly_from_json(j.at("num")), den);
}

inline Json int_json(const Int& x) { return x.get_str(); }

inline Json basis_to_json(const ParamBasis& b) {
  Json rows = Json::array();
  for (const auto& v : b) {
    Json row = Json::array();
    for (const Poly& p : v) row.push_back(poly_to_json(p));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- problem files ---------------------------------------------------------

inline Json problem_to_json(const ProblemFile& p) {
  Json j;
  j["m"] = p.m;
  j["basis"] = basis_to_json(p.basis);
  if (p.target) {
    Json x = Json::array();
    for (const RatFunc& f : *p.target) x.push_back(ratfunc_to_json(f));
    j["target"] = std::move(x);
  }
  if (p.delta) j["delta"] = rational_string(*p.delta);
  return j;
}

/// Canonical text: one basis vector per line, everything else compact.
inline std::string serialize_problem(const ProblemFile& p) {
  const Json j = problem_to_json(p);
  std::ostringstream os;
  os << "{\n  \"m\": " << p.m << ",\n  \"basis\": [";
  const Json& rows = j.at("basis");
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? ",\n    " : "\n    ") << rows[i].dump();
  os << (rows.empty() ? "]" : "\n  ]");
  if (j.contains("target")) os << ",\n  \"target\": " << j.at("target").dump();
  if (j.contains("delta")) os << ",\n  \"delta\": " << j.at("delta").dump();
  os << "\n}\n";
  return os.str();
}

inline ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("a problem file is a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "m" && key != "basis" && key != "target" && key != "delta") throw ParseError("unknown field \"" + key + "\"");
  if (!j.contains("basis")) throw ParseError("missing field \"basis\"");
  const Json& rows = j.at("basis");
  if (!rows.is_array()) throw ParseError("\"basis\" must be an array of vectors");
  ProblemFile p;
  for (const Json& row : rows) {
    if (!row.is_array()) throw ParseError("each basis vector must be an array of polynomials");
    ParamVector v;
    for (const Json& e : row) {
      Poly q = poly_from_json(e);
      for (int k = 0; k <= q.degree(); ++k)
        if (!is_integer(q.coeff(k))) throw ParseError("basis coefficients must be integers");
      v.push_back(std::move(q));
    }
    p.basis.push_back(std::move(v));
  }
  if (j.contains("m")) {
    if (!j.at("m").is_number_unsigned()) throw ParseError("\"m\" must be a nonnegative integer");
    p.m = j.at("m").get<std::size_t>();
  } else if (!p.basis.empty()) {
    p.m = p.basis[0].size();
  } else {
    throw ParseError("an empty basis needs \"m\"");
  }
  for (const auto& v : p.basis)
    if (v.size() != p.m) throw ParseError("basis vector of length " + std::to_string(v.size()) + ", expected m = " + std::to_string(p.m));
  if (p.basis.size() > p.m) throw ParseError("more basis vectors than the dimension m");
  if (j.contains("target")) {
    const Json& x = j.at("target");
    if (!x.is_array() || x.size() != p.m) throw ParseError("\"target\" must be an array of m rational functions");
    RatFuncVec t;
    for (const Json& e : x) t.push_back(ratfunc_from_json(e));
    p.target = std::move(t);
  }
  if (j.contains("delta")) {
    const Json& d = j.at("delta");
    if (!d.is_string()) throw ParseError("\"delta\" must be a string \"p/q\"");
    p.delta = parse_rational(d.get<std::string>());
  }
  return p;
}

inline ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline ProblemFile load_problem(const std::string& path) { return parse_problem(read_file(path)); }

inline const RatFuncVec& require_target(const ProblemFile& p) {
  if (!p.target) throw MissingTarget("the problem file has no \"target\"");
  return *p.target;
}

// ---- results -----------------------------------------------------------------

inline Json eqp_to_json(const EqpFunc& f) {
  Json pieces = Json::array();
  for (const Poly& p : f.pieces()) pieces.push_back(poly_to_json(p));
  return Json{{"threshold", int_json(f.threshold())}, {"modulus", f.modulus()}, {"pieces", std::move(pieces)}};
}

/// Leaf bases are in s with t = modulus * s + residue; thresholds are in t.
inline Json reduced_to_json(const ReducedOutput& out) {
  Json leaves = Json::array();
  for (const auto& l : out.tree.leaves()) {
    Json leaf;
    leaf["modulus"] = l.modulus;
    leaf["residue"] = l.residue;
    leaf["threshold"] = int_json(l.t_threshold());
    leaf["basis"] = basis_to_json(l.payload.basis);
    leaf["transcript"] = l.payload.transcript;
    leaves.push_back(std::move(leaf));
  }
  return Json{{"delta", rational_string(out.delta)}, {"leaves", std::move(leaves)}};
}

/// Case-split text: each leaf basis rewritten in t.
inline std::string reduced_to_text(const ReducedOutput& out) {
  std::ostringstream os;
  const auto& leaves = out.tree.leaves();
  if (leaves.size() == 1 && leaves[0].modulus == 1) {
    os << "B(t) = " << to_string(leaves[0].payload.basis) << " for t ≥ " << leaves[0].t_threshold().get_str() << "\n";
    return os.str();
  }
  for (const auto& l : leaves) {
    ParamBasis in_t;
    for (const auto& v : l.payload.basis) {
      ParamVector w;
      for (const Poly& p : v) w.push_back(unsubstitute(p, l.modulus, l.residue));
      in_t.push_back(std::move(w));
    }
    os << "B(t) = " << to_string(in_t) << "  if t ≡ " << l.residue << " (mod " << l.modulus << "), t ≥ "
       << l.t_threshold().get_str() << "\n";
  }
  return os.str();
}

/// Leaves in s and in t, plus one EQP per coordinate when the common
/// modulus is small enough to flatten.
inline Json formula_to_json(const EqpVectorFormula& f) {
  Json leaves = Json::array();
  const auto in_t = f.pieces_in_t();
  for (std::size_t i = 0; i < f.tree.size(); ++i) {
    const auto& l = f.tree.leaves()[i];
    Json vs = Json::array(), vt = Json::array();
    for (const Poly& p : l.payload) vs.push_back(poly_to_json(p));
    for (const Poly& p : in_t[i]) vt.push_back(poly_to_json(p));
    Json leaf;
    leaf["modulus"] = l.modulus;
    leaf["residue"] = l.residue;
    leaf["threshold"] = int_json(l.t_threshold());
    leaf["vector"] = std::move(vs);
    leaf["vector_in_t"] = std::move(vt);
    leaves.push_back(std::move(leaf));
  }
  Json j;
  j["threshold"] = int_json(f.threshold());
  j["modulus"] = f.modulus();
  j["leaves"] = std::move(leaves);
  if (f.modulus() <= kMaxModulus) {
    Json coords = Json::array();
    for (const EqpFunc& e : f.coordinates()) coords.push_back(eqp_to_json(e));
    j["coordinates"] = std::move(coords);
  }
  j["text"] = f.to_string();
  return j;
}

inline Json report_to_json(const VerificationReport& r) {
  Json leaves = Json::array();
  for (const auto& l : r.leaves) {
    Json samples = Json::array(), checks = Json::array();
    for (const Int& t : l.samples) samples.push_back(int_json(t));
    for (const auto& c : l.checks) {
      Json cj{{"name", c.name}, {"t", int_json(c.t)}, {"pass", c.pass}};
      if (!c.detail.empty()) cj["detail"] = c.detail;
      checks.push_back(std::move(cj));
    }
    leaves.push_back(Json{{"modulus", l.modulus},
                          {"residue", l.residue},
                          {"threshold", int_json(l.threshold)},
                          {"samples", std::move(samples)},
                          {"pass", l.pass()},
                          {"checks", std::move(checks)}});
  }
  return Json{{"check", r.check}, {"pass", r.pass()}, {"checks_run", r.checks_run()}, {"leaves", std::move(leaves)}};
}

/// Sorted distinct sample points of a report.
inline std::vector<Int> verified_samples(const VerificationReport& r) {
  std::vector<Int> t;
  for (const auto& l : r.leaves) t.insert(t.end(), l.samples.begin(), l.samples.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

inline Json solver_result_to_json(const std::string& problem, const EqpVectorFormula& f, const VerificationReport& r) {
  Json samples = Json::array();
  for (const Int& t : verified_samples(r)) samples.push_back(int_json(t));
  return Json{{"problem", problem},
              {"formula", formula_to_json(f)},
              {"threshold", int_json(f.threshold())},
              {"verified_samples", std::move(samples)},
              {"verification", report_to_json(r)}};
}

}  // namespace paralat
