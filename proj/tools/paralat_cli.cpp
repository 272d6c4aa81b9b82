// Command-line front end: reduce, svp, cvp, verify and oracle on problem
// files. Exit status: 0 success, 1 verification failure or no verified
// result, 2 usage or input error.

#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "paralat/io.hpp"

using namespace paralat;

namespace {

struct Flags {
  std::string file;
  std::string delta;
  std::size_t samples = 3;
  std::size_t max_rank = 3;
  bool json = false;
  bool pretty = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> at;
};

constexpr int kPass = 0, kFail = 1, kUsage = 2;

// Problem from the file, or a random one when only --seed is given.
ProblemFile load(const Flags& f, bool with_target, std::size_t max_rank) {
  if (!f.file.empty()) return load_problem(f.file);
  if (!f.seed) throw ParseError("a problem file or --seed is required");
  std::mt19937_64 rng(*f.seed);
  InstanceShape shape;
  shape.max_rank = std::min<std::size_t>(max_rank, 3);
  shape.max_dim = 3;
  shape.coeff = 5;
  ProblemFile p;
  p.basis = random_basis(rng, shape);
  p.m = p.basis[0].size();
  if (with_target) p.target = random_target(rng, p.m);
  return p;
}

Rat delta_of(const Flags& f, const ProblemFile& p) {
  if (!f.delta.empty()) return parse_rational(f.delta);
  return p.delta.value_or(Rat(3, 4));
}

void emit(const Flags& f, const Json& j, const std::string& text) {
  if (f.json)
    std::cout << j.dump(f.pretty ? 2 : -1) << "\n";
  else
    std::cout << text;
}

int run_reduce(const Flags& f) {
  ProblemFile p = load(f, false, 3);
  ReducedOutput out = parametric_lll(p.basis, delta_of(f, p));
  VerificationReport reduced = check_reduced(out, f.samples), span = check_span(p.basis, out, f.samples);
  Json j = reduced_to_json(out);
  j["verification"] = Json::array({report_to_json(reduced), report_to_json(span)});
  emit(f, j, reduced_to_text(out) + reduced.to_table() + span.to_table());
  return reduced.pass() && span.pass() ? kPass : kFail;
}

int run_solver(const Flags& f, bool cvp) {
  ProblemFile p = load(f, cvp, f.max_rank);
  SolverOptions opt;
  opt.max_rank = f.max_rank;
  std::optional<RatFuncVec> target;
  if (cvp) target = require_target(p);
  EqpVectorFormula formula = cvp ? parametric_cvp(p.basis, *target, opt) : parametric_svp(p.basis, opt);
  VerificationReport rep = check_optimality(formula, p.basis, target, f.samples, std::max<std::size_t>(f.max_rank, 4));
  emit(f, solver_result_to_json(cvp ? "cvp" : "svp", formula, rep), formula.to_string(cvp ? "w" : "u") + "\n" + rep.to_table());
  return rep.pass() ? kPass : kFail;
}

int run_verify(const Flags& f) {
  ProblemFile p = load(f, false, f.max_rank);
  ReducedOutput out = parametric_lll(p.basis, delta_of(f, p));
  std::vector<VerificationReport> reports{check_reduced(out, f.samples), check_span(p.basis, out, f.samples)};
  if (!p.basis.empty() && p.basis.size() <= f.max_rank) {
    SolverOptions opt;
    opt.max_rank = f.max_rank;
    reports.push_back(check_optimality(parametric_svp(p.basis, opt), p.basis, std::nullopt, f.samples));
    if (p.target) {
      reports.push_back(check_optimality(parametric_cvp(p.basis, *p.target, opt), p.basis, p.target, f.samples));
      reports.push_back(check_cvp_window(out, *p.target, f.samples));
      reports.push_back(check_babai_bound(out, *p.target, f.samples));
    }
  }
  bool ok = true;
  Json j = Json::array();
  std::string text;
  for (const auto& r : reports) {
    ok = ok && r.pass();
    j.push_back(report_to_json(r));
    text += r.to_table();
  }
  emit(f, Json{{"pass", ok}, {"reports", std::move(j)}}, text + (ok ? "PASS\n" : "FAIL\n"));
  return ok ? kPass : kFail;
}

int run_oracle(const Flags& f) {
  if (!f.at) throw ParseError("oracle needs --at=t");
  ProblemFile p = load(f, false, f.max_rank);
  const Int t = parse_rational(*f.at).get_num();
  if (Rat(t) != parse_rational(*f.at) || t < 0) throw ParseError("--at must be a nonnegative integer");
  if (p.basis.size() > std::max<std::size_t>(f.max_rank, 4)) throw DimensionTooLarge("rank above the oracle limit");
  IntMatrix b = eval_int(p.basis, t);
  if (gram_determinant(b) == 0) throw DependentInput("basis is dependent at t = " + t.get_str());
  auto vec_json = [](const IntVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(x.get_str());
    return a;
  };
  auto vec_text = [](const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
  };
  Json j{{"t", t.get_str()}};
  std::ostringstream text;
  text << "t = " << t.get_str() << "\n";
  if (!b.empty()) {
    OracleResult s = svp_oracle(b);
    j["svp"] = Json{{"vector", vec_json(s.vector)}, {"norm2", s.value.get_str()}};
    text << "shortest " << vec_text(s.vector) << "  norm^2 = " << s.value.get_str() << "\n";
  }
  if (p.target) {
    RatVec x = eval(*p.target, Rat(t));
    OracleResult c = b.empty() ? OracleResult{IntVec(p.m, Int(0)), {}, dist2(IntVec(p.m, Int(0)), x)} : cvp_oracle(b, x);
    j["cvp"] = Json{{"vector", vec_json(c.vector)}, {"dist2", c.value.get_str()}};
    text << "closest " << vec_text(c.vector) << "  dist^2 = " << c.value.get_str() << "\n";
  }
  emit(f, j, text.str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact parametric lattice reduction, shortest and closest vectors"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* sub) {
    sub->add_option("file", f.file, "problem file (JSON)");
    sub->add_option("--delta", f.delta, "LLL parameter p/q (default 3/4 or the file's delta)");
    sub->add_option("--samples", f.samples, "sample points per residue class")->check(CLI::PositiveNumber);
    sub->add_option("--max-rank", f.max_rank, "largest rank handed to the brute-force oracles and solvers");
    sub->add_flag("--json", f.json, "emit JSON");
    sub->add_flag("--pretty", f.pretty, "indent JSON (implies --json)");
    sub->add_option("--seed", f.seed, "without a file, run on a random instance from this seed");
  };
  CLI::App* reduce = app.add_subcommand("reduce", "eventually LLL-reduced basis per residue class");
  CLI::App* svp = app.add_subcommand("svp", "eventually shortest vector formula");
  CLI::App* cvp = app.add_subcommand("cvp", "eventually closest vector formula (needs a target)");
  CLI::App* verify = app.add_subcommand("verify", "sampled checks of reduction and optimality");
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force answers at one parameter value");
  for (CLI::App* sub : {reduce, svp, cvp, verify, oracle}) common(sub);
  oracle->add_option("--at", f.at, "parameter value t")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (f.pretty) f.json = true;

  try {
    if (*reduce) return run_reduce(f);
    if (*svp) return run_solver(f, false);
    if (*cvp) return run_solver(f, true);
    if (*verify) return run_verify(f);
    return run_oracle(f);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const MissingTarget& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ModulusOverflow& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  } catch (const CertificationFailure& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    // remaining library errors describe unusable input
    std::cerr << e.what() << "\n";
    return kUsage;
  }
}
