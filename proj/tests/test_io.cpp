#include <gtest/gtest.h>

#include <filesystem>

#include "paralat/io.hpp"
#include "test_util.hpp"

using namespace paralat;
using namespace testutil;

namespace {

Poly T() { return Poly::t(); }

}  // namespace

TEST(ParseRational, AcceptsIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rat(3));
  EXPECT_EQ(parse_rational("+2"), Rat(2));
  EXPECT_EQ(parse_rational("-3/6"), Rat(-1, 2));
  EXPECT_EQ(parse_rational("123456789012345678901234567890"), Rat(Int("123456789012345678901234567890")));
  for (const char* bad : {"", "-", "a", "1/0", "1/-2", "1/", "/2", "1.5", "1/2/3", " 1"}) EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Json, PolynomialArrays) {
  EXPECT_EQ(poly_to_json(Poly{0, 1}).dump(), R"(["0","1"])");
  EXPECT_EQ(poly_to_json(Poly()).dump(), R"(["0"])");
  EXPECT_EQ(poly_from_json(Json::parse(R"(["1/2","0","-3"])")), Poly(std::vector<Rat>{Rat(1, 2), Rat(0), Rat(-3)}));
  EXPECT_TRUE(poly_from_json(Json::array()).is_zero());
  EXPECT_THROW(poly_from_json(Json::parse(R"({"a":1})")), ParseError);
  EXPECT_THROW(poly_from_json(Json::parse(R"([1.5])")), ParseError);
}

TEST(Json, RationalFunctions) {
  RatFunc f(T() * T(), T() + 1);
  EXPECT_EQ(ratfunc_from_json(ratfunc_to_json(f)), f);
  EXPECT_TRUE(ratfunc_to_json(RatFunc(Poly{1, 2}, Poly(4))).is_array());
  EXPECT_EQ(ratfunc_from_json(ratfunc_to_json(RatFunc(Poly{1, 2}, Poly(4)))), RatFunc(Poly{1, 2}, Poly(4)));
  EXPECT_THROW(ratfunc_from_json(Json::parse(R"({"num":["1"],"den":["0"]})")), ParseError);
  EXPECT_THROW(ratfunc_from_json(Json::parse(R"({"num":["1"]})")), ParseError);
}

TEST(ProblemFile, ParsesAllFields) {
  ProblemFile p = parse_problem(R"({"m": 2, "basis": [[["0","1"],["2"]], [["1"],["0","0","1"]]],
                                    "target": [{"num":["1"],"den":["1","1"]}, ["1/3"]], "delta": "99/100"})");
  EXPECT_EQ(p.m, 2u);
  EXPECT_EQ(p.basis, (ParamBasis{{T(), 2}, {1, T() * T()}}));
  ASSERT_TRUE(p.target.has_value());
  EXPECT_EQ((*p.target)[0], RatFunc(Poly(1), T() + 1));
  EXPECT_EQ(p.delta, Rat(99, 100));
}

TEST(ProblemFile, RejectsMalformedInput) {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"m": 2})",
      R"({"basis": [[["1"]], [["1"],["2"]]]})",
      R"({"m": 3, "basis": [[["1"],["2"]]]})",
      R"({"m": 1, "basis": [[["1"]], [["2"]]]})",
      R"({"basis": [[["1/2"],["1"]]]})",
      R"({"basis": [[["1"],["1"]]], "target": [["1"]]})",
      R"({"basis": [[["1"],["1"]]], "delta": 0.75})",
      R"({"basis": [[["1"],["1"]]], "extra": 1})",
      R"({"m": -1, "basis": []})",
      R"({"basis": []})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_problem(text), ParseError) << text;
}

TEST(ProblemFile, MissingTargetIsReported) {
  ProblemFile p = parse_problem(R"({"basis": [[["1"],["0"]]]})");
  EXPECT_THROW(require_target(p), MissingTarget);
}

TEST(ProblemFile, CorpusRoundTripsByteForByte) {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PARALAT_PROBLEMS_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const std::string text = read_file(entry.path().string());
    const std::string once = serialize_problem(parse_problem(text));
    EXPECT_EQ(once, text) << entry.path();
    EXPECT_EQ(serialize_problem(parse_problem(once)), once);
    ++files;
  }
  EXPECT_GE(files, 5u);
}

TEST(ProblemFile, RandomProblemsRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    ProblemFile p;
    p.basis = random_basis(rng, InstanceShape{});
    p.m = p.basis[0].size();
    if (trial % 2) p.target = random_target(rng, p.m);
    if (trial % 3 == 0) p.delta = make_rat(Int(uniform(rng, 26, 99)), Int(100));
    const std::string s = serialize_problem(p);
    ProblemFile q = parse_problem(s);
    EXPECT_EQ(q.basis, p.basis);
    EXPECT_EQ(q.target, p.target);
    EXPECT_EQ(q.delta, p.delta);
    EXPECT_EQ(serialize_problem(q), s);
  }
}

TEST(Json, ReducedOutputShape) {
  ParamBasis b{{3, 0}, {2 * T(), 1}};
  ReducedOutput out = parametric_lll(b);
  Json j = reduced_to_json(out);
  EXPECT_EQ(j.at("delta"), "3/4");
  ASSERT_EQ(j.at("leaves").size(), out.tree.size());
  for (const auto& leaf : j.at("leaves")) {
    for (const char* key : {"modulus", "residue", "threshold", "basis", "transcript"}) EXPECT_TRUE(leaf.contains(key)) << key;
    EXPECT_EQ(leaf.at("basis").size(), 2u);
  }
  EXPECT_NE(reduced_to_text(out).find("(mod 3)"), std::string::npos);
}

TEST(Json, SolverResultShape) {
  ParamBasis b{{T(), 2}, {1, T() * T()}};
  EqpVectorFormula f = parametric_svp(b);
  VerificationReport r = check_optimality(f, b, std::nullopt);
  Json j = solver_result_to_json("svp", f, r);
  EXPECT_EQ(j.at("problem"), "svp");
  EXPECT_EQ(j.at("threshold"), "3");
  EXPECT_EQ(j.at("verified_samples"), Json::parse(R"(["3","4","5"])"));
  EXPECT_EQ(j.at("formula").at("leaves")[0].at("vector_in_t"), Json::parse(R"([["0","1"],["2"]])"));
  const Json& c = j.at("formula").at("coordinates");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1], Json::parse(R"({"threshold":"3","modulus":1,"pieces":[["2"]]})"));
  EXPECT_TRUE(j.at("verification").at("pass").get<bool>());
}

TEST(Json, FailedReportCarriesCounterexample) {
  ParamBasis b{{3, 0}, {2 * T(), 1}};
  ReducedOutput out = parametric_lll(b);
  for (auto& leaf : out.tree.leaves())
    for (auto& v : leaf.payload.basis) v[0] = v[0] * Poly(2);
  Json j = report_to_json(check_span(b, out));
  EXPECT_FALSE(j.at("pass").get<bool>());
  const Json& check = j.at("leaves")[0].at("checks")[0];
  EXPECT_FALSE(check.at("pass").get<bool>());
  EXPECT_TRUE(check.contains("detail"));
}
