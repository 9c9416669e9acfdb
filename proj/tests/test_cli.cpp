#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "opalg/cli.hpp"
#include "opalg/json_io.hpp"

using namespace opalg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "opalg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ruleset(const std::string& name) { return std::string(OPALG_SOURCE_DIR) + "/rulesets/" + name; }

ErrorCode load_error(const char* text, std::string* message = nullptr) {
  try {
    load_ruleset(Json::parse(text), "t");
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "loaded: " << text;
  return ErrorCode::Internal;
}

}  // namespace

TEST(Cli, NormalForm) {
  auto r = run({"nf", "--theory", "d", "d(x)*d(y)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "L^-1*d(x*y) - L^-1*d(y)*x - L^-1*d(x)*y\n");
  r = run({"nf", "--theory", "d", "--lambda", "2", "d(x)*d(y)"});
  EXPECT_EQ(r.out, "(1/2)*d(x*y) - (1/2)*d(y)*x - (1/2)*d(x)*y\n");
  EXPECT_EQ(run({"nf", "d(p(x))"}).out, "x\n");
  EXPECT_EQ(run({"nf", "--strategy", "random", "--seed", "9", "d(p(x))*p(y)*p(x)"}).out,
            run({"nf", "d(p(x))*p(y)*p(x)"}).out);
}

TEST(Cli, NormalFormTrace) {
  auto r = run({"nf", "--theory", "drb", "--trace", "d(p(x))*y"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["theory"], "S_drb");
  ASSERT_EQ(j["trace"].size(), 1u);
  EXPECT_EQ(j["trace"][0]["rule"], "phi5");
  EXPECT_EQ(j["trace"][0]["context"], "y*[]");
  EXPECT_EQ(j["normal_form"], "x*y");
  // Leading-first takes phi1 here, although phi5 also applies.
  j = Json::parse(run({"nf", "--trace", "d(p(x))*d(y)"}).out);
  EXPECT_EQ(j["trace"][0]["rule"], "phi1");
  EXPECT_EQ(j["normal_form"], "-L^-1*d(y)*p(x) + L^-1*d(p(x)*y) - L^-1*x*y");
}

TEST(Cli, Compare) {
  EXPECT_EQ(run({"cmp", "p(x)", "d(x)"}).out, "< lex(operator)\n");
  EXPECT_EQ(run({"cmp", "x*y", "p(x)"}).out, "< deg_omega\n");
  EXPECT_EQ(run({"cmp", "p(x)*p(y)", "p(x*p(y))"}).out, "> omega_breadth\n");
  EXPECT_EQ(run({"cmp", "x", "x"}).out, "= equal\n");
  EXPECT_EQ(run({"cmp", "2*x", "x"}).code, 2);
}

TEST(Cli, Irreducibles) {
  auto r = run({"irr", "--theory", "drb", "--size", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("p(d(1))\n"), std::string::npos);
  EXPECT_EQ(r.out.find("d(p(1))"), std::string::npos);
  EXPECT_NE(r.out.find("count 11\n"), std::string::npos);
  EXPECT_NE(run({"irr", "--theory", "d", "--size", "2", "--generators", "x,y"}).out.find("count "), std::string::npos);
}

TEST(Cli, Verify) {
  auto rb = run({"verify", "--theory", "rb"});
  EXPECT_EQ(rb.code, 0);
  EXPECT_NE(rb.out.find("pass (bounded check, not a proof)"), std::string::npos);
  auto broken = run({"verify", "--theory", "rb-broken", "--json"});
  EXPECT_EQ(broken.code, 1);
  auto j = Json::parse(broken.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_GT(j["summary"]["nontrivial"].get<int>(), 0);
  EXPECT_EQ(run({"verify", "--theory", ruleset("rb_broken.json")}).code, 1);
}

TEST(Cli, Compose) {
  auto r = run({"compose", "--theory", "d", "d(u)*d(v) + L^-1*d(u)*v + L^-1*u*d(v) - L^-1*d(u*v)",
                "d(v)*d(w) + L^-1*d(v)*w + L^-1*v*d(w) - L^-1*d(v*w)", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  ASSERT_TRUE(j.is_array() || j.contains("compositions")) << r.out;
  EXPECT_EQ(run({"compose", "2*d(x)", "d(y)"}).code, 2);
  EXPECT_EQ(run({"compose", "0", "d(y)"}).code, 2);
}

TEST(Cli, Models) {
  EXPECT_EQ(run({"model-eval", "--model", "degenerate", "--lambda", "2", "--assign", "x=3", "d(x) + p(x)"}).out,
            "-15/2\n");
  EXPECT_EQ(run({"model-eval", "--model", "hurwitz", "--assign", "x=1", "p(x)"}).out,
            "[-1, 1, -1, 1, -1, 1, -1, 1, ...]\n");
  EXPECT_EQ(run({"model-eval", "--model", "degenerate", "z"}).code, 2);
  EXPECT_EQ(run({"hurwitz-check", "--samples", "50"}).code, 0);
  EXPECT_EQ(run({"hurwitz-check", "--samples", "50", "--model", "xi", "--lambda", "3/2"}).code, 0);
  EXPECT_EQ(run({"hurwitz-check", "--samples", "50", "--model", "left-multiplication", "--factor", "2"}).code, 1);
  EXPECT_EQ(run({"hurwitz-check", "--lambda", "0"}).code, 2);
  auto j = Json::parse(run({"hurwitz-check", "--samples", "20", "--model", "degenerate", "--json"}).out);
  EXPECT_TRUE(j["degenerate"].get<bool>());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"nf"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  auto bad = run({"nf", "q(x)"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("UnknownOperator"), std::string::npos);
  EXPECT_EQ(run({"nf", "--theory", "nope", "x"}).code, 2);
}

TEST(RuleSets, ShippedFilesLoad) {
  for (const char* f : {"d_plus_d1.json", "rb_broken.json"}) {
    Theory t = load_ruleset_file(ruleset(f));
    EXPECT_FALSE(t.rules.empty()) << f;
  }
  EXPECT_EQ(load_ruleset(Json::parse(R"j({"rules": [{"name": "r", "variables": ["u"], "polynomial": "p(p(u))"}]})j"),
                         "t").rules.size(),
            1u);
}

// drb.json declares an order for x and y. The order is process-wide, so the
// declaration is refused once x exists with its default order. The CLI loads
// rule sets before parsing any input.
TEST(RuleSets, GeneratorOrderIsFixedOnFirstUse) {
  letter("x");
  try {
    load_ruleset_file(ruleset("drb.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SymbolOrderConflict);
  }
  auto r = run({"nf", "--theory", ruleset("drb.json"), "d(p(x))"});
  EXPECT_EQ(r.code, 2);
}

TEST(RuleSets, Errors) {
  EXPECT_EQ(load_error(R"j({"rules": []})j"), ErrorCode::InvalidRuleSet);
  EXPECT_EQ(load_error(R"j({"rules": [{"name": "r", "variables": ["u"], "polynomial": "2*p(p(u))"}]})j"),
            ErrorCode::InvalidRuleSet);
  EXPECT_EQ(load_error(R"j({"rules": [{"name": "r", "variables": ["u"], "polynomial": "p(u)*p(u)"}]})j"),
            ErrorCode::InvalidRuleSet);
  EXPECT_EQ(load_error(R"j({"rules": [{"name": "r", "variables": ["u"], "polynomial": "p(x) - p(p(u))"}]})j"),
            ErrorCode::InvalidRuleSet);
  std::string msg;
  EXPECT_EQ(load_error(R"j({"rules": [{"name": "r", "variables": [], "polynomial": "p(x"}]})j", &msg),
            ErrorCode::InvalidRuleSet);
  EXPECT_NE(msg.find("rules[0]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 1, column 4"), std::string::npos) << msg;
  try {
    load_ruleset_file("/nonexistent/rules.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}
