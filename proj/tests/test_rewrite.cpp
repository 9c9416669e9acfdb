#include <gtest/gtest.h>

#include <random>

#include "opalg/opalg.hpp"
#include "oracles.hpp"

using namespace opalg;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }
Word W(const char* s) { return parse_word(s); }
const Symbol* var(const char* name) { return variable_symbol(name); }

}  // namespace

TEST(Rewrite, MatchRule) {
  RuleSchema phi1 = standard_rule("phi1");
  auto ms = match_rule(W("d(x)*d(y)"), phi1);
  ASSERT_EQ(ms.size(), 2u);
  std::set<std::pair<std::string, std::string>> bindings;
  for (const auto& m : ms) {
    EXPECT_TRUE(m.context.is_identity());
    bindings.insert({format(m.binding.at(var("u"))), format(m.binding.at(var("v")))});
  }
  EXPECT_EQ(bindings, (std::set<std::pair<std::string, std::string>>{{"x", "y"}, {"y", "x"}}));

  auto m5 = match_rule(W("d(p(x))"), standard_rule("phi5"));
  ASSERT_EQ(m5.size(), 1u);
  EXPECT_TRUE(m5[0].context.is_identity());
  EXPECT_EQ(m5[0].binding.at(var("u")), W("x"));

  EXPECT_TRUE(match_rule(W("x*y"), standard_rule("phi3")).empty());
}

TEST(Rewrite, MatchesRebuildTheMonomial) {
  std::mt19937_64 rng(17);
  Theory t = preset("drb");
  std::size_t seen = 0;
  for (int i = 0; i < 400; ++i) {
    Word m = random_word(rng, 9);
    for (const auto& r : t.rules)
      for (const auto& mr : match_rule(m, *r)) {
        EXPECT_EQ(mr.context.substitute(r->lhs_at(mr.binding)), m);
        ++seen;
      }
  }
  EXPECT_GT(seen, 100u);
}

TEST(Rewrite, ReduceOnce) {
  auto [r2, ok2] = reduce_once(P("d(d(x))"), make_theory("phi2", {"phi2"}));
  EXPECT_TRUE(ok2);
  EXPECT_EQ(r2, P("-L^-1*d(x)"));
  auto [r0, ok0] = reduce_once(P("x*y"), preset("drb"));
  EXPECT_FALSE(ok0);
  EXPECT_EQ(r0, P("x*y"));
  auto [r5, ok5] = reduce_once(P("d(p(x))*y"), make_theory("phi5", {"phi5"}));
  EXPECT_TRUE(ok5);
  EXPECT_EQ(r5, P("x*y"));
}

TEST(Rewrite, NormalForms) {
  EXPECT_EQ(normal_form(P("d(x)*d(y)"), preset("d")), P("-L^-1*d(x)*y - L^-1*x*d(y) + L^-1*d(x*y)"));
  EXPECT_EQ(normal_form(P("d(p(x))"), preset("drb")), P("x"));
  EXPECT_EQ(normal_form(P("d(1)"), preset("d")), P("d(1)"));
  EXPECT_EQ(normal_form(P("d(1)"), preset("d+d1")), Polynomial());
  EXPECT_EQ(normal_form(P("p(p(x))"), preset("rb")), P("-L*p(x)"));
}

TEST(Rewrite, Irreducibility) {
  EXPECT_TRUE(is_irreducible(W("p(x*p(y))"), preset("rb")));
  EXPECT_FALSE(is_irreducible(W("p(x)*p(y)"), preset("rb")));
  EXPECT_FALSE(is_irreducible(W("x*d(y*d(p(x)))"), preset("drb")));
  EXPECT_TRUE(is_irreducible(W("d(1)"), preset("d")));
}

TEST(Rewrite, IdealMembership) {
  Theory rb = certify(preset("rb"));
  ASSERT_TRUE(rb.certified);
  EXPECT_TRUE(ideal_member(instance(standard_rule("phi3"), {W("x"), W("y")}), rb));
  EXPECT_TRUE(ideal_member(P("d(x)*(p(p(y)) + L*p(y))"), rb));
  EXPECT_FALSE(ideal_member(P("x"), rb));
  try {
    ideal_member(P("x"), preset("drb"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnverifiedTheory);
  }
}

TEST(Rewrite, StepLimit) {
  Rewriter rw(preset("d"), RewriteOptions{3});
  try {
    rw.normal_form(P("d(x)*d(y)*d(z)*d(w)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StepLimitExceeded);
  }
}

class RewriteLaws : public ::testing::TestWithParam<std::string> {};

TEST_P(RewriteLaws, TraceIdempotenceAndSupport) {
  Rewriter rw(preset(GetParam()));
  auto rules = GetParam() == "d" ? std::set<std::string>{"phi1", "phi2"}
             : GetParam() == "rb" ? std::set<std::string>{"phi3", "phi4"}
                                  : std::set<std::string>{"phi1", "phi2", "phi3", "phi4", "phi5"};
  std::mt19937_64 rng(101);
  for (int i = 0; i < 200; ++i) {
    Polynomial f = random_polynomial(rng, 10, 4);
    std::vector<TraceStep> trace;
    Polynomial nf = rw.normal_form(f, Strategy::LeadingFirst, 0, &trace);
    EXPECT_EQ(replay(trace), f - nf) << format(f);
    EXPECT_EQ(rw.normal_form(nf), nf);
    for (const auto& s : trace)
      for (const auto& [w, c] : s.replacement) EXPECT_TRUE(compare(w, s.monomial) < 0);
    for (const auto& [w, c] : nf) EXPECT_FALSE(oracle::reducible(format(w), rules)) << format(w);
    std::vector<TraceStep> rtrace;
    Polynomial rnf = rw.normal_form(f, Strategy::RandomRedex, 1 + i, &rtrace);
    EXPECT_EQ(replay(rtrace), f - rnf);
  }
}

INSTANTIATE_TEST_SUITE_P(Presets, RewriteLaws, ::testing::Values("d", "rb", "drb"));
