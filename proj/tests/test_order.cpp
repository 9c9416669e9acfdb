#include <gtest/gtest.h>

#include <random>

#include "opalg/opalg.hpp"
#include "oracles.hpp"

using namespace opalg;

namespace {

std::strong_ordering cmp(const char* a, const char* b) { return compare(parse_word(a), parse_word(b)); }
OrderTier tier(const char* a, const char* b) { return compare_with_tier(parse_word(a), parse_word(b)).tier; }

}  // namespace

TEST(Order, BasicComparisons) {
  EXPECT_TRUE(cmp("x*y", "p(x)") < 0);
  EXPECT_EQ(tier("x*y", "p(x)"), OrderTier::DegOmega);
  EXPECT_TRUE(cmp("p(x)", "d(x)") < 0);
  EXPECT_EQ(tier("p(x)", "d(x)"), OrderTier::LexOperator);
  EXPECT_TRUE(cmp("d(x*p(y))", "d(x*p(y))") == 0);
  EXPECT_EQ(tier("d(x*p(y))", "d(p(y)*x)"), OrderTier::Equal);
  EXPECT_TRUE(cmp("p(x)*p(y)", "p(x*p(y))") > 0);
  EXPECT_EQ(tier("p(x)*p(y)", "p(x*p(y))"), OrderTier::OmegaBreadth);
}

TEST(Order, LeadingMonomialsOfTheRelations) {
  for (const auto& r : preset("drb").rules)
    for (const auto& [w, c] : r->rhs) EXPECT_TRUE(compare(w, r->lhs) < 0) << r->name << ": " << format(w);
}

TEST(Order, LettersAndArguments) {
  EXPECT_TRUE(cmp("x", "y") < 0);
  EXPECT_TRUE(cmp("y", "x^2") < 0);  // degree first
  EXPECT_TRUE(cmp("x*y", "y^2") < 0);
  EXPECT_TRUE(cmp("1", "x") < 0);
  EXPECT_TRUE(cmp("d(1)", "d(x)") < 0);
  EXPECT_EQ(tier("d(x)", "d(y)"), OrderTier::LexArgument);
  EXPECT_EQ(tier("d(x)*y", "d(x)*x"), OrderTier::LexLetters);
}

class OrderLaws : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{1234};
};

TEST_F(OrderLaws, AgreesWithOracle) {
  for (int i = 0; i < 5000; ++i) {
    Word a = random_word(rng_, 8), b = random_word(rng_, 8);
    auto c = compare(a, b);
    int ref = oracle::cmp(format(a), format(b));
    EXPECT_EQ(c < 0, ref < 0) << format(a) << " vs " << format(b);
    EXPECT_EQ(c == 0, ref == 0) << format(a) << " vs " << format(b);
    EXPECT_EQ(c == 0, a == b);
    EXPECT_EQ(c < 0, compare(b, a) > 0);
  }
}

TEST_F(OrderLaws, Transitive) {
  for (int i = 0; i < 3000; ++i) {
    Word a = random_word(rng_, 6), b = random_word(rng_, 6), c = random_word(rng_, 6);
    if (compare(a, b) <= 0 && compare(b, c) <= 0) {
      EXPECT_TRUE(compare(a, c) <= 0);
    }
    if (compare(a, b) >= 0 && compare(b, c) >= 0) {
      EXPECT_TRUE(compare(a, c) >= 0);
    }
  }
}

TEST_F(OrderLaws, MonomialProperty) {
  for (int i = 0; i < 3000; ++i) {
    Word u = random_word(rng_, 6), v = random_word(rng_, 6), w = random_word(rng_, 4);
    if (compare(u, v) == 0) continue;
    if (compare(u, v) > 0) std::swap(u, v);
    EXPECT_TRUE(compare(u * w, v * w) < 0);
    StarContext q = random_context(rng_, 3, 2);
    EXPECT_TRUE(compare(q.substitute(u), q.substitute(v)) < 0) << format(q) << " " << format(u) << " " << format(v);
  }
}
