#include <gtest/gtest.h>

#include <random>

#include "opalg/opalg.hpp"
#include "oracles.hpp"

using namespace opalg;

namespace {

Word W(const char* s) { return parse_word(s); }
StarContext Q(const char* s) { return parse_context(s); }

std::vector<std::string> texts(const std::vector<StarContext>& qs) {
  std::vector<std::string> out;
  for (const auto& q : qs) out.push_back(format(q));
  return out;
}

}  // namespace

TEST(Terms, Product) {
  EXPECT_EQ(W("x") * Word(), W("x"));
  EXPECT_EQ(W("x") * W("y"), W("y") * W("x"));
  Word dd = W("d(x)") * W("d(x)");
  EXPECT_EQ(dd.breadth(), 2u);
  EXPECT_EQ(W("d(d(x))").breadth(), 1u);
  EXPECT_NE(dd, W("d(d(x))"));
  EXPECT_EQ(format(dd), "d(x)*d(x)");
  EXPECT_EQ(format(W("y*x*x")), "x^2*y");
}

TEST(Terms, ApplyOperator) {
  Word d1 = apply_operator(op_d(), Word());
  EXPECT_FALSE(d1.is_unit());
  EXPECT_EQ(format(d1), "d(1)");
  Word dp = apply_operator(op_d(), apply_operator(op_p(), W("x")));
  EXPECT_EQ(dp, W("d(p(x))"));
  EXPECT_EQ(dp.deg_omega(), 2u);
  EXPECT_EQ(dp.depth(), 2u);
  EXPECT_EQ(dp.omega_breadth(), 1u);
}

TEST(Terms, Statistics) {
  Word w = W("d(x*p(y))*p(1)*x^2");
  EXPECT_EQ(w.breadth(), 4u);
  EXPECT_EQ(w.omega_breadth(), 2u);
  EXPECT_EQ(w.deg_omega(), 3u);
  EXPECT_EQ(w.depth(), 2u);
  EXPECT_EQ(w.letter_count(), 4u);
  EXPECT_EQ(Word().breadth(), 0u);
  EXPECT_EQ(Word().depth(), 0u);
}

TEST(Terms, Substitute) {
  EXPECT_EQ(StarContext().substitute(W("d(x)*y")), W("d(x)*y"));
  EXPECT_EQ(Q("d([])*y").substitute(W("x")), W("d(x)*y"));
  EXPECT_EQ(Q("p([]*z)").substitute(W("x*y")), W("p(x*y*z)"));
  EXPECT_EQ(Q("p([]*z)").substitute(Word()), W("p(z)"));
}

TEST(Terms, ContextsNeedOneHole) {
  EXPECT_THROW(parse_context("d(x)"), Error);
  EXPECT_THROW(parse_context("[]*d([])"), Error);
  try {
    parse_context("x*y");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidContext);
  }
}

TEST(Terms, FindOccurrences) {
  EXPECT_EQ(texts(find_occurrences(W("x"), W("x"))), std::vector<std::string>{"[]"});
  EXPECT_EQ(texts(find_occurrences(W("d(p(x))*y"), W("p(x)"))), std::vector<std::string>{"d([])*y"});
  EXPECT_TRUE(find_occurrences(W("x*y"), W("d(x)")).empty());
  // Identical siblings give one context.
  EXPECT_EQ(find_occurrences(W("d(x)*d(x)"), W("x")).size(), 1u);
  EXPECT_EQ(find_occurrences(W("d(x)*d(x)"), W("d(x)")).size(), 1u);
  EXPECT_EQ(find_occurrences(W("x^2"), W("x")).size(), 1u);
  EXPECT_THROW(find_occurrences(W("x"), Word()), Error);
}

class TermLaws : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{7};
};

TEST_F(TermLaws, CanonicalUnderShuffles) {
  for (int i = 0; i < 300; ++i) {
    std::vector<Word> primes;
    for (std::size_t k = 0, n = 1 + rng_() % 4; k < n; ++k) primes.push_back(random_prime(rng_, 1 + rng_() % 3));
    Word a;
    for (const auto& p : primes) a = a * p;
    std::shuffle(primes.begin(), primes.end(), rng_);
    Word b;
    for (const auto& p : primes) b = p * b;
    EXPECT_EQ(a, b);
    EXPECT_EQ(format(a), format(b));
    EXPECT_EQ(a.hash(), b.hash());
  }
}

TEST_F(TermLaws, StatisticsAreAdditive) {
  for (int i = 0; i < 500; ++i) {
    Word u = random_word(rng_, 6), v = random_word(rng_, 6);
    EXPECT_EQ((u * v).breadth(), u.breadth() + v.breadth());
    EXPECT_EQ((u * v).deg_omega(), u.deg_omega() + v.deg_omega());
    EXPECT_EQ(apply_operator(op_p(), u).depth(), u.depth() + 1);
  }
}

TEST_F(TermLaws, ContextCompositionAssociates) {
  for (int i = 0; i < 500; ++i) {
    StarContext q = random_context(rng_, 3, 2), r = random_context(rng_, 3, 2);
    Word s = random_word(rng_, 5);
    EXPECT_EQ(q.substitute(r.substitute(s)), q.compose(r).substitute(s));
  }
}

// Every context of the right size, generated from the grammar with a stand-in
// letter for the hole, agrees with find_occurrences.
TEST_F(TermLaws, FindOccurrencesIsComplete) {
  const std::size_t max_size = 5;
  std::vector<std::vector<StarContext>> by_size(max_size + 1);
  for (const auto& text : oracle::words_up_to(max_size, {"x", "y", "s"}, {"d", "p"})) {
    if (std::count(text.begin(), text.end(), 's') != 1) continue;
    std::string ctx;
    for (char c : text) ctx += c == 's' ? std::string("[]") : std::string(1, c);
    StarContext q = parse_context(ctx);
    by_size[q.word().size()].push_back(q);
  }
  std::size_t hits = 0;
  for (int i = 0; i < 150; ++i) {
    Word target = random_word_of_size(rng_, 1 + rng_() % 2);
    Word m = i % 2 ? random_context(rng_, 2, 2).substitute(target) : random_word_of_size(rng_, 1 + rng_() % 4);
    if (m.size() > max_size) continue;
    std::vector<std::string> brute;
    for (const auto& q : by_size[m.size() - target.size() + 1])
      if (q.substitute(target) == m) brute.push_back(format(q));
    std::sort(brute.begin(), brute.end());
    auto found = texts(find_occurrences(m, target));
    std::sort(found.begin(), found.end());
    EXPECT_EQ(found, brute) << format(m) << " / " << format(target);
    hits += brute.size();
  }
  EXPECT_GT(hits, 30u);
}
