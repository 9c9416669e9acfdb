#pragma once

// Seeded generators of random words, contexts and polynomials for tests and
// the CLI.

#include <random>
#include <string>
#include <vector>

#include "opalg/poly.hpp"

namespace opalg {

struct RandomSpec {
  std::vector<std::string> generators{"x", "y"};
  std::vector<const Operator*> operators{op_d(), op_p()};
};

namespace detail {

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace detail

inline Word random_word_of_size(std::mt19937_64& rng, std::size_t size, const RandomSpec& spec = {});

/// A prime word of exactly the given size (>= 1).
inline Word random_prime(std::mt19937_64& rng, std::size_t size, const RandomSpec& spec = {}) {
  const Operator* op = spec.operators[detail::uniform(rng, 0, spec.operators.size() - 1)];
  if (size == 1) {
    // Letter, or an operator applied to the unit.
    std::size_t k = detail::uniform(rng, 0, spec.generators.size());
    if (k < spec.generators.size()) return letter(spec.generators[k]);
    return Word::apply(op, Word());
  }
  return Word::apply(op, random_word_of_size(rng, size - 1, spec));
}

/// size = letters + operator applications.
Word random_word_of_size(std::mt19937_64& rng, std::size_t size, const RandomSpec& spec) {
  Word w;
  while (size > 0) {
    std::size_t s = detail::uniform(rng, 1, size);
    w = w * random_prime(rng, s, spec);
    size -= s;
  }
  return w;
}

inline Word random_word(std::mt19937_64& rng, std::size_t max_size, const RandomSpec& spec = {}) {
  return random_word_of_size(rng, detail::uniform(rng, 0, max_size), spec);
}

/// A context with the hole at depth <= max_depth and small random cofactors.
inline StarContext random_context(std::mt19937_64& rng, std::size_t max_depth, std::size_t cofactor_size,
                                  const RandomSpec& spec = {}) {
  Word w = Word::letter(star_symbol()) * random_word(rng, cofactor_size, spec);
  std::size_t depth = detail::uniform(rng, 0, max_depth);
  for (std::size_t i = 0; i < depth; ++i) {
    const Operator* op = spec.operators[detail::uniform(rng, 0, spec.operators.size() - 1)];
    w = Word::apply(op, w) * random_word(rng, cofactor_size, spec);
  }
  return StarContext(w);
}

inline Scalar random_coefficient(std::mt19937_64& rng) {
  static const std::vector<Scalar> pool{Scalar(1),           Scalar(-1),          Scalar(2),
                                        Scalar(-3),          Scalar(Rational(1, 2)), Scalar::lambda(1),
                                        -Scalar::lambda(-1), Scalar::lambda(-2),  Scalar(1) + Scalar::lambda(1)};
  return pool[detail::uniform(rng, 0, pool.size() - 1)];
}

/// Up to max_terms terms, each a random word of size 1..max_size.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t max_size, std::size_t max_terms,
                                    const RandomSpec& spec = {}) {
  Polynomial f;
  std::size_t terms = detail::uniform(rng, 1, max_terms);
  for (std::size_t i = 0; i < terms; ++i)
    f.add_term(random_word_of_size(rng, detail::uniform(rng, 1, max_size), spec), random_coefficient(rng));
  return f;
}

}  // namespace opalg
