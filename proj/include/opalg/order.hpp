#pragma once

// The monomial order on commutative Omega-words: operator degree first, then
// Omega-breadth, then a lexicographic comparison of the canonical tuple
// (operator names, operator arguments, letter block).

#include <compare>
#include <string_view>

#include "opalg/terms.hpp"

namespace opalg {

enum class OrderTier {
  Equal,
  DegOmega,
  OmegaBreadth,
  LexOperator,
  LexArgument,
  LexLetters,
};

constexpr std::string_view name(OrderTier t) noexcept {
  switch (t) {
    case OrderTier::Equal: return "equal";
    case OrderTier::DegOmega: return "deg_omega";
    case OrderTier::OmegaBreadth: return "omega_breadth";
    case OrderTier::LexOperator: return "lex(operator)";
    case OrderTier::LexArgument: return "lex(argument)";
    case OrderTier::LexLetters: return "lex(letters)";
  }
  return "?";
}

struct OrderVerdict {
  std::strong_ordering ordering;
  OrderTier tier;
};

/// Compares and reports which tier of the tuple decided.
inline OrderVerdict compare_with_tier(const Word& u, const Word& v) noexcept {
  using so = std::strong_ordering;
  if (u.same_node(v)) return {so::equal, OrderTier::Equal};
  if (auto c = u.deg_omega() <=> v.deg_omega(); c != 0) return {c, OrderTier::DegOmega};
  if (auto c = u.omega_breadth() <=> v.omega_breadth(); c != 0) return {c, OrderTier::OmegaBreadth};
  const auto& a = u.ops();
  const auto& b = v.ops();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = compare_operators(a[i].op, b[i].op); c != 0) return {c, OrderTier::LexOperator};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = compare(a[i].arg, b[i].arg); c != 0) return {c, OrderTier::LexArgument};
  // Degree-lex on the letter block.
  const auto& x = u.letters();
  const auto& y = v.letters();
  if (auto c = x.size() <=> y.size(); c != 0) return {c, OrderTier::LexLetters};
  for (std::size_t i = 0; i < x.size(); ++i)
    if (auto c = compare_symbols(x[i], y[i]); c != 0) return {c, OrderTier::LexLetters};
  return {so::equal, OrderTier::Equal};
}

inline std::strong_ordering compare(const Word& u, const Word& v) noexcept {
  return compare_with_tier(u, v).ordering;
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const noexcept { return compare(a, b) < 0; }
};

struct WordGreater {
  bool operator()(const Word& a, const Word& b) const noexcept { return compare(a, b) > 0; }
};

}  // namespace opalg
