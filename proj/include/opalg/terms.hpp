#pragma once

// Commutative Omega-words over unary operators.
//
// A word is a multiset of prime factors: letters of Y and operator
// applications to words. The canonical stored form keeps the operator factors
// and the letter block in two separate sequences, each sorted descending, so
// equal words always have identical stored sequences.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "opalg/errors.hpp"
#include "opalg/symbols.hpp"

namespace opalg {

class Word;
std::strong_ordering compare(const Word& u, const Word& v) noexcept;

class Word {
 public:
  struct OpFactor;
  struct Rep;  // shared immutable storage

  /// The unit 1.
  Word();

  static Word letter(const Symbol* y);
  static Word apply(const Operator* op, const Word& arg);
  /// Builds a word from arbitrary (unsorted) parts.
  static Word from_parts(std::vector<OpFactor> ops, std::vector<const Symbol*> letters);

  const std::vector<OpFactor>& ops() const noexcept;
  const std::vector<const Symbol*>& letters() const noexcept;

  bool is_unit() const noexcept;
  /// Number of prime factors |u|.
  std::size_t breadth() const noexcept;
  /// Number of top-level operator factors |u|_Omega.
  std::size_t omega_breadth() const noexcept;
  /// Total number of operator applications at every depth.
  std::size_t deg_omega() const noexcept;
  /// Least n with u in the n-th filtration level.
  std::size_t depth() const noexcept;
  /// Occurrences of letters at every depth.
  std::size_t letter_count() const noexcept;
  /// deg_Y + deg_Omega.
  std::size_t size() const noexcept { return letter_count() + deg_omega(); }
  /// Occurrences of the hole symbol at every depth.
  std::size_t star_count() const noexcept;
  std::size_t hash() const noexcept;

  bool same_node(const Word& o) const noexcept { return rep_ == o.rep_; }

  friend bool operator==(const Word& a, const Word& b) noexcept;

  friend Word operator*(const Word& a, const Word& b);

 private:
  explicit Word(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct Word::OpFactor {
  const Operator* op;
  Word arg;

  friend bool operator==(const OpFactor& a, const OpFactor& b) noexcept {
    return a.op == b.op && a.arg == b.arg;
  }
};

struct Word::Rep {
  std::vector<OpFactor> ops;             // descending by (operator, argument)
  std::vector<const Symbol*> letters;    // descending
  std::size_t deg_omega = 0;
  std::size_t depth = 0;
  std::size_t letter_count = 0;
  std::size_t star_count = 0;
  std::size_t hash = 0;
};

namespace detail {

inline std::strong_ordering compare_op_factors(const Word::OpFactor& a, const Word::OpFactor& b) noexcept {
  if (auto c = compare_operators(a.op, b.op); c != 0) return c;
  return compare(a.arg, b.arg);
}

inline std::size_t mix(std::size_t h, std::size_t v) noexcept {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline const std::shared_ptr<const Word::Rep>& unit_rep() {
  static const auto rep = [] {
    auto r = std::make_shared<Word::Rep>();
    r->hash = 0x51ed27;
    return std::shared_ptr<const Word::Rep>(r);
  }();
  return rep;
}

}  // namespace detail

inline Word::Word() : rep_(detail::unit_rep()) {}

inline const std::vector<Word::OpFactor>& Word::ops() const noexcept { return rep_->ops; }
inline const std::vector<const Symbol*>& Word::letters() const noexcept { return rep_->letters; }
inline bool Word::is_unit() const noexcept { return rep_->ops.empty() && rep_->letters.empty(); }
inline std::size_t Word::breadth() const noexcept { return rep_->ops.size() + rep_->letters.size(); }
inline std::size_t Word::omega_breadth() const noexcept { return rep_->ops.size(); }
inline std::size_t Word::deg_omega() const noexcept { return rep_->deg_omega; }
inline std::size_t Word::depth() const noexcept { return rep_->depth; }
inline std::size_t Word::letter_count() const noexcept { return rep_->letter_count; }
inline std::size_t Word::star_count() const noexcept { return rep_->star_count; }
inline std::size_t Word::hash() const noexcept { return rep_->hash; }

inline bool operator==(const Word& a, const Word& b) noexcept {
  if (a.rep_ == b.rep_) return true;
  if (a.rep_->hash != b.rep_->hash) return false;
  return compare(a, b) == 0;
}

inline Word Word::from_parts(std::vector<OpFactor> ops, std::vector<const Symbol*> letters) {
  if (ops.empty() && letters.empty()) return Word();
  auto rep = std::make_shared<Rep>();
  std::sort(ops.begin(), ops.end(),
            [](const OpFactor& a, const OpFactor& b) { return detail::compare_op_factors(a, b) > 0; });
  std::sort(letters.begin(), letters.end(),
            [](const Symbol* a, const Symbol* b) { return compare_symbols(a, b) > 0; });
  std::size_t h = 0xc0ffee;
  for (const auto& f : ops) {
    rep->deg_omega += 1 + f.arg.deg_omega();
    rep->depth = std::max(rep->depth, f.arg.depth() + 1);
    rep->letter_count += f.arg.letter_count();
    rep->star_count += f.arg.star_count();
    h = detail::mix(h, std::hash<const void*>{}(f.op));
    h = detail::mix(h, f.arg.hash());
  }
  h = detail::mix(h, 0xabcdef);
  for (const Symbol* y : letters) {
    rep->letter_count += 1;
    if (y->tier == 2) rep->star_count += 1;
    h = detail::mix(h, std::hash<const void*>{}(y));
  }
  rep->hash = h;
  rep->ops = std::move(ops);
  rep->letters = std::move(letters);
  return Word(std::shared_ptr<const Rep>(std::move(rep)));
}

inline Word Word::letter(const Symbol* y) { return from_parts({}, {y}); }

inline Word Word::apply(const Operator* op, const Word& arg) { return from_parts({OpFactor{op, arg}}, {}); }

/// Multiset union of prime factors.
inline Word operator*(const Word& a, const Word& b) {
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  std::vector<Word::OpFactor> ops;
  ops.reserve(a.ops().size() + b.ops().size());
  std::merge(a.ops().begin(), a.ops().end(), b.ops().begin(), b.ops().end(), std::back_inserter(ops),
             [](const Word::OpFactor& x, const Word::OpFactor& y) { return detail::compare_op_factors(x, y) > 0; });
  std::vector<const Symbol*> letters;
  letters.reserve(a.letters().size() + b.letters().size());
  std::merge(a.letters().begin(), a.letters().end(), b.letters().begin(), b.letters().end(),
             std::back_inserter(letters), [](const Symbol* x, const Symbol* y) { return compare_symbols(x, y) > 0; });
  // Already sorted; from_parts re-sorts cheaply.
  return Word::from_parts(std::move(ops), std::move(letters));
}

inline Word product(const Word& u, const Word& v) { return u * v; }

inline Word apply_operator(const Operator* op, const Word& u) { return Word::apply(op, u); }

inline Word letter(std::string_view name) { return Word::letter(letter_symbol(name)); }

/// Replaces every occurrence of each mapped letter by its image word; the
/// image's factors merge into the multiset where the letter stood.
inline Word substitute_letters(const Word& w, const std::map<const Symbol*, Word>& images) {
  if (images.empty()) return w;
  std::vector<Word::OpFactor> ops;
  ops.reserve(w.ops().size());
  for (const auto& f : w.ops()) ops.push_back({f.op, substitute_letters(f.arg, images)});
  std::vector<const Symbol*> letters;
  Word extra;
  for (const Symbol* y : w.letters()) {
    auto it = images.find(y);
    if (it == images.end()) {
      letters.push_back(y);
    } else {
      extra = extra * it->second;
    }
  }
  return Word::from_parts(std::move(ops), std::move(letters)) * extra;
}

/// True if the letter occurs anywhere in w.
inline bool contains_letter(const Word& w, const Symbol* y) {
  for (const Symbol* x : w.letters())
    if (x == y) return true;
  for (const auto& f : w.ops())
    if (contains_letter(f.arg, y)) return true;
  return false;
}

inline void collect_letters(const Word& w, std::vector<const Symbol*>& out) {
  for (const Symbol* x : w.letters())
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  for (const auto& f : w.ops()) collect_letters(f.arg, out);
}

/// Removes the sub-multiset `part` from the top level of `w`; nullopt if `part`
/// is not contained in it.
inline std::optional<Word> divide_top(const Word& w, const Word& part) {
  if (part.ops().size() > w.ops().size() || part.letters().size() > w.letters().size()) return std::nullopt;
  std::vector<Word::OpFactor> ops;
  std::size_t j = 0;
  for (const auto& f : w.ops()) {
    if (j < part.ops().size() && f == part.ops()[j]) {
      ++j;
    } else {
      ops.push_back(f);
    }
  }
  if (j != part.ops().size()) return std::nullopt;
  std::vector<const Symbol*> letters;
  std::size_t k = 0;
  for (const Symbol* y : w.letters()) {
    if (k < part.letters().size() && y == part.letters()[k]) {
      ++k;
    } else {
      letters.push_back(y);
    }
  }
  if (k != part.letters().size()) return std::nullopt;
  return Word::from_parts(std::move(ops), std::move(letters));
}

/// A word with exactly one hole.
class StarContext {
 public:
  /// The identity context.
  StarContext() : word_(Word::letter(star_symbol())) {}

  explicit StarContext(Word w) : word_(std::move(w)) {
    if (word_.star_count() != 1)
      throw Error(ErrorCode::InvalidContext, "a context needs exactly one hole, found " +
                                                 std::to_string(word_.star_count()));
  }

  const Word& word() const noexcept { return word_; }
  bool is_identity() const noexcept { return word_.breadth() == 1 && word_.letters().size() == 1; }

  /// q|_s
  Word substitute(const Word& s) const { return substitute_letters(word_, {{star_symbol(), s}}); }

  /// The context q o q' with (q o q')|_s = q|_{q'|_s}.
  StarContext compose(const StarContext& inner) const { return StarContext(substitute(inner.word_)); }

  friend bool operator==(const StarContext& a, const StarContext& b) { return a.word_ == b.word_; }

 private:
  Word word_;
};

inline Word substitute(const StarContext& q, const Word& s) { return q.substitute(s); }

namespace detail {

/// Visits every multiset level of w (top level and every operator argument at
/// any depth) together with a function that rebuilds w from a replacement for
/// that level. Identical sibling factors are visited once.
template <class Visit>
void visit_levels(const Word& w, const std::function<Word(const Word&)>& rebuild, Visit&& visit) {
  visit(w, rebuild);
  const auto& ops = w.ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i > 0 && ops[i] == ops[i - 1]) continue;
    std::function<Word(const Word&)> inner = [&w, i, &rebuild](const Word& replacement) {
      std::vector<Word::OpFactor> rest;
      rest.reserve(w.ops().size());
      for (std::size_t j = 0; j < w.ops().size(); ++j)
        if (j != i) rest.push_back(w.ops()[j]);
      rest.push_back({w.ops()[i].op, replacement});
      return rebuild(Word::from_parts(std::move(rest), w.letters()));
    };
    visit_levels(ops[i].arg, inner, visit);
  }
}

}  // namespace detail

/// Every context q with q|_target = m, without duplicates, ascending by the
/// order of the context words.
std::vector<StarContext> find_occurrences(const Word& m, const Word& target);

}  // namespace opalg

#include "opalg/order.hpp"

namespace opalg {

inline std::vector<StarContext> find_occurrences(const Word& m, const Word& target) {
  if (target.is_unit()) throw Error(ErrorCode::InvalidContext, "cannot search for occurrences of the unit");
  std::vector<Word> found;
  const Word hole = Word::letter(star_symbol());
  std::function<Word(const Word&)> identity = [](const Word& x) { return x; };
  detail::visit_levels(m, identity, [&](const Word& level, const std::function<Word(const Word&)>& rebuild) {
    if (level.breadth() < target.breadth()) return;
    if (auto rest = divide_top(level, target)) found.push_back(rebuild(*rest * hole));
  });
  std::sort(found.begin(), found.end(), [](const Word& a, const Word& b) { return compare(a, b) < 0; });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<StarContext> out;
  out.reserve(found.size());
  for (auto& w : found) out.emplace_back(std::move(w));
  return out;
}

}  // namespace opalg

template <>
struct std::hash<opalg::Word> {
  std::size_t operator()(const opalg::Word& w) const noexcept { return w.hash(); }
};
