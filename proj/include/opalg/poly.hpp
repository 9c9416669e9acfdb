#pragma once

// Operated polynomials: finite linear combinations of Omega-words with
// coefficients in Q(L). Terms are kept in descending monomial order, so the
// leading term is always the first entry.

#include <map>
#include <utility>

#include "opalg/coeff.hpp"
#include "opalg/order.hpp"
#include "opalg/terms.hpp"

namespace opalg {

class Polynomial {
 public:
  using TermMap = std::map<Word, Scalar, WordGreater>;

  Polynomial() = default;
  Polynomial(const Scalar& c) {  // NOLINT(implicit)
    add_term(Word(), c);
  }
  Polynomial(const Word& w, const Scalar& c = Scalar(1)) {  // NOLINT(implicit)
    add_term(w, c);
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  Scalar coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
  }

  /// Adds c*w, dropping the term if it cancels.
  void add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void erase(const Word& w) { terms_.erase(w); }

  /// Leading monomial and its coefficient.
  std::pair<Word, Scalar> leading() const {
    if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "the zero polynomial has no leading term");
    return *terms_.begin();
  }

  Polynomial make_monic() const {
    auto [w, c] = leading();
    if (c.is_one()) return *this;
    return scaled(c.inverse());
  }

  Polynomial scaled(const Scalar& c) const {
    Polynomial r;
    if (c.is_zero()) return r;
    for (const auto& [w, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, a * c);
    return r;
  }

  /// Multiplies every monomial by the word w.
  Polynomial times_word(const Word& w) const {
    if (w.is_unit()) return *this;
    Polynomial r;
    for (const auto& [m, a] : terms_) r.add_term(m * w, a);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return a.scaled(Scalar(-1)); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [u, x] : a.terms_)
      for (const auto& [v, y] : b.terms_) r.add_term(u * v, x * y);
    return r;
  }
  friend Polynomial operator*(const Scalar& c, const Polynomial& a) { return a.scaled(c); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [w, c] : a.terms_) {
      if (!(w == it->first) || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  TermMap terms_;
};

/// Linear extension of the operator.
inline Polynomial apply_operator(const Operator* op, const Polynomial& f) {
  Polynomial r;
  for (const auto& [w, c] : f) r.add_term(Word::apply(op, w), c);
  return r;
}

/// Replaces letters by words in every monomial (linear in f).
inline Polynomial substitute_letters(const Polynomial& f, const std::map<const Symbol*, Word>& images) {
  Polynomial r;
  for (const auto& [w, c] : f) r.add_term(substitute_letters(w, images), c);
  return r;
}

/// q|_f: the hole replaced by each monomial of f.
inline Polynomial substitute(const StarContext& q, const Polynomial& f) {
  Polynomial r;
  for (const auto& [w, c] : f) r.add_term(q.substitute(w), c);
  return r;
}

}  // namespace opalg
