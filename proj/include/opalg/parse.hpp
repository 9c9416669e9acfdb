#pragma once

// Text syntax for scalars, words and polynomials.
//
//   poly   := [+|-] term {(+|-) term}
//   term   := factor {(*|/) factor}        '/' needs a nonzero scalar divisor
//   factor := atom [^ [-] int]             negative powers only for scalars
//   atom   := int | L | ident | op '(' poly ')' | '(' poly ')' | []
//
// `L` is the weight; `[]` is the hole of a context. An identifier directly
// followed by '(' must name a registered operator.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "opalg/poly.hpp"

namespace opalg {

inline bool is_variable(const Symbol* s) { return !s->name.empty() && s->name[0] == '?'; }

inline std::string display_name(const Symbol* s) {
  return is_variable(s) ? s->name.substr(1) : s->name;
}

inline std::string format(const Word& w) {
  if (w.is_unit()) return "1";
  std::string out;
  auto sep = [&out] {
    if (!out.empty()) out += "*";
  };
  for (const auto& f : w.ops()) {
    sep();
    out += f.op->name + "(" + format(f.arg) + ")";
  }
  // Letters print ascending, with repeats folded into powers.
  const auto& ys = w.letters();
  for (std::size_t i = ys.size(); i > 0;) {
    std::size_t j = i - 1;
    while (j > 0 && ys[j - 1] == ys[i - 1]) --j;
    std::size_t run = i - j;
    sep();
    out += display_name(ys[i - 1]);
    if (run > 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

inline std::string format(const StarContext& q) { return format(q.word()); }

namespace detail {

// Splits c into (negative?, text of |c|, is_single_term).
inline std::pair<bool, std::string> coefficient_text(const Scalar& c) {
  const auto& num = c.numerator();
  if (c.is_laurent() && num.term_count() == 1) {
    long v = static_cast<long>(num.valuation());
    long k = v - c.denominator().degree();
    Rational a = num.coeff(static_cast<std::size_t>(v));
    bool neg = a < 0;
    if (neg) a = -a;
    return {neg, laurent_term(a, k)};
  }
  return {false, "(" + to_string(c) + ")"};
}

}  // namespace detail

/// Monomials in descending order; parse(format(f)) == f.
inline std::string format(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : f) {
    auto [neg, text] = detail::coefficient_text(c);
    std::string term;
    if (w.is_unit()) {
      term = text;
    } else if (text == "1") {
      term = format(w);
    } else {
      term = text + "*" + format(w);
    }
    if (first) {
      out += neg ? "-" + term : term;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << format(w); }
inline std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << format(f); }

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Polynomial parse_all() {
    Polynomial p = poly();
    if (tok_.kind != Tok::End) fail("unexpected '" + tok_.text + "'");
    return p;
  }

 private:
  enum class Tok { End, Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Hole };
  struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
  };

  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::ParseError) const {
    throw Error(code, "line " + std::to_string(tok_.line) + ", column " + std::to_string(tok_.column) + ": " +
                          msg);
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = static_cast<int>(pos_ - line_start_) + 1;
    if (pos_ >= text_.size()) return;
    char ch = text_[pos_];
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = std::string(1, ch);
      ++pos_;
    };
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_.kind = Tok::Int;
      tok_.text = std::string(text_.substr(start, pos_ - start));
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.text = std::string(text_.substr(start, pos_ - start));
    } else if (ch == '[' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ']') {
      tok_.kind = Tok::Hole;
      tok_.text = "[]";
      pos_ += 2;
    } else {
      switch (ch) {
        case '+': single(Tok::Plus); break;
        case '-': single(Tok::Minus); break;
        case '*': single(Tok::Star); break;
        case '/': single(Tok::Slash); break;
        case '^': single(Tok::Caret); break;
        case '(': single(Tok::LParen); break;
        case ')': single(Tok::RParen); break;
        default:
          tok_.text = std::string(1, ch);
          fail("unexpected character '" + tok_.text + "'");
      }
    }
  }

  bool peek_char(char c) const {
    std::size_t p = pos_;
    return p < text_.size() && text_[p] == c;
  }

  void expect(Tok k, const char* what) {
    if (tok_.kind != k) fail(std::string("expected ") + what);
    advance();
  }

  Polynomial poly() {
    bool neg = false;
    if (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      neg = tok_.kind == Tok::Minus;
      advance();
    }
    Polynomial acc = term();
    if (neg) acc = -acc;
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      bool minus = tok_.kind == Tok::Minus;
      advance();
      Polynomial t = term();
      if (minus) acc -= t;
      else acc += t;
    }
    return acc;
  }

  static std::optional<Scalar> as_scalar(const Polynomial& p) {
    if (p.is_zero()) return Scalar();
    if (p.term_count() == 1 && p.begin()->first.is_unit()) return p.begin()->second;
    return std::nullopt;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      bool divide = tok_.kind == Tok::Slash;
      advance();
      Token at = tok_;
      Polynomial rhs = factor();
      if (!divide) {
        acc = acc * rhs;
        continue;
      }
      auto s = as_scalar(rhs);
      if (!s) {
        tok_ = at;
        fail("divisor must be a scalar");
      }
      if (s->is_zero()) {
        tok_ = at;
        fail("division by zero", ErrorCode::DivisionByZero);
      }
      acc = acc.scaled(s->inverse());
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (tok_.kind != Tok::Caret) return base;
    advance();
    bool neg = false;
    if (tok_.kind == Tok::Minus) {
      neg = true;
      advance();
    }
    if (tok_.kind != Tok::Int) fail("expected an integer exponent");
    long e = std::stol(tok_.text);
    Token at = tok_;
    advance();
    if (neg) {
      auto s = as_scalar(base);
      if (!s) {
        tok_ = at;
        fail("negative powers need a scalar base");
      }
      if (s->is_zero()) {
        tok_ = at;
        fail("division by zero", ErrorCode::DivisionByZero);
      }
      base = Polynomial(s->inverse());
    }
    Polynomial r(Scalar(1));
    for (long i = 0; i < e; ++i) r = r * base;
    return r;
  }

  Polynomial atom() {
    switch (tok_.kind) {
      case Tok::Int: {
        Rational v(mpz_class(tok_.text));
        advance();
        return Polynomial(Scalar(v));
      }
      case Tok::Hole:
        advance();
        return Polynomial(Word::letter(star_symbol()));
      case Tok::LParen: {
        advance();
        Polynomial p = poly();
        expect(Tok::RParen, "')'");
        return p;
      }
      case Tok::Ident: {
        std::string name = tok_.text;
        if (peek_char('(')) {
          const Operator* op = OperatorTable::instance().find(name);
          if (!op) fail("unknown operator '" + name + "'", ErrorCode::UnknownOperator);
          advance();
          advance();
          Polynomial arg = poly();
          expect(Tok::RParen, "')'");
          return apply_operator(op, arg);
        }
        advance();
        if (name == "L") return Polynomial(Scalar::lambda());
        return Polynomial(letter(name));
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + tok_.text + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
  Token tok_;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text) { return detail::Parser(text).parse_all(); }

/// A single monomial with coefficient 1.
inline Word parse_word(std::string_view text) {
  Polynomial p = parse_polynomial(text);
  if (p.term_count() != 1 || !p.begin()->second.is_one())
    throw Error(ErrorCode::ParseError, "expected a single monomial, got '" + format(p) + "'");
  return p.begin()->first;
}

inline StarContext parse_context(std::string_view text) { return StarContext(parse_word(text)); }

inline Scalar parse_scalar(std::string_view text) {
  Polynomial p = parse_polynomial(text);
  if (p.is_zero()) return Scalar();
  if (p.term_count() != 1 || !p.begin()->first.is_unit())
    throw Error(ErrorCode::ParseError, "expected a scalar, got '" + format(p) + "'");
  return p.begin()->second;
}

}  // namespace opalg
