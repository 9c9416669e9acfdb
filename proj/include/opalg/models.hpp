#pragma once

// Concrete operated algebras with exact arithmetic: the degenerate operators,
// the xi-induced operators, lambda-Hurwitz series and the constrained
// subalgebra, and left multiplication as a non-example. They evaluate operated
// polynomials and check the operator identities on random samples.

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "opalg/coeff.hpp"
#include "opalg/parse.hpp"
#include "opalg/poly.hpp"

namespace opalg {

// ---------------------------------------------------------------------------
// Base rings.

/// Polynomials in t over Q modulo t^K.
template <int K>
class Truncated {
  static_assert(K >= 1);

 public:
  Truncated() : c_(K) {}
  Truncated(const Rational& v) : c_(K) { c_[0] = v; }  // NOLINT(implicit)
  explicit Truncated(std::vector<Rational> c) : c_(std::move(c)) { c_.resize(K); }

  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  friend Truncated operator+(const Truncated& a, const Truncated& b) {
    Truncated r;
    for (int i = 0; i < K; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend Truncated operator-(const Truncated& a, const Truncated& b) {
    Truncated r;
    for (int i = 0; i < K; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend Truncated operator-(const Truncated& a) { return Truncated() - a; }
  friend Truncated operator*(const Truncated& a, const Truncated& b) {
    Truncated r;
    for (int i = 0; i < K; ++i)
      if (sgn(a.c_[i]) != 0)
        for (int j = 0; i + j < K; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
  }
  friend bool operator==(const Truncated& a, const Truncated& b) { return a.c_ == b.c_; }

 private:
  std::vector<Rational> c_;
};

template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static Rational sample(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
  }
  static std::string str(const Rational& q) { return q.get_str(); }
  static Rational parse(const std::string& s) {
    Scalar v = parse_scalar(s);
    if (!v.is_constant()) throw Error(ErrorCode::ParseError, "expected a rational number, got '" + s + "'");
    return v.numerator().coeff(0) / v.denominator().coeff(0);
  }
};

template <int K>
struct RingTraits<Truncated<K>> {
  static Truncated<K> zero() { return {}; }
  static Truncated<K> one() { return Rational(1); }
  static Truncated<K> sample(std::mt19937_64& rng) {
    std::vector<Rational> c;
    for (int i = 0; i < K; ++i) c.push_back(RingTraits<Rational>::sample(rng));
    return Truncated<K>(std::move(c));
  }
  static std::string str(const Truncated<K>& a) {
    std::string out;
    for (int i = 0; i < K; ++i) {
      if (sgn(a.coeffs()[i]) == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + a.coeffs()[i].get_str() + ")";
      if (i > 0) out += "*t^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }
};

inline void require_weight(const Rational& lambda) {
  if (sgn(lambda) == 0) throw Error(ErrorCode::InvalidWeight, "weight must be nonzero");
}

// ---------------------------------------------------------------------------
// Hurwitz series.

namespace detail {

/// Rows 0..n of Pascal's triangle.
inline const std::vector<std::vector<Rational>>& binomials(std::size_t n) {
  thread_local std::vector<std::vector<Rational>> rows{{Rational(1)}};
  while (rows.size() <= n) {
    const auto& prev = rows.back();
    std::vector<Rational> row(prev.size() + 1);
    row.front() = row.back() = 1;
    for (std::size_t k = 1; k < prev.size(); ++k) row[k] = prev[k - 1] + prev[k];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// f(0..N-1) of a sequence N -> R with the weight-lambda Hurwitz product.
template <class R>
class HurwitzSeries {
 public:
  HurwitzSeries(std::vector<R> values, Rational lambda) : v_(std::move(values)), lambda_(std::move(lambda)) {
    require_weight(lambda_);
  }

  static HurwitzSeries unit(std::size_t n, const Rational& lambda) {
    std::vector<R> v(n, RingTraits<R>::zero());
    if (n > 0) v[0] = RingTraits<R>::one();
    return HurwitzSeries(std::move(v), lambda);
  }

  std::size_t window() const noexcept { return v_.size(); }
  const R& operator[](std::size_t n) const { return v_[n]; }
  const std::vector<R>& values() const noexcept { return v_; }
  const Rational& lambda() const noexcept { return lambda_; }

  friend bool operator==(const HurwitzSeries& a, const HurwitzSeries& b) {
    return a.lambda_ == b.lambda_ && a.v_ == b.v_;
  }

  friend HurwitzSeries operator+(const HurwitzSeries& a, const HurwitzSeries& b) {
    check(a, b);
    std::size_t n = std::min(a.window(), b.window());
    std::vector<R> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(a.v_[i] + b.v_[i]);
    return HurwitzSeries(std::move(v), a.lambda_);
  }

  HurwitzSeries scaled(const Rational& c) const {
    std::vector<R> v;
    for (const auto& x : v_) v.push_back(R(c) * x);
    return HurwitzSeries(std::move(v), lambda_);
  }

  /// (fg)(n) = sum_k sum_j C(n,k) C(n-k,j) L^k f(n-j) g(k+j); the window is
  /// the smaller of the two since index n only reads indices <= n.
  friend HurwitzSeries operator*(const HurwitzSeries& f, const HurwitzSeries& g) {
    check(f, g);
    std::size_t window = std::min(f.window(), g.window());
    const auto& c = detail::binomials(window);
    std::vector<R> out;
    for (std::size_t n = 0; n < window; ++n) {
      R sum = RingTraits<R>::zero();
      Rational lam_k = 1;
      for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t j = 0; j <= n - k; ++j) {
          Rational coeff = c[n][k] * c[n - k][j] * lam_k;
          sum = sum + R(coeff) * f.v_[n - j] * g.v_[k + j];
        }
        lam_k *= f.lambda_;
      }
      out.push_back(sum);
    }
    return HurwitzSeries(std::move(out), f.lambda_);
  }

  /// The left shift; the window shrinks by one.
  HurwitzSeries derivation() const {
    std::vector<R> v(v_.begin() + (v_.empty() ? 0 : 1), v_.end());
    return HurwitzSeries(std::move(v), lambda_);
  }

  /// f(n) = -L^-1 f(n-1) on the whole window.
  bool is_constrained() const {
    Rational m = -1 / lambda_;
    for (std::size_t n = 1; n < v_.size(); ++n)
      if (!(v_[n] == R(m) * v_[n - 1])) return false;
    return true;
  }

 private:
  static void check(const HurwitzSeries& a, const HurwitzSeries& b) {
    if (a.lambda_ != b.lambda_)
      throw Error(ErrorCode::WeightMismatch, "series of weights " + a.lambda_.get_str() + " and " +
                                                 b.lambda_.get_str());
  }

  std::vector<R> v_;
  Rational lambda_;
};

template <class R>
HurwitzSeries<R> hurwitz_product(const HurwitzSeries<R>& f, const HurwitzSeries<R>& g) {
  return f * g;
}

template <class R>
HurwitzSeries<R> hurwitz_derivation(const HurwitzSeries<R>& f) {
  return f.derivation();
}

/// A member of the constrained subalgebra, determined by f(0).
template <class R>
class ConstrainedSeries {
 public:
  ConstrainedSeries(R seed, Rational lambda) : seed_(std::move(seed)), lambda_(std::move(lambda)) {
    require_weight(lambda_);
  }

  const R& seed() const noexcept { return seed_; }
  const Rational& lambda() const noexcept { return lambda_; }

  /// f(0..n-1) with f(k) = (-L^-1)^k f(0).
  HurwitzSeries<R> window(std::size_t n) const {
    std::vector<R> v;
    R cur = seed_;
    Rational m = -1 / lambda_;
    for (std::size_t k = 0; k < n; ++k) {
      v.push_back(cur);
      cur = R(m) * cur;
    }
    return HurwitzSeries<R>(std::move(v), lambda_);
  }

  /// Back from a window; nullopt unless the window obeys the membership law.
  static std::optional<ConstrainedSeries> from_window(const HurwitzSeries<R>& s) {
    if (s.window() == 0 || !s.is_constrained()) return std::nullopt;
    return ConstrainedSeries(s[0], s.lambda());
  }

  friend bool operator==(const ConstrainedSeries& a, const ConstrainedSeries& b) {
    return a.lambda_ == b.lambda_ && a.seed_ == b.seed_;
  }

 private:
  R seed_;
  Rational lambda_;
};

/// pi_bar: (pi f)(0) = -L f(0), (pi f)(n) = f(n-1), computed on a window.
template <class R>
ConstrainedSeries<R> pi_bar(const ConstrainedSeries<R>& f, std::size_t window = 8) {
  auto w = f.window(window);
  std::vector<R> v{R(-f.lambda()) * w[0]};
  for (std::size_t n = 1; n < window; ++n) v.push_back(w[n - 1]);
  auto r = ConstrainedSeries<R>::from_window(HurwitzSeries<R>(std::move(v), f.lambda()));
  if (!r) throw Error(ErrorCode::Internal, "pi_bar left the constrained subalgebra");
  return *r;
}

/// d_bar: the Hurwitz derivation restricted to constrained series.
template <class R>
ConstrainedSeries<R> d_bar(const ConstrainedSeries<R>& f, std::size_t window = 8) {
  auto r = ConstrainedSeries<R>::from_window(f.window(window + 1).derivation());
  if (!r) throw Error(ErrorCode::Internal, "d_bar left the constrained subalgebra");
  return *r;
}

// ---------------------------------------------------------------------------
// Models. Each provides Element, lambda, unital(), one(), zero(), add, mul,
// scale, equal, sample, has(op) and apply(op, x).

template <class R>
struct RingModelBase {
  using Element = R;
  Rational lambda;

  explicit RingModelBase(Rational l) : lambda(std::move(l)) { require_weight(lambda); }

  bool unital() const { return true; }
  R one() const { return RingTraits<R>::one(); }
  R zero() const { return RingTraits<R>::zero(); }
  R add(const R& a, const R& b) const { return a + b; }
  R mul(const R& a, const R& b) const { return a * b; }
  R scale(const Rational& c, const R& a) const { return R(c) * a; }
  bool equal(const R& a, const R& b) const { return a == b; }
  R sample(std::mt19937_64& rng) const { return RingTraits<R>::sample(rng); }
  std::string str(const R& a) const { return RingTraits<R>::str(a); }
};

/// d(x) = -L^-1 x and P(x) = -L x.
template <class R>
struct DegenerateModel : RingModelBase<R> {
  using RingModelBase<R>::RingModelBase;
  std::string name() const { return "degenerate"; }
  bool has(const Operator* op) const { return op == op_d() || op == op_p(); }
  R apply(const Operator* op, const R& x) const {
    if (op == op_d()) return R(Rational(-1 / this->lambda)) * x;
    if (op == op_p()) return R(Rational(-this->lambda)) * x;
    throw Error(ErrorCode::InvalidArgument, "the degenerate model has no operator '" + op->name + "'");
  }
};

/// P(x) = xi x and d(x) = xi^-1 x for an invertible quasi-idempotent xi,
/// that is xi^2 = -L xi.
struct XiModel : RingModelBase<Rational> {
  Rational xi;

  XiModel(Rational l, std::optional<Rational> x = std::nullopt) : RingModelBase(std::move(l)) {
    xi = x ? *x : Rational(-lambda);
    if (sgn(xi) == 0) throw Error(ErrorCode::InvalidArgument, "xi must be invertible");
    if (xi * xi != -lambda * xi)
      throw Error(ErrorCode::InvalidArgument, "xi = " + xi.get_str() + " is not quasi-idempotent of weight " +
                                                  lambda.get_str());
  }
  std::string name() const { return "xi"; }
  bool has(const Operator* op) const { return op == op_d() || op == op_p(); }
  Rational apply(const Operator* op, const Rational& x) const {
    if (op == op_p()) return xi * x;
    if (op == op_d()) return x / xi;
    throw Error(ErrorCode::InvalidArgument, "the xi model has no operator '" + op->name + "'");
  }
};

/// Left multiplication P(x) = a x. It obeys the Nijenhuis identity for every
/// a but is quasi-idempotent only when a^2 = -L a. It has no d.
struct LeftMultiplicationModel : RingModelBase<Rational> {
  Rational a;
  LeftMultiplicationModel(Rational l, Rational factor) : RingModelBase(std::move(l)), a(std::move(factor)) {}
  std::string name() const { return "left-multiplication"; }
  bool has(const Operator* op) const { return op == op_p(); }
  Rational apply(const Operator* op, const Rational& x) const {
    if (op == op_p()) return a * x;
    throw Error(ErrorCode::InvalidArgument, "left multiplication only provides p");
  }
};

/// The constrained subalgebra with d_bar and pi_bar. It has no unit.
template <class R>
struct HurwitzModel {
  using Element = ConstrainedSeries<R>;
  Rational lambda;
  std::size_t window = 8;

  explicit HurwitzModel(Rational l, std::size_t n = 8) : lambda(std::move(l)), window(n) {
    require_weight(lambda);
    if (window < 2) throw Error(ErrorCode::InvalidArgument, "Hurwitz window must be at least 2");
  }

  std::string name() const { return "hurwitz"; }
  bool unital() const { return false; }
  Element one() const {
    throw Error(ErrorCode::NonunitalModel, "the constrained Hurwitz subalgebra has no unit");
  }
  Element zero() const { return Element(RingTraits<R>::zero(), lambda); }
  Element add(const Element& a, const Element& b) const { return Element(a.seed() + b.seed(), lambda); }
  Element mul(const Element& a, const Element& b) const {
    auto r = Element::from_window(a.window(window) * b.window(window));
    if (!r) throw Error(ErrorCode::Internal, "product left the constrained subalgebra");
    return *r;
  }
  Element scale(const Rational& c, const Element& a) const { return Element(R(c) * a.seed(), lambda); }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  Element sample(std::mt19937_64& rng) const { return Element(RingTraits<R>::sample(rng), lambda); }
  std::string str(const Element& a) const { return "seed " + RingTraits<R>::str(a.seed()); }
  bool has(const Operator* op) const { return op == op_d() || op == op_p(); }
  Element apply(const Operator* op, const Element& x) const {
    if (op == op_d()) return d_bar(x, window);
    if (op == op_p()) return pi_bar(x, window);
    throw Error(ErrorCode::InvalidArgument, "the Hurwitz model has no operator '" + op->name + "'");
  }
};

// ---------------------------------------------------------------------------
// Evaluation.

namespace detail {

template <class Model>
std::optional<typename Model::Element> evaluate_word(const Word& w, const Model& m,
                                                     const std::map<std::string, typename Model::Element>& env) {
  std::optional<typename Model::Element> acc;
  auto times = [&](const typename Model::Element& x) { acc = acc ? m.mul(*acc, x) : x; };
  for (const auto& f : w.ops()) {
    if (!m.has(f.op)) throw Error(ErrorCode::InvalidArgument, m.name() + " model has no operator '" + f.op->name + "'");
    auto inner = evaluate_word(f.arg, m, env);
    times(m.apply(f.op, inner ? *inner : m.one()));
  }
  for (const Symbol* y : w.letters()) {
    auto it = env.find(y->name);
    if (it == env.end()) throw Error(ErrorCode::MissingAssignment, "no value assigned to '" + y->name + "'");
    times(it->second);
  }
  return acc;  // nullopt for the unit word
}

}  // namespace detail

/// The algebra map sending letters to their assigned values, d and p to the
/// model's operators, and L to the model's weight.
template <class Model>
typename Model::Element evaluate_in_model(const Polynomial& f, const Model& m,
                                          const std::map<std::string, typename Model::Element>& env) {
  typename Model::Element total = m.zero();
  for (const auto& [w, c] : f) {
    Rational k = c.specialize(m.lambda);
    auto v = detail::evaluate_word(w, m, env);
    total = m.add(total, m.scale(k, v ? *v : m.one()));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Axiom checks.

struct AxiomResult {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::size_t failures = 0;
  std::string witness;  // first counterexample, if any
};

struct AxiomReport {
  std::string model;
  Rational lambda;
  std::size_t samples = 0;
  std::vector<AxiomResult> results;
  std::optional<bool> degenerate;  // d(1) != 0; unset without a unit or a d

  const AxiomResult* find(std::string_view name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
  bool pass(std::string_view name) const {
    auto r = find(name);
    return r && r->applicable && r->pass;
  }
};

/// Leibniz (weight L), Rota-Baxter, quasi-idempotency of P and d, d o P = id,
/// Nijenhuis, and quasi-idempotency of -L id - P, on random samples.
template <class Model>
AxiomReport check_axioms(const Model& m, std::size_t samples, std::uint64_t seed = 1) {
  require_weight(m.lambda);
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  using E = typename Model::Element;
  const Rational lam = m.lambda;
  const bool has_d = m.has(op_d()), has_p = m.has(op_p());
  auto d = [&](const E& x) { return m.apply(op_d(), x); };
  auto p = [&](const E& x) { return m.apply(op_p(), x); };
  auto pt = [&](const E& x) { return m.add(m.scale(-lam, x), m.scale(-1, p(x))); };

  struct Law {
    std::string name;
    bool applicable;
    std::function<std::pair<E, E>(const E&, const E&)> sides;
  };
  std::vector<Law> laws{
      {"leibniz", has_d,
       [&](const E& x, const E& y) {
         E rhs = m.add(m.add(m.mul(d(x), y), m.mul(x, d(y))), m.scale(lam, m.mul(d(x), d(y))));
         return std::pair{d(m.mul(x, y)), rhs};
       }},
      {"rota_baxter", has_p,
       [&](const E& x, const E& y) {
         E rhs = m.add(m.add(p(m.mul(x, p(y))), p(m.mul(p(x), y))), m.scale(lam, p(m.mul(x, y))));
         return std::pair{m.mul(p(x), p(y)), rhs};
       }},
      {"p_quasi_idempotent", has_p, [&](const E& x, const E&) { return std::pair{p(p(x)), m.scale(-lam, p(x))}; }},
      {"d_quasi_idempotent", has_d,
       [&](const E& x, const E&) { return std::pair{d(d(x)), m.scale(Rational(-1 / lam), d(x))}; }},
      {"d_after_p", has_d && has_p, [&](const E& x, const E&) { return std::pair{d(p(x)), x}; }},
      {"nijenhuis", has_p,
       [&](const E& x, const E& y) {
         E rhs = m.add(m.add(p(m.mul(x, p(y))), p(m.mul(p(x), y))), m.scale(-1, p(p(m.mul(x, y)))));
         return std::pair{m.mul(p(x), p(y)), rhs};
       }},
      {"p_tilde_quasi_idempotent", has_p,
       [&](const E& x, const E&) { return std::pair{pt(pt(x)), m.scale(-lam, pt(x))}; }},
  };

  AxiomReport report;
  report.model = m.name();
  report.lambda = lam;
  report.samples = samples;
  std::mt19937_64 rng(seed);
  for (const auto& law : laws) report.results.push_back({law.name, law.applicable, law.applicable, 0, ""});
  for (std::size_t s = 0; s < samples; ++s) {
    E x = m.sample(rng), y = m.sample(rng);
    for (std::size_t k = 0; k < laws.size(); ++k) {
      if (!laws[k].applicable) continue;
      auto [lhs, rhs] = laws[k].sides(x, y);
      if (!m.equal(lhs, rhs)) {
        auto& r = report.results[k];
        if (r.failures++ == 0) r.witness = "x = " + m.str(x) + ", y = " + m.str(y);
        r.pass = false;
      }
    }
  }
  if (has_d && m.unital()) report.degenerate = !m.equal(d(m.one()), m.zero());
  return report;
}

}  // namespace opalg
