#pragma once

// Rule schemas, commutative pattern matching and reduction to normal form.
//
// A rule's leading monomial is a pattern word in which variables are letters
// whose names start with '?'. Patterns are linear: each variable occurs once,
// at most one variable sits at any multiset level, and none at the top level.
// A variable at a level absorbs whatever factors the other pattern factors
// leave over there, so matching is a choice of sub-multiset at every level.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "opalg/parse.hpp"
#include "opalg/poly.hpp"

namespace opalg {

using Binding = std::map<const Symbol*, Word>;

inline const Symbol* variable_symbol(std::string_view name) {
  return letter_symbol(std::string("?") + std::string(name));
}

struct RuleSchema {
  std::string name;
  std::vector<const Symbol*> variables;  // '?'-symbols, in declaration order
  Polynomial relation;                   // monic, leading monomial == lhs
  Word lhs;
  Polynomial rhs;                        // lhs - relation

  Polynomial instantiate(const Binding& b) const { return substitute_letters(relation, b); }
  Word lhs_at(const Binding& b) const { return substitute_letters(lhs, b); }
  Polynomial rhs_at(const Binding& b) const { return substitute_letters(rhs, b); }
};

struct MatchResult {
  StarContext context;
  Binding binding;
  const RuleSchema* rule = nullptr;
};

namespace detail {

inline void check_pattern_level(const Word& level, bool top, const std::string& rule) {
  int vars = 0;
  for (const Symbol* y : level.letters())
    if (is_variable(y)) ++vars;
  if (top && vars > 0)
    throw Error(ErrorCode::InvalidRuleSet, "rule '" + rule + "': a variable may not stand at the top level");
  if (vars > 1)
    throw Error(ErrorCode::InvalidRuleSet,
                "rule '" + rule + "': more than one variable in the argument '" + format(level) + "'");
  for (const auto& f : level.ops()) check_pattern_level(f.arg, false, rule);
}

inline void count_variables(const Word& w, std::map<const Symbol*, int>& counts) {
  for (const Symbol* y : w.letters())
    if (is_variable(y)) ++counts[y];
  for (const auto& f : w.ops()) count_variables(f.arg, counts);
}

using LevelMatch = std::pair<Binding, Word>;  // binding, leftover factors

void match_level(const Word& pat, const Word& subj, const Binding& base, bool allow_leftover,
                 std::vector<LevelMatch>& out);

struct LevelMatcher {
  const Word& pat;
  const Word& subj;
  bool allow_leftover;
  const Symbol* rest = nullptr;
  std::vector<const Symbol*> remaining_letters;
  std::vector<bool> used;
  std::vector<LevelMatch>& out;

  void assign(std::size_t i, const Binding& b) {
    const auto& pops = pat.ops();
    const auto& sops = subj.ops();
    if (i == pops.size()) {
      finish(b);
      return;
    }
    for (std::size_t j = 0; j < sops.size(); ++j) {
      if (used[j] || sops[j].op != pops[i].op) continue;
      // Equal subject factors are interchangeable: always take the first free one.
      if (j > 0 && !used[j - 1] && sops[j] == sops[j - 1]) continue;
      if (sops[j].arg.deg_omega() < pops[i].arg.deg_omega()) continue;
      std::vector<LevelMatch> inner;
      match_level(pops[i].arg, sops[j].arg, b, false, inner);
      if (inner.empty()) continue;
      used[j] = true;
      for (const auto& [b2, unused] : inner) assign(i + 1, b2);
      used[j] = false;
    }
  }

  void finish(const Binding& b) {
    std::vector<Word::OpFactor> ops;
    for (std::size_t j = 0; j < subj.ops().size(); ++j)
      if (!used[j]) ops.push_back(subj.ops()[j]);
    Word leftover = Word::from_parts(std::move(ops), remaining_letters);
    if (rest) {
      Binding b2 = b;
      b2[rest] = leftover;
      out.emplace_back(std::move(b2), Word());
    } else if (allow_leftover || leftover.is_unit()) {
      out.emplace_back(b, leftover);
    }
  }
};

inline void match_level(const Word& pat, const Word& subj, const Binding& base, bool allow_leftover,
                        std::vector<LevelMatch>& out) {
  if (pat.ops().size() > subj.ops().size()) return;
  // Constant letters must be present; they are removed deterministically.
  std::vector<const Symbol*> letters = subj.letters();
  const Symbol* rest = nullptr;
  for (const Symbol* y : pat.letters()) {
    if (is_variable(y)) {
      rest = y;
      continue;
    }
    auto it = std::find(letters.begin(), letters.end(), y);
    if (it == letters.end()) return;
    letters.erase(it);
  }
  if (!rest && !allow_leftover && (!letters.empty() || subj.ops().size() != pat.ops().size())) return;
  LevelMatcher m{pat, subj, allow_leftover, rest, std::move(letters), std::vector<bool>(subj.ops().size()), out};
  m.assign(0, base);
}

inline bool binding_less(const Binding& a, const Binding& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first->name < ib->first->name;
    if (auto c = compare(ia->second, ib->second); c != 0) return c < 0;
  }
  return a.size() < b.size();
}

}  // namespace detail

/// Every (context, binding) with q|_{lhs(binding)} = m; sorted, duplicate-free.
inline std::vector<MatchResult> match_rule(const Word& m, const RuleSchema& r) {
  std::vector<MatchResult> out;
  const Word hole = Word::letter(star_symbol());
  std::function<Word(const Word&)> identity = [](const Word& x) { return x; };
  detail::visit_levels(m, identity, [&](const Word& level, const std::function<Word(const Word&)>& rebuild) {
    if (level.breadth() < r.lhs.breadth()) return;
    if (level.deg_omega() < r.lhs.deg_omega()) return;
    std::vector<detail::LevelMatch> found;
    detail::match_level(r.lhs, level, {}, true, found);
    for (auto& [b, leftover] : found) out.push_back({StarContext(rebuild(leftover * hole)), std::move(b), &r});
  });
  auto less = [](const MatchResult& a, const MatchResult& b) {
    if (auto c = compare(a.context.word(), b.context.word()); c != 0) return c < 0;
    return detail::binding_less(a.binding, b.binding);
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end(),
                        [&](const MatchResult& a, const MatchResult& b) { return !less(a, b) && !less(b, a); }),
            out.end());
  return out;
}

namespace detail {

inline void collect_operators(const Word& w, std::vector<const Operator*>& out) {
  for (const auto& f : w.ops()) {
    if (std::find(out.begin(), out.end(), f.op) == out.end()) out.push_back(f.op);
    collect_operators(f.arg, out);
  }
}

// Instantiations used to test that a rule decreases: each variable in turn
// takes one of these words.
inline std::vector<Word> order_samples(const Polynomial& relation) {
  std::vector<const Operator*> ops;
  for (const auto& [w, c] : relation) collect_operators(w, ops);
  Word a = letter("_a"), b = letter("_b");
  std::vector<Word> s{Word(), a, a * b};
  for (const Operator* op : ops) {
    s.push_back(Word::apply(op, a));
    s.push_back(Word::apply(op, a) * b);
    s.push_back(Word::apply(op, Word::apply(op, a)));
  }
  return s;
}

}  // namespace detail

/// Builds a rule from a relation in which the named letters act as variables.
/// Throws InvalidRuleSet unless the relation is monic, its leading monomial is
/// a linear pattern, and every sampled instantiation keeps it leading.
inline RuleSchema make_rule(std::string name, const std::vector<std::string>& variables, const Polynomial& relation,
                            const std::vector<Word>& extra_samples = {}) {
  if (relation.is_zero()) throw Error(ErrorCode::InvalidRuleSet, "rule '" + name + "' is zero");
  std::map<const Symbol*, Word> to_var;
  RuleSchema r;
  r.name = std::move(name);
  for (const auto& v : variables) {
    const Symbol* var = variable_symbol(v);
    if (std::find(r.variables.begin(), r.variables.end(), var) != r.variables.end())
      throw Error(ErrorCode::InvalidRuleSet, "rule '" + r.name + "' declares variable '" + v + "' twice");
    r.variables.push_back(var);
    to_var.emplace(letter_symbol(v), Word::letter(var));
  }
  r.relation = substitute_letters(relation, to_var);
  auto [lead, c] = r.relation.leading();
  if (!c.is_one())
    throw Error(ErrorCode::InvalidRuleSet,
                "rule '" + r.name + "' is not monic: leading coefficient " + to_string(c));
  r.lhs = lead;
  r.rhs = Polynomial(lead) - r.relation;
  detail::check_pattern_level(r.lhs, true, r.name);
  std::map<const Symbol*, int> counts;
  detail::count_variables(r.lhs, counts);
  for (const Symbol* v : r.variables) {
    if (counts[v] != 1)
      throw Error(ErrorCode::InvalidRuleSet, "rule '" + r.name + "': variable '" + display_name(v) +
                                                 "' must occur exactly once in the leading monomial " +
                                                 format(r.lhs));
  }
  for (const auto& [w, unused] : r.rhs) {
    std::map<const Symbol*, int> rc;
    detail::count_variables(w, rc);
    for (const auto& [v, n] : rc)
      if (!counts.count(v))
        throw Error(ErrorCode::InvalidRuleSet,
                    "rule '" + r.name + "': variable '" + display_name(v) + "' does not occur in the leading monomial");
  }
  // Order compatibility on sampled instantiations.
  std::vector<Word> samples = detail::order_samples(r.relation);
  samples.insert(samples.end(), extra_samples.begin(), extra_samples.end());
  std::size_t n = r.variables.size();
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Binding b;
    for (std::size_t i = 0; i < n; ++i) b[r.variables[i]] = samples[idx[i]];
    Word top = r.lhs_at(b);
    for (const auto& [w, unused] : r.rhs_at(b))
      if (compare(w, top) >= 0)
        throw Error(ErrorCode::InvalidRuleSet, "rule '" + r.name + "' is not order-compatible: " + format(w) +
                                                   " is not below " + format(top));
    std::size_t k = 0;
    while (k < n && ++idx[k] == samples.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return r;
}

/// A named list of rules. `certified` is set only by a passing verification.
/// Copies share the rule objects, so rule pointers held by matches and traces
/// stay valid while any copy is alive.
struct Theory {
  std::string name;
  std::vector<std::shared_ptr<const RuleSchema>> rules;
  bool certified = false;

  void add(RuleSchema r) { rules.push_back(std::make_shared<const RuleSchema>(std::move(r))); }

  const RuleSchema* find(std::string_view rule) const {
    for (const auto& r : rules)
      if (r->name == rule) return r.get();
    return nullptr;
  }
};

enum class Strategy { LeadingFirst, RandomRedex };

struct TraceStep {
  const RuleSchema* rule = nullptr;
  StarContext context;
  Binding binding;
  Scalar coefficient;   // coefficient of the rewritten monomial
  Word monomial;        // q|_{lhs(binding)}
  Polynomial replacement;  // q|_{rhs(binding)}

  /// The certificate term c * q|_{s(binding)}.
  Polynomial certificate_term() const { return substitute(context, rule->instantiate(binding)).scaled(coefficient); }
};

/// Sum of the certificate terms: equals f - normal_form(f) for a full trace.
inline Polynomial replay(const std::vector<TraceStep>& trace) {
  Polynomial r;
  for (const auto& s : trace) r += s.certificate_term();
  return r;
}

struct RewriteOptions {
  std::uint64_t max_steps = 1'000'000;
};

/// Reduction engine for one theory. Holds per-instance caches, so give each
/// thread its own Rewriter.
class Rewriter {
 public:
  explicit Rewriter(Theory theory, RewriteOptions opts = {}) : theory_(std::move(theory)), opts_(opts) {}
  Rewriter(const Rewriter&) = delete;
  Rewriter& operator=(const Rewriter&) = delete;

  const Theory& theory() const noexcept { return theory_; }

  /// All matches of every rule in m, rules in declaration order.
  const std::vector<MatchResult>& matches(const Word& m) {
    auto it = all_.find(m);
    if (it != all_.end()) return it->second;
    std::vector<MatchResult> ms;
    if (!m.is_unit())
      for (const auto& r : theory_.rules) {
        auto part = match_rule(m, *r);
        ms.insert(ms.end(), part.begin(), part.end());
      }
    return all_.emplace(m, std::move(ms)).first->second;
  }

  bool is_irreducible(const Word& m) { return first(m) == nullptr; }

  /// One rewrite of one monomial; false if f is already irreducible.
  std::pair<Polynomial, bool> reduce_once(const Polynomial& f, Strategy s = Strategy::LeadingFirst,
                                          std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    Polynomial g = f;
    TraceStep step;
    bool done = s == Strategy::LeadingFirst ? step_leading(g, &step) : step_random(g, rng, &step);
    return {g, done};
  }

  /// Normal form. With a trace requested or a random strategy, reductions are
  /// performed one at a time; otherwise normal forms of monomials are memoised.
  Polynomial normal_form(const Polynomial& f, Strategy s = Strategy::LeadingFirst, std::uint64_t seed = 0,
                         std::vector<TraceStep>* trace = nullptr) {
    in_progress_.clear();
    if (s == Strategy::LeadingFirst && !trace) {
      Polynomial r;
      std::uint64_t steps = 0;
      for (const auto& [w, c] : f) r += nf_monomial(w, steps, 0).scaled(c);
      return r;
    }
    Polynomial g = f;
    std::mt19937_64 rng(seed);
    std::uint64_t steps = 0;
    TraceStep step;
    TraceStep* sp = trace ? &step : nullptr;
    if (s == Strategy::LeadingFirst) {
      // Monomials above the last rewritten one are already irreducible.
      auto it = g.begin();
      while (it != g.end()) {
        Word m = it->first;
        const Redex* rx = first(m);
        if (!rx) {
          ++it;
          continue;
        }
        apply(g, m, *rx, sp);
        if (trace) trace->push_back(step);
        bump(steps);
        it = g.terms().upper_bound(m);
      }
      return g;
    }
    while (step_random(g, rng, sp)) {
      if (trace) trace->push_back(step);
      bump(steps);
    }
    return g;
  }

  /// f - NF(f) lies in the ideal; membership is decided by NF = 0 only when
  /// the theory is a certified Groebner-Shirshov basis.
  bool ideal_member(const Polynomial& f) {
    if (!theory_.certified)
      throw Error(ErrorCode::UnverifiedTheory, "theory '" + theory_.name +
                                                   "' has not passed verification; membership via normal forms "
                                                   "would be one-sided");
    return normal_form(f).is_zero();
  }

 private:
  struct Redex {
    MatchResult match;
    Polynomial replacement;
  };

  void bump(std::uint64_t& steps) const {
    if (++steps > opts_.max_steps)
      throw Error(ErrorCode::StepLimitExceeded, "reduction exceeded " + std::to_string(opts_.max_steps) + " steps");
  }

  const Redex* first(const Word& m) {
    auto it = first_.find(m);
    if (it != first_.end()) return it->second ? &*it->second : nullptr;
    std::optional<Redex> rx;
    const auto& ms = matches(m);
    if (!ms.empty()) rx = make_redex(ms.front());
    const auto& slot = first_.emplace(m, std::move(rx)).first->second;
    return slot ? &*slot : nullptr;
  }

  static Redex make_redex(const MatchResult& mr) {
    return Redex{mr, substitute(mr.context, mr.rule->rhs_at(mr.binding))};
  }

  static void apply(Polynomial& g, const Word& m, const Redex& rx, TraceStep* step) {
    Scalar c = g.coefficient(m);
    g.erase(m);
    g += rx.replacement.scaled(c);
    if (step) *step = TraceStep{rx.match.rule, rx.match.context, rx.match.binding, c, m, rx.replacement};
  }

  bool step_leading(Polynomial& g, TraceStep* step) {
    for (const auto& [m, c] : g) {
      if (const Redex* rx = first(m)) {
        Word w = m;
        apply(g, w, *rx, step);
        return true;
      }
    }
    return false;
  }

  bool step_random(Polynomial& g, std::mt19937_64& rng, TraceStep* step) {
    std::vector<std::pair<Word, const MatchResult*>> pool;
    for (const auto& [m, c] : g)
      for (const auto& mr : matches(m)) pool.emplace_back(m, &mr);
    if (pool.empty()) return false;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto [m, mr] = pool[pick(rng)];
    apply(g, m, make_redex(*mr), step);
    return true;
  }

  const Polynomial& nf_monomial(const Word& m, std::uint64_t& steps, std::size_t depth) {
    if (auto it = nf_.find(m); it != nf_.end()) return it->second;
    const Redex* rx = first(m);
    if (!rx) return nf_.emplace(m, Polynomial(m)).first->second;
    if (depth > 20000 || !in_progress_.insert(m).second)
      throw Error(ErrorCode::StepLimitExceeded, "rewriting of " + format(m) + " does not terminate");
    bump(steps);
    Polynomial r;
    Polynomial rep = rx->replacement;
    for (const auto& [w, c] : rep) r += nf_monomial(w, steps, depth + 1).scaled(c);
    in_progress_.erase(m);
    return nf_.emplace(m, std::move(r)).first->second;
  }

  Theory theory_;
  RewriteOptions opts_;
  std::unordered_map<Word, std::vector<MatchResult>> all_;
  std::unordered_map<Word, std::optional<Redex>> first_;
  std::unordered_map<Word, Polynomial> nf_;
  std::unordered_set<Word> in_progress_;
};

// Free-function forms.

inline std::pair<Polynomial, bool> reduce_once(const Polynomial& f, const Theory& t,
                                               Strategy s = Strategy::LeadingFirst, std::uint64_t seed = 0) {
  return Rewriter(t).reduce_once(f, s, seed);
}

inline Polynomial normal_form(const Polynomial& f, const Theory& t, Strategy s = Strategy::LeadingFirst,
                              std::uint64_t seed = 0, std::vector<TraceStep>* trace = nullptr) {
  return Rewriter(t).normal_form(f, s, seed, trace);
}

inline bool is_irreducible(const Word& m, const Theory& t) { return Rewriter(t).is_irreducible(m); }

inline bool ideal_member(const Polynomial& f, const Theory& t) { return Rewriter(t).ideal_member(f); }

}  // namespace opalg
