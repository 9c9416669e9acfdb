#pragma once

// Compositions, triviality and desk-scale Groebner-Shirshov verification, plus
// enumeration of irreducible words.
//
// Verification works on the rule patterns. For every ordered pair (f, g) it
// finds the ways the leading monomials can overlap:
//
//   intersection  some top-level prime factors of f and g unify;
//   structural    g's leading monomial sits at a level of f's pattern and
//                 unifies with at least one pattern factor there;
//   inner         g's leading monomial lies inside a variable of f, wrapped in
//                 a context drawn from a bounded family.
//
// Remaining variables become fresh generators (and, optionally, the unit) and
// each concrete composition is reduced to normal form. This is evidence at a
// fixed scale, not a proof for every context.

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <mutex>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "opalg/parse.hpp"
#include "opalg/rewrite.hpp"
#include "opalg/theory.hpp"

namespace opalg {

enum class CompositionKind { Intersection, Including };
enum class Family { Intersection, Structural, Inner };

constexpr std::string_view name(CompositionKind k) noexcept {
  return k == CompositionKind::Intersection ? "intersection" : "including";
}
constexpr std::string_view name(Family f) noexcept {
  switch (f) {
    case Family::Intersection: return "intersection";
    case Family::Structural: return "structural";
    case Family::Inner: return "inner";
  }
  return "?";
}

struct CompositionReport {
  std::string rule_f;
  std::string rule_g;
  CompositionKind kind = CompositionKind::Including;
  Family family = Family::Inner;
  Word ambiguity;
  Polynomial f;
  Polynomial g;
  std::optional<StarContext> context;  // including
  Word mu;                             // intersection: omega = f * mu = nu * g
  Word nu;
  Polynomial composition;
  Polynomial normal_form;
  bool trivial = false;
  std::vector<TraceStep> trace;
};

// ---------------------------------------------------------------------------
// Compositions of concrete polynomials.

namespace detail {

inline std::vector<Word> prime_factors(const Word& w) {
  std::vector<Word> out;
  for (const auto& f : w.ops()) out.push_back(Word::from_parts({f}, {}));
  for (const Symbol* y : w.letters()) out.push_back(Word::letter(y));
  return out;
}

inline Word product_of(const std::vector<Word>& ws) {
  Word r;
  for (const auto& w : ws) r = r * w;
  return r;
}

}  // namespace detail

/// (f, g)^{mu,nu}_omega for every omega = f̄ mu = nu ḡ inside the breadth window.
inline std::vector<CompositionReport> intersection_compositions(const Polynomial& f, const Polynomial& g) {
  auto [fb, fc] = f.leading();
  auto [gb, gc] = g.leading();
  if (!fc.is_one() || !gc.is_one()) throw Error(ErrorCode::InvalidArgument, "compositions need monic polynomials");
  std::vector<CompositionReport> out;
  auto gp = detail::prime_factors(gb);
  std::size_t limit = std::min(fb.breadth(), gb.breadth());
  // Sub-multisets B of ḡ's factors; equal factors are chosen as prefixes of their run.
  std::size_t n = gp.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t k = static_cast<std::size_t>(std::popcount(mask));
    if (k >= limit) continue;
    bool canonical = true;
    std::vector<Word> part;
    for (std::size_t i = 0; i < n; ++i) {
      bool in = mask >> i & 1;
      if (in && i > 0 && gp[i] == gp[i - 1] && !(mask >> (i - 1) & 1)) canonical = false;
      if (in) part.push_back(gp[i]);
    }
    if (!canonical) continue;
    Word overlap = detail::product_of(part);
    auto nu = divide_top(fb, overlap);
    if (!nu) continue;
    Word mu = *divide_top(gb, overlap);
    CompositionReport r;
    r.kind = CompositionKind::Intersection;
    r.family = Family::Intersection;
    r.ambiguity = fb * mu;
    r.f = f;
    r.g = g;
    r.mu = mu;
    r.nu = *nu;
    r.composition = f.times_word(mu) - g.times_word(*nu);
    out.push_back(std::move(r));
  }
  return out;
}

/// (f, g)^q_omega for every context q with q|_ḡ = f̄.
inline std::vector<CompositionReport> including_compositions(const Polynomial& f, const Polynomial& g) {
  auto [fb, fc] = f.leading();
  auto [gb, gc] = g.leading();
  if (!fc.is_one() || !gc.is_one()) throw Error(ErrorCode::InvalidArgument, "compositions need monic polynomials");
  std::vector<CompositionReport> out;
  if (gb.is_unit()) return out;
  for (auto& q : find_occurrences(fb, gb)) {
    CompositionReport r;
    r.kind = CompositionKind::Including;
    r.family = Family::Inner;
    r.ambiguity = fb;
    r.f = f;
    r.g = g;
    r.composition = f - substitute(q, g);
    r.context = std::move(q);
    out.push_back(std::move(r));
  }
  return out;
}

struct TrivialityResult {
  bool trivial = false;
  Polynomial normal_form;
  std::vector<TraceStep> trace;
};

/// Reduces h and records the steps; trivial iff the normal form is 0.
inline TrivialityResult check_triviality(const Polynomial& h, Rewriter& rw, const Word& omega,
                                         bool with_trace = true) {
  for (const auto& [w, c] : h)
    if (compare(w, omega) >= 0)
      throw Error(ErrorCode::MonomialNotBelowAmbiguity,
                  "monomial " + format(w) + " is not below the ambiguity " + format(omega));
  TrivialityResult r;
  if (with_trace) {
    r.normal_form = rw.normal_form(h, Strategy::LeadingFirst, 0, &r.trace);
    for (const auto& s : r.trace)
      if (compare(s.monomial, omega) >= 0)
        throw Error(ErrorCode::Internal, "reduction step above the ambiguity " + format(omega));
  } else {
    r.normal_form = rw.normal_form(h);
  }
  r.trivial = r.normal_form.is_zero();
  return r;
}

inline TrivialityResult check_triviality(const Polynomial& h, const Theory& t, const Word& omega) {
  Rewriter rw(t);
  return check_triviality(h, rw, omega);
}

// ---------------------------------------------------------------------------
// Unification of linear patterns.

namespace detail {

struct Level {
  std::vector<Word> items;  // prime factors other than the variable
  const Symbol* rest = nullptr;
};

inline Level split_level(const Word& w) {
  Level l;
  for (const auto& f : w.ops()) l.items.push_back(Word::from_parts({f}, {}));
  for (const Symbol* y : w.letters()) {
    if (is_variable(y)) l.rest = y;
    else l.items.push_back(Word::letter(y));
  }
  return l;
}

class Unifier {
 public:
  Word fresh() { return Word::letter(variable_symbol("t" + std::to_string(counter_++))); }

  /// Most general unifiers of two prime patterns, extending s.
  std::vector<Binding> unify_prime(const Word& a, const Word& b, const Binding& s) {
    if (!a.letters().empty() || !b.letters().empty()) {
      if (a == b) return {s};
      return {};
    }
    const auto& fa = a.ops().front();
    const auto& fb = b.ops().front();
    if (fa.op != fb.op) return {};
    return unify_level(fa.arg, fb.arg, s);
  }

  std::vector<Binding> unify_level(const Word& p, const Word& q, const Binding& s) {
    Level lp = split_level(p), lq = split_level(q);
    std::vector<Binding> out;
    std::vector<bool> used(lq.items.size());
    std::vector<Word> left_p;
    walk(lp, lq, 0, used, left_p, s, out);
    return out;
  }

 private:
  void walk(const Level& lp, const Level& lq, std::size_t i, std::vector<bool>& used, std::vector<Word>& left_p,
            const Binding& s, std::vector<Binding>& out) {
    if (i == lp.items.size()) {
      std::vector<Word> left_q;
      for (std::size_t j = 0; j < lq.items.size(); ++j)
        if (!used[j]) left_q.push_back(lq.items[j]);
      if (!left_q.empty() && !lp.rest) return;
      if (!left_p.empty() && !lq.rest) return;
      Binding b = s;
      if (lp.rest && lq.rest) {
        Word t = fresh();
        b[lp.rest] = product_of(left_q) * t;
        b[lq.rest] = product_of(left_p) * t;
      } else if (lp.rest) {
        b[lp.rest] = product_of(left_q);
      } else if (lq.rest) {
        b[lq.rest] = product_of(left_p);
      }
      out.push_back(std::move(b));
      return;
    }
    for (std::size_t j = 0; j < lq.items.size(); ++j) {
      if (used[j]) continue;
      if (j > 0 && !used[j - 1] && lq.items[j] == lq.items[j - 1]) continue;
      for (auto& b : unify_prime(lp.items[i], lq.items[j], s)) {
        used[j] = true;
        walk(lp, lq, i + 1, used, left_p, b, out);
        used[j] = false;
      }
    }
    if (lq.rest) {
      left_p.push_back(lp.items[i]);
      walk(lp, lq, i + 1, used, left_p, s, out);
      left_p.pop_back();
    }
  }

  int counter_ = 0;
};

/// Applies a unifier whose images may mention other bound variables.
inline Word resolve(const Word& w, const Binding& s) {
  Word cur = w;
  for (int round = 0; round < 64; ++round) {
    Word next = substitute_letters(cur, s);
    if (next == cur) return cur;
    cur = next;
  }
  throw Error(ErrorCode::Internal, "unifier does not resolve");
}

inline Polynomial resolve(const Polynomial& f, const Binding& s) {
  Polynomial r;
  for (const auto& [w, c] : f) r.add_term(resolve(w, s), c);
  return r;
}

inline void collect_variables(const Word& w, std::vector<const Symbol*>& out) {
  std::vector<const Symbol*> all;
  collect_letters(w, all);
  for (const Symbol* y : all)
    if (is_variable(y) && std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
}

/// A rule with its variables renamed apart: ?f0, ?f1, ... or ?g0, ?g1, ...
struct Renamed {
  const RuleSchema* rule;
  Polynomial relation;
  Word lhs;
};

inline Renamed rename(const RuleSchema& r, char side) {
  Binding b;
  for (std::size_t i = 0; i < r.variables.size(); ++i)
    b[r.variables[i]] = Word::letter(variable_symbol(std::string(1, side) + std::to_string(i)));
  return Renamed{&r, substitute_letters(r.relation, b), substitute_letters(r.lhs, b)};
}

// A symbolic ambiguity before its free variables are instantiated.
struct Candidate {
  std::size_t i, j;
  Family family;
  Binding sigma;
  Word omega;
  std::optional<Word> context;  // including
  Word mu, nu;                  // intersection
};

inline std::vector<Candidate> intersection_candidates(const Renamed& f, const Renamed& g, std::size_t i,
                                                      std::size_t j) {
  std::vector<Candidate> out;
  auto fp = prime_factors(f.lhs), gp = prime_factors(g.lhs);
  std::size_t limit = std::min(fp.size(), gp.size());
  Unifier u;
  std::vector<int> assign(fp.size(), -1);  // f factor -> g factor
  std::vector<bool> used(gp.size());
  std::function<void(std::size_t, std::size_t, const Binding&)> walk = [&](std::size_t a, std::size_t k,
                                                                           const Binding& s) {
    if (a == fp.size()) {
      if (k == 0 || k >= limit) return;
      std::vector<Word> rest_f, rest_g;
      for (std::size_t x = 0; x < fp.size(); ++x)
        if (assign[x] < 0) rest_f.push_back(fp[x]);
      for (std::size_t y = 0; y < gp.size(); ++y)
        if (!used[y]) rest_g.push_back(gp[y]);
      Candidate c{i, j, Family::Intersection, s, Word(), std::nullopt, Word(), Word()};
      c.mu = resolve(product_of(rest_g), s);
      c.nu = resolve(product_of(rest_f), s);
      c.omega = resolve(f.lhs, s) * c.mu;
      out.push_back(std::move(c));
      return;
    }
    walk(a + 1, k, s);
    for (std::size_t y = 0; y < gp.size(); ++y) {
      if (used[y]) continue;
      for (auto& b : u.unify_prime(fp[a], gp[y], s)) {
        used[y] = true;
        assign[a] = static_cast<int>(y);
        walk(a + 1, k + 1, b);
        assign[a] = -1;
        used[y] = false;
      }
    }
  };
  walk(0, 0, {});
  return out;
}

inline std::vector<Candidate> structural_candidates(const Renamed& f, const Renamed& g, std::size_t i,
                                                    std::size_t j) {
  std::vector<Candidate> out;
  auto gp = prime_factors(g.lhs);
  Unifier u;
  const Word hole = Word::letter(star_symbol());
  std::function<Word(const Word&)> identity = [](const Word& x) { return x; };
  visit_levels(f.lhs, identity, [&](const Word& level, const std::function<Word(const Word&)>& rebuild) {
    Level lp = split_level(level);
    std::vector<bool> used(lp.items.size());
    std::vector<Word> left_g;
    std::function<void(std::size_t, std::size_t, const Binding&)> walk = [&](std::size_t b, std::size_t matched,
                                                                             const Binding& s) {
      if (b == gp.size()) {
        if (matched == 0) return;
        Binding sigma = s;
        std::vector<Word> keep;
        for (std::size_t x = 0; x < lp.items.size(); ++x)
          if (!used[x]) keep.push_back(lp.items[x]);
        Word qlevel = product_of(keep) * hole;
        if (lp.rest) {
          Word t = u.fresh();
          sigma[lp.rest] = product_of(left_g) * t;
          qlevel = qlevel * t;
        }
        Candidate c{i, j, Family::Structural, sigma, resolve(f.lhs, sigma), resolve(rebuild(qlevel), sigma), Word(),
                    Word()};
        out.push_back(std::move(c));
        return;
      }
      for (std::size_t x = 0; x < lp.items.size(); ++x) {
        if (used[x]) continue;
        for (auto& s2 : u.unify_prime(lp.items[x], gp[b], s)) {
          used[x] = true;
          walk(b + 1, matched + 1, s2);
          used[x] = false;
        }
      }
      if (lp.rest) {
        left_g.push_back(gp[b]);
        walk(b + 1, matched, s);
        left_g.pop_back();
      }
    };
    walk(0, 0, {});
  });
  return out;
}

/// Contexts with the hole at depth <= depth, up to `cofactors` fresh letters
/// beside the hole at each level, each wrapping by one of `ops`.
inline std::vector<Word> context_family(int depth, int cofactors, const std::vector<const Operator*>& ops) {
  std::vector<Word> out;
  const Word hole = Word::letter(star_symbol());
  std::function<void(const Word&, int, int)> grow = [&](const Word& inner, int level, int next_cofactor) {
    for (int k = 0; k <= cofactors; ++k) {
      Word w = inner;
      for (int c = 0; c < k; ++c) w = w * letter("c" + std::to_string(next_cofactor + c + 1));
      out.push_back(w);
      if (level < depth)
        for (const Operator* op : ops) grow(Word::apply(op, w), level + 1, next_cofactor + k);
    }
  };
  grow(hole, 0, 0);
  return out;
}

inline std::vector<Candidate> inner_candidates(const Renamed& f, const Renamed& g, std::size_t i, std::size_t j,
                                               const std::vector<Word>& contexts) {
  std::vector<Candidate> out;
  std::vector<const Symbol*> fvars;
  collect_variables(f.lhs, fvars);
  for (const Symbol* x : fvars) {
    for (const Word& q : contexts) {
      Binding sigma{{x, substitute_letters(q, {{star_symbol(), g.lhs}})}};
      Word outer = substitute_letters(f.lhs, {{x, q}});
      out.push_back(Candidate{i, j, Family::Inner, sigma, resolve(f.lhs, sigma), outer, Word(), Word()});
    }
  }
  return out;
}

/// Generator names for the free variables of an ambiguity, kept apart from
/// any letter the rules mention.
class Namer {
 public:
  explicit Namer(const Theory& t) {
    for (const auto& r : t.rules)
      for (const auto& [w, c] : r->relation) collect_letters(w, taken_);
  }

  Word name(const Symbol* var) {
    if (auto it = cache_.find(var); it != cache_.end()) return it->second;
    const std::string& n = var->name;  // ?f0, ?g1, ?t3
    char side = n[1];
    std::size_t index = static_cast<std::size_t>(std::stoul(n.substr(2)));
    static const std::vector<std::string> fpool{"z", "w", "s", "r"};
    static const std::vector<std::string> gpool{"u", "v", "y", "e"};
    std::string base;
    if (side == 'f') base = index < fpool.size() ? fpool[index] : "z" + std::to_string(index);
    else if (side == 'g') base = index < gpool.size() ? gpool[index] : "u" + std::to_string(index);
    else base = index == 0 ? "t" : "t" + std::to_string(index);
    std::string candidate = base;
    for (int k = 1; is_taken(candidate); ++k) candidate = base + "_" + std::to_string(k);
    Word w = letter(candidate);
    cache_.emplace(var, w);
    return w;
  }

 private:
  bool is_taken(const std::string& s) const {
    for (const Symbol* y : taken_)
      if (y->name == s) return true;
    return false;
  }
  std::vector<const Symbol*> taken_;
  std::map<const Symbol*, Word> cache_;
};

inline unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OPALG_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(index, rewriter) for every index, one Rewriter per worker.
template <class Body>
void parallel_for(std::size_t n, const Theory& t, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    Rewriter rw(t);
    try {
      for (std::size_t k = next++; k < n; k = next++) body(k, rw);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

struct VerifyConfig {
  int depth = 2;
  int cofactors = 2;
  bool with_unit = false;
  bool keep_traces = false;
  unsigned workers = 0;  // 0: OPALG_WORKERS or the hardware
};

struct CoverageCell {
  std::string rule_f;
  std::string rule_g;
  std::string shape;
  bool covered = false;
};

struct VerifyResult {
  std::string theory;
  VerifyConfig config;
  std::vector<CompositionReport> reports;
  std::vector<CoverageCell> coverage;
  bool pass = false;

  std::size_t nontrivial() const {
    return static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), [](const CompositionReport& r) { return !r.trivial; }));
  }
  bool covered() const {
    return std::all_of(coverage.begin(), coverage.end(), [](const CoverageCell& c) { return c.covered; });
  }
};

/// Every generator letter replaced by x; used to compare ambiguity shapes.
inline Word erase_letters(const Word& w) {
  std::vector<const Symbol*> ys;
  collect_letters(w, ys);
  Word x = letter("x");
  std::map<const Symbol*, Word> images;
  for (const Symbol* y : ys)
    if (y != star_symbol()) images[y] = x;
  return substitute_letters(w, images);
}

/// The ambiguity tables for the preset theories, as shapes with q = [] and all
/// letters written x. Empty for other theories.
inline std::vector<CoverageCell> expected_table(const Theory& t) {
  static const std::map<std::string, std::pair<std::string, std::string>> shapes{
      // rule: (leading monomial, leading monomial with one variable set to G)
      {"phi1", {"d(x)*d(x)", "d(G)*d(x)"}},
      {"phi2", {"d(d(x))", "d(d(G))"}},
      {"phi3", {"p(x)*p(x)", "p(G)*p(x)"}},
      {"phi4", {"p(p(x))", "p(p(G))"}},
      {"phi5", {"d(p(x))", "d(p(G))"}},
  };
  std::vector<CoverageCell> cells;
  if (t.name != "S_d" && t.name != "S_rb" && t.name != "S_drb") return cells;
  for (const auto& f : t.rules)
    for (const auto& g : t.rules) {
      const auto& [lead_g, unused] = shapes.at(g->name);
      std::string outer = shapes.at(f->name).second;
      outer.replace(outer.find('G'), 1, lead_g);
      cells.push_back({f->name, g->name, format(parse_word(outer)), false});
      if (f == g && (f->name == "phi1" || f->name == "phi3")) {
        std::string op = f->name == "phi1" ? "d" : "p";
        cells.push_back({f->name, g->name, format(parse_word(op + "(x)*" + op + "(x)*" + op + "(x)")), false});
      }
    }
  return cells;
}

inline std::vector<const Operator*> theory_operators(const Theory& t) {
  std::vector<const Operator*> ops;
  for (const auto& r : t.rules)
    for (const auto& [w, c] : r->relation) detail::collect_operators(w, ops);
  std::sort(ops.begin(), ops.end(), [](const Operator* a, const Operator* b) { return compare_operators(a, b) > 0; });
  return ops;
}

/// Desk-scale Groebner-Shirshov check of every ordered pair of rules.
inline VerifyResult verify_gs(const Theory& t, const VerifyConfig& cfg = {}) {
  if (cfg.depth < 1 || cfg.cofactors < 1)
    throw Error(ErrorCode::InvalidArgument, "context depth and cofactor bounds must be at least 1");
  // Contexts may wrap with d and p even when the theory only mentions one.
  auto ops = theory_operators(t);
  for (const Operator* op : {op_d(), op_p()})
    if (std::find(ops.begin(), ops.end(), op) == ops.end()) ops.push_back(op);
  std::sort(ops.begin(), ops.end(), [](const Operator* a, const Operator* b) { return compare_operators(a, b) > 0; });
  auto contexts = detail::context_family(cfg.depth, cfg.cofactors, ops);

  std::vector<detail::Candidate> candidates;
  for (std::size_t i = 0; i < t.rules.size(); ++i)
    for (std::size_t j = 0; j < t.rules.size(); ++j) {
      auto f = detail::rename(*t.rules[i], 'f');
      auto g = detail::rename(*t.rules[j], 'g');
      for (auto&& part : {detail::intersection_candidates(f, g, i, j), detail::structural_candidates(f, g, i, j),
                          detail::inner_candidates(f, g, i, j, contexts)})
        candidates.insert(candidates.end(), part.begin(), part.end());
    }

  // Instantiate free variables: fresh generators, optionally also the unit.
  detail::Namer namer(t);
  std::vector<CompositionReport> reports;
  for (const auto& c : candidates) {
    auto f = detail::rename(*t.rules[c.i], 'f');
    auto g = detail::rename(*t.rules[c.j], 'g');
    std::vector<const Symbol*> vars;
    detail::collect_variables(c.omega, vars);
    std::sort(vars.begin(), vars.end(), [](const Symbol* a, const Symbol* b) { return a->name < b->name; });
    std::size_t combos = cfg.with_unit ? (std::size_t{1} << vars.size()) : 1;
    for (std::size_t mask = 0; mask < combos; ++mask) {
      Binding inst;
      for (std::size_t k = 0; k < vars.size(); ++k) inst[vars[k]] = (mask >> k & 1) ? Word() : namer.name(vars[k]);
      auto concrete = [&](const Word& w) { return substitute_letters(detail::resolve(w, c.sigma), inst); };
      auto concrete_poly = [&](const Polynomial& p) { return substitute_letters(detail::resolve(p, c.sigma), inst); };
      CompositionReport r;
      r.rule_f = t.rules[c.i]->name;
      r.rule_g = t.rules[c.j]->name;
      r.family = c.family;
      r.ambiguity = concrete(c.omega);
      r.f = concrete_poly(f.relation);
      r.g = concrete_poly(g.relation);
      if (c.family == Family::Intersection) {
        r.kind = CompositionKind::Intersection;
        r.mu = concrete(c.mu);
        r.nu = concrete(c.nu);
        r.composition = r.f.times_word(r.mu) - r.g.times_word(r.nu);
        if (!(r.f.leading().first * r.mu == r.ambiguity) || !(r.nu * r.g.leading().first == r.ambiguity))
          throw Error(ErrorCode::Internal, "inconsistent intersection ambiguity " + format(r.ambiguity));
      } else {
        r.kind = CompositionKind::Including;
        StarContext q(concrete(*c.context));
        r.composition = r.f - substitute(q, r.g);
        if (!(q.substitute(r.g.leading().first) == r.ambiguity) || !(r.f.leading().first == r.ambiguity))
          throw Error(ErrorCode::Internal, "inconsistent including ambiguity " + format(r.ambiguity));
        r.context = std::move(q);
      }
      reports.push_back(std::move(r));
    }
  }

  // Drop exact duplicates, then order deterministically.
  auto key = [](const CompositionReport& r) {
    return r.rule_f + "|" + r.rule_g + "|" + std::string(name(r.kind)) + "|" + std::string(name(r.family)) + "|" +
           (r.context ? format(*r.context) : format(r.mu) + "|" + format(r.nu)) + "|" + format(r.composition);
  };
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(reports.size());
  for (std::size_t k = 0; k < reports.size(); ++k) keys.emplace_back(key(reports[k]), k);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (auto c = compare(reports[a.second].ambiguity, reports[b.second].ambiguity); c != 0) return c < 0;
    return a.first < b.first;
  });
  std::vector<CompositionReport> unique;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (k > 0 && keys[k].first == keys[k - 1].first) continue;
    unique.push_back(std::move(reports[keys[k].second]));
  }

  detail::parallel_for(unique.size(), t, detail::worker_count(cfg.workers), [&](std::size_t k, Rewriter& rw) {
    auto& r = unique[k];
    auto res = check_triviality(r.composition, rw, r.ambiguity, cfg.keep_traces);
    r.trivial = res.trivial;
    r.normal_form = std::move(res.normal_form);
    r.trace = std::move(res.trace);
  });

  VerifyResult out;
  out.theory = t.name;
  out.config = cfg;
  out.coverage = expected_table(t);
  for (auto& cell : out.coverage)
    for (const auto& r : unique)
      if (r.rule_f == cell.rule_f && r.rule_g == cell.rule_g && format(erase_letters(r.ambiguity)) == cell.shape) {
        cell.covered = true;
        break;
      }
  out.reports = std::move(unique);
  out.pass = out.nontrivial() == 0;
  return out;
}

/// A copy of t marked certified when verification passes.
inline Theory certify(Theory t, const VerifyConfig& cfg = {}) {
  t.certified = verify_gs(t, cfg).pass;
  return t;
}

// ---------------------------------------------------------------------------
// Enumeration of words and of Irr(S).

struct EnumerationOptions {
  std::size_t max_words = 2'000'000;
};

/// All words of size <= bound over the generators and operators, ascending.
inline std::vector<Word> enumerate_words(std::size_t bound, const std::vector<std::string>& generators,
                                         const std::vector<const Operator*>& ops, EnumerationOptions opts = {}) {
  // words[s] = all words of size exactly s; primes[s] likewise for prime words.
  std::vector<std::vector<Word>> words(bound + 1), primes(bound + 1);
  std::size_t total = 0;
  auto guard = [&](std::size_t add) {
    total += add;
    if (total > opts.max_words)
      throw Error(ErrorCode::BoundExceeded, "more than " + std::to_string(opts.max_words) + " words of size <= " +
                                                std::to_string(bound));
  };
  words[0].push_back(Word());
  guard(1);
  // Flat list of primes with their sizes, built as sizes grow.
  std::vector<std::pair<Word, std::size_t>> flat;
  for (std::size_t s = 1; s <= bound; ++s) {
    if (s == 1)
      for (const auto& y : generators) primes[1].push_back(letter(y));
    for (const Operator* op : ops)
      for (const auto& w : words[s - 1]) primes[s].push_back(Word::apply(op, w));
    for (const auto& p : primes[s]) flat.emplace_back(p, s);
    // Multisets of primes with total size s, primes taken in non-decreasing flat index.
    std::function<void(std::size_t, std::size_t, const Word&)> build = [&](std::size_t from, std::size_t left,
                                                                           const Word& acc) {
      if (left == 0) {
        words[s].push_back(acc);
        return;
      }
      for (std::size_t k = from; k < flat.size(); ++k)
        if (flat[k].second <= left) build(k, left - flat[k].second, acc * flat[k].first);
    };
    build(0, s, Word());
    guard(words[s].size());
  }
  std::vector<Word> all;
  for (auto& ws : words) all.insert(all.end(), ws.begin(), ws.end());
  std::sort(all.begin(), all.end(), WordLess{});
  return all;
}

/// Irreducible words of size <= bound, ascending.
inline std::vector<Word> enumerate_irr(const Theory& t, std::size_t bound, const std::vector<std::string>& generators,
                                       EnumerationOptions opts = {}) {
  Rewriter rw(t);
  std::vector<Word> out;
  for (auto& w : enumerate_words(bound, generators, theory_operators(t), opts))
    if (rw.is_irreducible(w)) out.push_back(std::move(w));
  return out;
}

inline std::size_t count_irr(const Theory& t, std::size_t bound, const std::vector<std::string>& generators,
                             EnumerationOptions opts = {}) {
  return enumerate_irr(t, bound, generators, opts).size();
}

}  // namespace opalg
