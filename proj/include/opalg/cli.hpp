#pragma once

// The opalg command line. run() is kept here, apart from main, so tests can
// drive it in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 internal limit (step cap, enumeration cap, internal error).

#include <filesystem>
#include <iostream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opalg/gsbases.hpp"
#include "opalg/json_io.hpp"
#include "opalg/models.hpp"
#include "opalg/parse.hpp"
#include "opalg/theory.hpp"

namespace opalg::cli {

enum Exit : int { Ok = 0, Failed = 1, Usage = 2, Limit = 3 };

inline int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::StepLimitExceeded:
    case ErrorCode::BoundExceeded:
    case ErrorCode::Internal: return Limit;
    default: return Usage;
  }
}

/// A preset key (d, rb, drb, d+d1, rb-broken) or a rule-set file.
inline Theory load_theory(const std::string& spec) {
  if (is_preset_key(spec)) return preset(spec);
  if (std::filesystem::exists(spec)) return load_ruleset_file(spec);
  throw Error(ErrorCode::InvalidArgument,
              "unknown theory '" + spec + "' (expected d, rb, drb, d+d1, rb-broken or a rule-set file)");
}

inline Polynomial specialize(const Polynomial& f, const Rational& lambda) {
  require_weight(lambda);
  Polynomial g;
  for (const auto& [w, c] : f) g.add_term(w, Scalar(c.specialize(lambda)));
  return g;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::map<std::string, Rational> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, Rational> env;
  for (const auto& a : items) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::ParseError, "assignment '" + a + "' is not of the form name=value");
    env[a.substr(0, eq)] = RingTraits<Rational>::parse(a.substr(eq + 1));
  }
  return env;
}

struct Options {
  std::string theory = "drb";
  std::string strategy = "leading";
  std::uint64_t seed = 1;
  bool trace = false;
  std::string lambda;
  std::vector<std::string> args;
  int depth = 2;
  int cofactors = 2;
  bool with_unit = false;
  bool json = false;
  bool traces = false;
  std::size_t shown = 20;
  std::size_t size = 3;
  std::string generators = "x";
  std::size_t trunc = 8;
  std::size_t samples = 1000;
  std::string model = "hurwitz";
  std::string factor;
  std::string xi;
  std::vector<std::string> assign;
};

namespace detail {

inline int cmd_nf(const Options& o, std::ostream& out) {
  Theory t = load_theory(o.theory);
  if (o.strategy != "leading" && o.strategy != "random")
    throw Error(ErrorCode::InvalidArgument, "strategy must be 'leading' or 'random'");
  Strategy s = o.strategy == "leading" ? Strategy::LeadingFirst : Strategy::RandomRedex;
  Polynomial f = parse_polynomial(o.args.at(0));
  Rewriter rw(t);
  std::vector<TraceStep> trace;
  Polynomial nf = rw.normal_form(f, s, o.seed, o.trace ? &trace : nullptr);
  if (!o.lambda.empty()) nf = specialize(nf, RingTraits<Rational>::parse(o.lambda));
  if (o.trace) {
    Json j{{"schema_version", kSchemaVersion},
           {"theory", t.name},
           {"input", format(f)},
           {"normal_form", format(nf)},
           {"trace", trace_json(trace)}};
    out << j.dump(2) << "\n";
  } else {
    out << format(nf) << "\n";
  }
  return Ok;
}

inline int cmd_cmp(const Options& o, std::ostream& out) {
  Word u = parse_word(o.args.at(0)), v = parse_word(o.args.at(1));
  auto r = compare_with_tier(u, v);
  const char* sym = r.ordering < 0 ? "<" : r.ordering > 0 ? ">" : "=";
  out << sym << " " << name(r.tier) << "\n";
  return Ok;
}

inline void print_report(const CompositionReport& r, std::ostream& out) {
  out << r.rule_f << "^" << r.rule_g << " " << name(r.kind) << " [" << name(r.family) << "]\n";
  out << "  ambiguity:   " << format(r.ambiguity) << "\n";
  if (r.context)
    out << "  context:     " << format(*r.context) << "\n";
  else
    out << "  mu, nu:      " << format(r.mu) << ", " << format(r.nu) << "\n";
  out << "  composition: " << format(r.composition) << "\n";
  out << "  normal form: " << format(r.normal_form) << "\n";
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  Theory t = load_theory(o.theory);
  VerifyConfig cfg;
  cfg.depth = o.depth;
  cfg.cofactors = o.cofactors;
  cfg.with_unit = o.with_unit;
  cfg.keep_traces = o.traces;
  VerifyResult v = verify_gs(t, cfg);
  if (o.json) {
    out << verify_json(v).dump(2) << "\n";
    return v.pass ? Ok : Failed;
  }
  std::size_t covered = std::count_if(v.coverage.begin(), v.coverage.end(), [](auto& c) { return c.covered; });
  out << "theory " << v.theory << ": depth " << cfg.depth << ", cofactors " << cfg.cofactors
      << (cfg.with_unit ? ", with unit" : "") << "\n";
  out << "compositions: " << v.reports.size() << ", non-trivial: " << v.nontrivial() << "\n";
  out << "table cells covered: " << covered << "/" << v.coverage.size() << "\n";
  for (const auto& c : v.coverage)
    if (!c.covered) out << "  missing " << c.rule_f << "^" << c.rule_g << ": " << c.shape << "\n";
  std::size_t shown = 0;
  for (const auto& r : v.reports) {
    if (r.trivial) continue;
    if (shown++ == o.shown) {
      out << "... (" << v.nontrivial() - o.shown << " more)\n";
      break;
    }
    print_report(r, out);
  }
  out << (v.pass ? "pass" : "FAIL") << " (bounded check, not a proof)\n";
  return v.pass ? Ok : Failed;
}

inline int cmd_irr(const Options& o, std::ostream& out) {
  Theory t = load_theory(o.theory);
  auto gens = split_list(o.generators);
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "no generators given");
  auto words = enumerate_irr(t, o.size, gens);
  for (const auto& w : words) out << format(w) << "\n";
  out << "count " << words.size() << "\n";
  return Ok;
}

inline int cmd_compose(const Options& o, std::ostream& out) {
  Theory t = load_theory(o.theory);
  Polynomial f = parse_polynomial(o.args.at(0)), g = parse_polynomial(o.args.at(1));
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "compositions need nonzero polynomials");
  auto reports = intersection_compositions(f, g);
  auto inc = including_compositions(f, g);
  reports.insert(reports.end(), inc.begin(), inc.end());
  Rewriter rw(t);
  for (auto& r : reports) {
    auto tr = check_triviality(r.composition, rw, r.ambiguity);
    r.rule_f = "f";
    r.rule_g = "g";
    r.normal_form = tr.normal_form;
    r.trivial = tr.trivial;
    r.trace = std::move(tr.trace);
  }
  if (o.json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_json(r, o.traces));
    out << arr.dump(2) << "\n";
  } else {
    if (reports.empty()) out << "no compositions\n";
    for (const auto& r : reports) {
      print_report(r, out);
      out << "  " << (r.trivial ? "trivial" : "NOT trivial") << " modulo " << t.name << "\n";
    }
  }
  return Ok;
}

inline std::string window_text(const ConstrainedSeries<Rational>& s, std::size_t n) {
  auto w = s.window(n);
  std::string text = "[";
  for (std::size_t i = 0; i < n; ++i) text += (i ? ", " : "") + w[i].get_str();
  return text + ", ...]";
}

template <class Model>
int report_axioms(const Model& m, const Options& o, std::ostream& out) {
  AxiomReport r = check_axioms(m, o.samples, o.seed);
  if (o.json) {
    out << axiom_json(r).dump(2) << "\n";
  } else {
    out << "model " << r.model << ", lambda " << r.lambda.get_str() << ", " << r.samples << " samples\n";
    for (const auto& a : r.results) {
      if (!a.applicable) {
        out << "  " << a.name << ": n/a\n";
        continue;
      }
      out << "  " << a.name << ": " << (a.pass ? "ok" : "FAIL (" + std::to_string(a.failures) + ")") << "\n";
      if (!a.pass) out << "    first witness: " << a.witness << "\n";
    }
    if (r.degenerate) out << "  d(1) != 0: " << (*r.degenerate ? "yes" : "no") << "\n";
  }
  bool pass = std::all_of(r.results.begin(), r.results.end(), [](auto& a) { return a.pass; });
  return pass ? Ok : Failed;
}

inline int cmd_hurwitz_check(const Options& o, std::ostream& out) {
  Rational l = RingTraits<Rational>::parse(o.lambda.empty() ? "1" : o.lambda);
  if (o.model == "hurwitz") return report_axioms(HurwitzModel<Rational>(l, o.trunc), o, out);
  if (o.model == "degenerate") return report_axioms(DegenerateModel<Rational>(l), o, out);
  if (o.model == "xi")
    return report_axioms(XiModel(l, o.xi.empty() ? std::nullopt : std::optional(RingTraits<Rational>::parse(o.xi))),
                         o, out);
  if (o.model == "left-multiplication")
    return report_axioms(LeftMultiplicationModel(l, RingTraits<Rational>::parse(o.factor.empty() ? "1" : o.factor)),
                         o, out);
  throw Error(ErrorCode::InvalidArgument, "unknown model '" + o.model + "'");
}

inline int cmd_model_eval(const Options& o, std::ostream& out) {
  Rational l = RingTraits<Rational>::parse(o.lambda.empty() ? "1" : o.lambda);
  Polynomial f = parse_polynomial(o.args.at(0));
  auto env = parse_assignments(o.assign);
  if (o.model == "degenerate") {
    out << evaluate_in_model(f, DegenerateModel<Rational>(l), env).get_str() << "\n";
  } else if (o.model == "xi") {
    XiModel m(l, o.xi.empty() ? std::nullopt : std::optional(RingTraits<Rational>::parse(o.xi)));
    out << evaluate_in_model(f, m, env).get_str() << "\n";
  } else if (o.model == "hurwitz") {
    // Values are the constant terms f(0) of constrained series.
    HurwitzModel<Rational> m(l, o.trunc);
    std::map<std::string, ConstrainedSeries<Rational>> series;
    for (const auto& [k, v] : env) series.emplace(k, ConstrainedSeries<Rational>(v, l));
    out << window_text(evaluate_in_model(f, m, series), o.trunc) << "\n";
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown model '" + o.model + "'");
  }
  return Ok;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Free commutative operated algebras: normal forms, Groebner-Shirshov checks and models", "opalg"};
  app.require_subcommand(1);
  Options o;

  auto theory = [&](CLI::App* c) {
    c->add_option("--theory,-t", o.theory, "preset (d, rb, drb, d+d1, rb-broken) or rule-set .json")
        ->capture_default_str();
  };

  auto* nf = app.add_subcommand("nf", "normal form of a polynomial");
  theory(nf);
  nf->add_option("--strategy", o.strategy, "leading or random")->capture_default_str();
  nf->add_option("--seed", o.seed, "seed for the random strategy")->capture_default_str();
  nf->add_flag("--trace", o.trace, "emit a JSON object with the reduction trace");
  nf->add_option("--lambda", o.lambda, "specialize the weight in the output");
  nf->add_option("poly", o.args, "polynomial")->required()->expected(1);

  auto* cmp = app.add_subcommand("cmp", "compare two words");
  cmp->add_option("words", o.args, "two words")->required()->expected(2);

  auto* verify = app.add_subcommand("verify", "bounded Groebner-Shirshov check");
  theory(verify);
  verify->add_option("--depth", o.depth, "context depth bound")->capture_default_str();
  verify->add_option("--cofactors", o.cofactors, "cofactors per context level")->capture_default_str();
  verify->add_flag("--with-unit", o.with_unit, "also instantiate variables with 1");
  verify->add_flag("--json", o.json, "JSON report");
  verify->add_flag("--traces", o.traces, "include reduction traces in the JSON report");
  verify->add_option("--show", o.shown, "non-trivial compositions printed")->capture_default_str();

  auto* irr = app.add_subcommand("irr", "irreducible words up to a size");
  theory(irr);
  irr->add_option("--size", o.size, "size bound (letters plus operators)")->capture_default_str();
  irr->add_option("--generators", o.generators, "comma-separated generators")->capture_default_str();

  auto* compose = app.add_subcommand("compose", "compositions of two monic polynomials");
  theory(compose);
  compose->add_flag("--json", o.json, "JSON output");
  compose->add_flag("--traces", o.traces, "include traces in JSON output");
  compose->add_option("polys", o.args, "f and g")->required()->expected(2);

  auto* hc = app.add_subcommand("hurwitz-check", "check operator identities in a model");
  hc->add_option("--lambda", o.lambda, "weight (nonzero rational)")->default_str("1");
  hc->add_option("--trunc", o.trunc, "Hurwitz window length")->capture_default_str();
  hc->add_option("--samples", o.samples, "random samples")->capture_default_str();
  hc->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
  hc->add_option("--model", o.model, "hurwitz, degenerate, xi or left-multiplication")->capture_default_str();
  hc->add_option("--xi", o.xi, "xi for the xi model (default -lambda)");
  hc->add_option("--factor", o.factor, "a for left multiplication")->default_str("1");
  hc->add_flag("--json", o.json, "JSON report");

  auto* me = app.add_subcommand("model-eval", "evaluate a polynomial in a model");
  me->add_option("--model", o.model, "degenerate, hurwitz or xi")->required();
  me->add_option("--lambda", o.lambda, "weight (nonzero rational)")->default_str("1");
  me->add_option("--assign", o.assign, "name=value (for hurwitz, the series' value at 0)");
  me->add_option("--xi", o.xi, "xi for the xi model (default -lambda)");
  me->add_option("--trunc", o.trunc, "Hurwitz window length")->capture_default_str();
  me->add_option("poly", o.args, "polynomial")->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Ok : Usage;
  }

  try {
    if (*nf) return detail::cmd_nf(o, out);
    if (*cmp) return detail::cmd_cmp(o, out);
    if (*verify) return detail::cmd_verify(o, out);
    if (*irr) return detail::cmd_irr(o, out);
    if (*compose) return detail::cmd_compose(o, out);
    if (*hc) return detail::cmd_hurwitz_check(o, out);
    if (*me) return detail::cmd_model_eval(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return Limit;
  }
  return Usage;
}

}  // namespace opalg::cli
