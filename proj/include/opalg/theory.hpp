#pragma once

// The relation sets phi_1..phi_5 and the preset theories built from them.

#include <string>
#include <vector>

#include "opalg/parse.hpp"
#include "opalg/rewrite.hpp"

namespace opalg {

namespace detail {

struct RuleText {
  const char* name;
  std::vector<std::string> variables;
  const char* relation;
};

inline const std::vector<RuleText>& standard_rules() {
  static const std::vector<RuleText> rules{
      {"phi1", {"u", "v"}, "d(u)*d(v) + L^-1*d(u)*v + L^-1*u*d(v) - L^-1*d(u*v)"},
      {"phi2", {"u"}, "d(d(u)) + L^-1*d(u)"},
      {"phi3", {"u", "v"}, "p(u)*p(v) - p(u*p(v)) - p(p(u)*v) - L*p(u*v)"},
      {"phi4", {"u"}, "p(p(u)) + L*p(u)"},
      {"phi5", {"u"}, "d(p(u)) - u"},
      {"d1", {}, "d(1)"},
  };
  return rules;
}

}  // namespace detail

inline RuleSchema standard_rule(std::string_view name) {
  for (const auto& r : detail::standard_rules())
    if (name == r.name) return make_rule(r.name, r.variables, parse_polynomial(r.relation));
  throw Error(ErrorCode::InvalidArgument, "no standard rule named '" + std::string(name) + "'");
}

/// The relation r(args...) as a concrete polynomial.
inline Polynomial instance(const RuleSchema& r, const std::vector<Word>& args) {
  if (args.size() != r.variables.size())
    throw Error(ErrorCode::InvalidArgument, "rule '" + r.name + "' takes " + std::to_string(r.variables.size()) +
                                                " arguments");
  Binding b;
  for (std::size_t i = 0; i < args.size(); ++i) b[r.variables[i]] = args[i];
  return r.instantiate(b);
}

inline Theory make_theory(std::string name, const std::vector<std::string>& rule_names) {
  Theory t;
  t.name = std::move(name);
  for (const auto& r : rule_names) t.add(standard_rule(r));
  return t;
}

/// Presets by their CLI key: d, rb, drb, d+d1, rb-broken.
inline Theory preset(std::string_view key) {
  if (key == "d") return make_theory("S_d", {"phi1", "phi2"});
  if (key == "rb") return make_theory("S_rb", {"phi3", "phi4"});
  if (key == "drb") return make_theory("S_drb", {"phi1", "phi2", "phi3", "phi4", "phi5"});
  if (key == "d+d1") return make_theory("S_d+d1", {"phi1", "phi2", "d1"});
  if (key == "rb-broken") {
    // phi3 without its weight term.
    Theory t;
    t.name = "S_rb_broken";
    t.add(make_rule("phi3_broken", {"u", "v"}, parse_polynomial("p(u)*p(v) - p(u*p(v)) - p(p(u)*v)")));
    t.add(standard_rule("phi4"));
    return t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown theory '" + std::string(key) + "'");
}

inline bool is_preset_key(std::string_view key) {
  return key == "d" || key == "rb" || key == "drb" || key == "d+d1" || key == "rb-broken";
}

}  // namespace opalg
