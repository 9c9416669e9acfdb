#pragma once

// Rule-set files, verification reports and reduction traces as JSON.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "opalg/gsbases.hpp"
#include "opalg/models.hpp"
#include "opalg/parse.hpp"
#include "opalg/rewrite.hpp"

namespace opalg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses a rule-set document:
///   {"operators": [{"name", "rank"}], "generators": [...],
///    "rules": [{"name", "variables", "polynomial"}]}
inline Theory load_ruleset(const Json& doc, std::string fallback_name = "user") {
  auto where = [](const std::string& path, const std::string& msg) {
    return Error(ErrorCode::InvalidRuleSet, path + ": " + msg);
  };
  if (!doc.is_object()) throw where("$", "expected an object");
  if (doc.contains("operators")) {
    if (!doc["operators"].is_array()) throw where("operators", "expected an array");
    for (std::size_t i = 0; i < doc["operators"].size(); ++i) {
      const auto& o = doc["operators"][i];
      std::string path = "operators[" + std::to_string(i) + "]";
      if (!o.is_object() || !o.contains("name") || !o["name"].is_string() || !o.contains("rank") ||
          !o["rank"].is_number_integer())
        throw where(path, "expected {\"name\": string, \"rank\": integer}");
      try {
        OperatorTable::instance().declare(o["name"].get<std::string>(), o["rank"].get<int>());
      } catch (const Error& e) {
        throw where(path, e.what());
      }
    }
  }
  if (doc.contains("generators")) {
    if (!doc["generators"].is_array()) throw where("generators", "expected an array of names");
    std::vector<std::string> names;
    for (const auto& g : doc["generators"]) {
      if (!g.is_string()) throw where("generators", "expected an array of names");
      names.push_back(g.get<std::string>());
    }
    SymbolTable::instance().declare_order(names);
  }
  if (!doc.contains("rules") || !doc["rules"].is_array() || doc["rules"].empty())
    throw where("rules", "expected a non-empty array");
  Theory t;
  t.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : fallback_name;
  for (std::size_t i = 0; i < doc["rules"].size(); ++i) {
    const auto& r = doc["rules"][i];
    std::string path = "rules[" + std::to_string(i) + "]";
    if (!r.is_object() || !r.contains("name") || !r["name"].is_string() || !r.contains("polynomial") ||
        !r["polynomial"].is_string())
      throw where(path, "expected {\"name\", \"variables\", \"polynomial\"}");
    std::vector<std::string> vars;
    if (r.contains("variables")) {
      if (!r["variables"].is_array()) throw where(path + ".variables", "expected an array of names");
      for (const auto& v : r["variables"]) {
        if (!v.is_string()) throw where(path + ".variables", "expected an array of names");
        vars.push_back(v.get<std::string>());
      }
    }
    try {
      t.add(make_rule(r["name"].get<std::string>(), vars, parse_polynomial(r["polynomial"].get<std::string>())));
    } catch (const Error& e) {
      throw where(path, e.what());
    }
  }
  return t;
}

inline Theory load_ruleset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  std::string stem = path.substr(path.find_last_of('/') + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return load_ruleset(doc, stem);
}

inline Json binding_json(const Binding& b) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& [v, w] : b) items.emplace_back(display_name(v), format(w));
  std::sort(items.begin(), items.end());
  Json j = Json::object();
  for (auto& [k, v] : items) j[k] = v;
  return j;
}

inline Json trace_json(const std::vector<TraceStep>& trace) {
  Json steps = Json::array();
  for (const auto& s : trace) {
    steps.push_back({{"rule", s.rule->name},
                     {"context", format(s.context)},
                     {"binding", binding_json(s.binding)},
                     {"coefficient", to_string(s.coefficient)},
                     {"before", format(s.monomial)},
                     {"after", format(s.replacement)}});
  }
  return steps;
}

inline Json report_json(const CompositionReport& r, bool with_trace) {
  Json j{{"pair", {r.rule_f, r.rule_g}},
         {"kind", std::string(name(r.kind))},
         {"family", std::string(name(r.family))},
         {"ambiguity", format(r.ambiguity)}};
  if (r.context) {
    j["context"] = format(*r.context);
  } else {
    j["mu"] = format(r.mu);
    j["nu"] = format(r.nu);
  }
  j["f"] = format(r.f);
  j["g"] = format(r.g);
  j["composition"] = format(r.composition);
  j["normal_form"] = format(r.normal_form);
  j["trivial"] = r.trivial;
  if (with_trace) j["trace"] = trace_json(r.trace);
  return j;
}

inline Json verify_json(const VerifyResult& v) {
  Json amb = Json::array();
  for (const auto& r : v.reports) amb.push_back(report_json(r, v.config.keep_traces));
  Json cov = Json::array();
  for (const auto& c : v.coverage)
    cov.push_back({{"pair", {c.rule_f, c.rule_g}}, {"shape", c.shape}, {"covered", c.covered}});
  return Json{{"schema_version", kSchemaVersion},
              {"theory", v.theory},
              {"config",
               {{"context_depth_bound", v.config.depth},
                {"context_cofactor_bound", v.config.cofactors},
                {"include_unit_instantiations", v.config.with_unit}}},
              {"scope", "bounded check: fresh-generator instantiations and a finite context family; not a proof"},
              {"ambiguities", std::move(amb)},
              {"coverage", std::move(cov)},
              {"summary", {{"compositions", v.reports.size()}, {"nontrivial", v.nontrivial()}}},
              {"pass", v.pass}};
}

inline Json axiom_json(const AxiomReport& r) {
  Json laws = Json::array();
  for (const auto& a : r.results) {
    Json j{{"name", a.name}, {"applicable", a.applicable}, {"pass", a.pass}, {"failures", a.failures}};
    if (!a.witness.empty()) j["witness"] = a.witness;
    laws.push_back(std::move(j));
  }
  Json j{{"schema_version", kSchemaVersion},
         {"model", r.model},
         {"lambda", to_string(r.lambda)},
         {"samples", r.samples},
         {"laws", std::move(laws)}};
  if (r.degenerate) j["degenerate"] = *r.degenerate;
  return j;
}

}  // namespace opalg
