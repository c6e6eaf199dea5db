// lpmln/report.hpp - JSON encoding of weights, models, verdicts and reports.
//
// The key layout is documented in docs/json-schema.md. Interpretations are
// sorted arrays of atom names; w-expressions are {"c1": real, "c2": int}.

#ifndef LPMLN_REPORT_HPP
#define LPMLN_REPORT_HPP

#include <string>
#include <variant>

#include <json.hpp>

#include "lpmln/equivalence.hpp"
#include "lpmln/semantics.hpp"
#include "lpmln/syntax.hpp"
#include "lpmln/weights.hpp"

namespace lpmln {

using json = nlohmann::json;

inline void to_json(json& j, const WExpr& w) { j = json{{"c1", w.c1}, {"c2", w.c2}}; }

inline void from_json(const json& j, WExpr& w) {
  w.c1 = j.at("c1").get<double>();
  w.c2 = j.at("c2").get<std::int64_t>();
}

inline void to_json(json& j, const Interpretation& x) {
  j = json::array();
  for (const auto& a : x) j.push_back(a);
}

inline void from_json(const json& j, Interpretation& x) {
  x = Interpretation{};
  for (const auto& a : j) x.insert(a.get<std::string>());
}

inline void to_json(json& j, const HTInterpretation& m) { j = json{{"here", m.here()}, {"there", m.there()}}; }

namespace report {

/// Formula text with primed atoms printed as `p_prime`.
inline std::string formula_text(const Formula& f) { return render_formula(f, prime_as_suffix); }

inline json verdict(const SEVerdict& v) {
  json j;
  j["method"] = "theorem1";
  j["verdict"] = verdict_name(v);
  j["equivalent"] = is_equivalent(v);
  const auto c = witness_of(v);
  j["witness"] = c ? json(*c) : json(nullptr);
  if (const auto* w = std::get_if<WeightMismatch>(&v)) {
    j["counterexample"] = {{"kind", "weight"},  {"x1", w->x1},         {"ratio1", w->ratio1},
                           {"x2", w->x2},       {"ratio2", w->ratio2}};
  } else if (const auto* r = std::get_if<ReductMismatch>(&v)) {
    j["counterexample"] = {{"kind", "reduct"},
                           {"x", r->x},
                           {"distinguishing", r->distinguishing},
                           {"left_reduct", formula_text(r->left_reduct)},
                           {"right_reduct", formula_text(r->right_reduct)}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

inline json condition(const ConditionResult& r) {
  json j;
  j["holds"] = r.holds;
  j["candidate_definition"] = r.id == ConditionId::D;
  j["at"] = r.at ? json(*r.at) : json(nullptr);
  j["distinguishing"] = r.distinguishing ? json(*r.distinguishing) : json(nullptr);
  j["ht_pair"] = r.ht_pair ? json(*r.ht_pair) : json(nullptr);
  return j;
}

inline json cross_check(const CrossCheck& cc) {
  json conds = json::object();
  for (const auto& r : cc.results) conds[std::string(1, condition_letter(r.id))] = condition(r);
  const char* v = !cc.agree() ? "disagree" : cc.all_hold() ? "all-hold" : "all-fail";
  return json{{"conditions", conds}, {"agree", cc.agree()}, {"verdict", v}};
}

inline json falsifier(const FalsifierReport& r) {
  json j;
  j["method"] = "falsify";
  j["verdict"] = r.found ? "violation-found" : "no-violation";
  j["found"] = r.found;
  j["trials_used"] = r.trials_used;
  j["seed"] = r.seed;
  if (r.found) {
    j["counterexample"] = {{"h", render_program(r.h)},
                           {"x", r.x},
                           {"p_left", r.p_left},
                           {"p_right", r.p_right},
                           {"left_undefined", r.left_undefined},
                           {"right_undefined", r.right_undefined}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

inline json models(const Distribution& d, const Signature& sig) {
  json rows = json::array();
  for (const auto& e : d.entries())
    rows.push_back({{"atoms", e.model}, {"weight", e.weight}, {"probability", e.probability}});
  return json{{"signature", sig.atoms()}, {"models", rows}};
}

inline json distribution(const Distribution& d) {
  json rows = json::array();
  for (const auto& e : d.entries()) rows.push_back({{"atoms", e.model}, {"probability", e.probability}});
  return json{{"distribution", rows}};
}

}  // namespace report
}  // namespace lpmln

#endif  // LPMLN_REPORT_HPP
