// lpmln command-line front end.
//
// Commands:
//   models       soft stable models with weights and probabilities
//   prob         probability distribution, or P(X) for one interpretation
//   check-se     strong equivalence of two programs
//   reduct       satisfied rules of a program and their reduct for one X
//   delta        primed translation of every rule
//   choice       choice formula of every rule
//   cross-check  conditions B..G side by side
//
// Exit codes:
//   0  success / equivalent / all conditions agree and hold
//   1  not equivalent / all conditions agree and fail / violation found
//   2  parse error, unreadable file, unknown atom, bad usage
//   3  signature above the enumeration limit
//   4  no soft stable model
//   5  conditions disagree

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpmln/lpmln.hpp"
#include "lpmln/report.hpp"

namespace {

using namespace lpmln;

enum Exit : int {
  kOk = 0,
  kNegative = 1,
  kInputError = 2,
  kTooLarge = 3,
  kNoModel = 4,
  kDisagree = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Program load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_program(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.message() + " (in " + path + ")", e.line(), e.column());
  }
}

Interpretation parse_interp(const std::string& text, const Signature& sig) {
  Interpretation x;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    if (!sig.contains(item)) throw UnknownAtom(item);
    x.insert(item);
  }
  return x;
}

std::string probability_text(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", p);
  return buf;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int cmd_models(const std::string& file, bool as_json) {
  const Program p = load(file);
  const Distribution d = probability_distribution(p);
  if (as_json) {
    emit(report::models(d, p.signature()));
    return kOk;
  }
  for (const auto& e : d.entries())
    std::cout << render_interpretation(e.model) << '\t' << render_wexpr(e.weight) << '\t'
              << probability_text(e.probability) << '\n';
  return kOk;
}

int cmd_prob(const std::string& file, const std::optional<std::string>& interp, bool as_json) {
  const Program p = load(file);
  const Distribution d = probability_distribution(p);
  if (interp) {
    const Interpretation x = parse_interp(*interp, p.signature());
    const double pr = d.probability(x);
    if (as_json)
      emit(json{{"atoms", x}, {"probability", pr}});
    else
      std::cout << render_interpretation(x) << '\t' << probability_text(pr) << '\n';
    return kOk;
  }
  if (as_json) {
    emit(report::distribution(d));
    return kOk;
  }
  for (const auto& e : d.entries())
    std::cout << render_interpretation(e.model) << '\t' << probability_text(e.probability) << '\n';
  return kOk;
}

void print_verdict(const SEVerdict& v) {
  if (std::holds_alternative<Vacuous>(v)) {
    std::cout << "equivalent (both programs are empty), c = " << render_wexpr(WExpr{}) << '\n';
  } else if (const auto* e = std::get_if<Equivalent>(&v)) {
    std::cout << "equivalent, c = " << render_wexpr(e->witness) << '\n';
  } else if (const auto* w = std::get_if<WeightMismatch>(&v)) {
    std::cout << "not equivalent: weight ratio " << render_wexpr(w->ratio1) << " at " << render_interpretation(w->x1)
              << " but " << render_wexpr(w->ratio2) << " at " << render_interpretation(w->x2) << '\n';
  } else if (const auto* r = std::get_if<ReductMismatch>(&v)) {
    std::cout << "not equivalent: reduct mismatch at " << render_interpretation(r->x) << '\n'
              << "  first reduct:  " << report::formula_text(r->left_reduct) << '\n'
              << "  second reduct: " << report::formula_text(r->right_reduct) << '\n'
              << "  distinguishing interpretation: " << render_interpretation(r->distinguishing) << '\n';
  }
}

void print_condition(const ConditionResult& r) {
  std::cout << condition_letter(r.id) << "  " << (r.holds ? "holds " : "fails ") << "  " << condition_summary(r.id);
  if (r.id == ConditionId::D) std::cout << " [hypothesis]";
  std::cout << '\n';
  if (r.holds) return;
  if (r.at) std::cout << "     at X = " << render_interpretation(*r.at) << '\n';
  if (r.distinguishing) std::cout << "     distinguishing interpretation " << render_interpretation(*r.distinguishing) << '\n';
  if (r.ht_pair)
    std::cout << "     HT countermodel (" << render_interpretation(r.ht_pair->here()) << ", "
              << render_interpretation(r.ht_pair->there()) << ")\n";
}

int cmd_check_se(const std::string& file_f, const std::string& file_g, const std::string& method,
                 std::size_t trials, std::uint64_t seed, bool as_json) {
  const Program f = load(file_f), g = load(file_g);
  if (method == "theorem1") {
    const SEVerdict v = check_se(f, g);
    // a reduct mismatch is reported at its first X; list the others as well
    std::vector<Interpretation> points;
    if (std::holds_alternative<ReductMismatch>(v))
      for (const auto& m : reduct_mismatches(f, g)) points.push_back(m.x);
    if (as_json) {
      json j = report::verdict(v);
      if (!points.empty()) j["counterexample"]["all_x"] = points;
      emit(j);
    } else {
      print_verdict(v);
      if (points.size() > 1) {
        std::cout << "  reducts differ at:";
        for (const auto& x : points) std::cout << ' ' << render_interpretation(x);
        std::cout << '\n';
      }
    }
    return is_equivalent(v) ? kOk : kNegative;
  }
  if (method == "falsify") {
    const FalsifierReport r = falsify(f, g, trials, seed);
    if (as_json) {
      emit(report::falsifier(r));
    } else if (r.found) {
      std::cout << "violation found after " << r.trials_used << " trials (seed " << r.seed << ")\n"
                << "  H:\n";
      std::istringstream h(render_program(r.h));
      for (std::string line; std::getline(h, line);) std::cout << "    " << line << '\n';
      if (r.h.empty()) std::cout << "    (empty)\n";
      std::cout << "  X = " << render_interpretation(r.x) << "\n  P_first  = "
                << (r.left_undefined ? std::string("undefined") : probability_text(r.p_left)) << "\n  P_second = "
                << (r.right_undefined ? std::string("undefined") : probability_text(r.p_right)) << '\n';
    } else {
      std::cout << "no violation in " << r.trials_used << " trials (seed " << r.seed << ")\n";
    }
    return r.found ? kNegative : kOk;
  }
  const auto id = parse_condition(method);
  if (!id) throw UsageError("unknown method '" + method + "'");
  const ConditionResult r = check_condition(*id, f, g);
  if (as_json) {
    json conds = json::object();
    conds[std::string(1, condition_letter(*id))] = report::condition(r);
    emit(json{{"method", method},
              {"verdict", r.holds ? "equivalent" : "not-equivalent"},
              {"equivalent", r.holds},
              {"conditions", conds}});
  } else {
    std::cout << (r.holds ? "equivalent" : "not equivalent") << " (condition " << condition_letter(*id) << ")\n";
    print_condition(r);
  }
  return r.holds ? kOk : kNegative;
}

int cmd_reduct(const std::string& file, const std::string& interp, bool as_json) {
  const Program p = load(file);
  const Interpretation x = parse_interp(interp, p.signature());
  const Program px = satisfied_rules(p, x);
  json rules = json::array(), reducts = json::array();
  for (const auto& r : px.rules()) {
    rules.push_back(render_rule(r));
    reducts.push_back(render_formula(reduct(r.formula, x)));
  }
  if (as_json) {
    emit(json{{"x", x}, {"satisfied", rules}, {"reduct", reducts}});
    return kOk;
  }
  std::cout << "X = " << render_interpretation(x) << '\n';
  for (const auto& r : rules) std::cout << "F_X: " << r.get<std::string>() << '\n';
  if (rules.empty()) std::cout << "F_X: (empty)\n";
  for (const auto& r : reducts) std::cout << "reduct: " << r.get<std::string>() << '\n';
  if (reducts.empty()) std::cout << "reduct: top\n";
  return kOk;
}

int cmd_translate(const std::string& file, bool delta, bool as_json) {
  const Program p = load(file);
  const PrimingMap pm(p.signature());
  json out = json::array();
  for (const auto& r : p.rules()) {
    const Formula f = delta ? delta_transform(r.formula, pm) : choice(r.formula);
    out.push_back(report::formula_text(f));
  }
  if (as_json) {
    emit(json{{"formulas", out}});
    return kOk;
  }
  for (const auto& f : out) std::cout << f.get<std::string>() << '\n';
  return kOk;
}

int cmd_cross_check(const std::string& file_f, const std::string& file_g, bool as_json) {
  const Program f = load(file_f), g = load(file_g);
  const CrossCheck cc = check_all_conditions(f, g);
  if (as_json) {
    emit(report::cross_check(cc));
  } else {
    for (const auto& r : cc.results) print_condition(r);
    std::cout << (cc.agree() ? "agree: all conditions " : "DISAGREE: conditions differ")
              << (cc.agree() ? (cc.all_hold() ? "hold" : "fail") : "") << '\n';
  }
  if (!cc.agree()) return kDisagree;
  return cc.all_hold() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted logic programs: soft stable models, probabilities and strong equivalence"};
  app.require_subcommand(1);

  std::string file, file_g, method = "theorem1";
  std::optional<std::string> interp;
  std::string reduct_interp;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool as_json = false;

  auto* models = app.add_subcommand("models", "List soft stable models with weight and probability");
  models->add_option("file", file, "Program (.lpmln)")->required();
  models->add_flag("--json", as_json, "Machine-readable output");

  auto* prob = app.add_subcommand("prob", "Print the probability distribution");
  prob->add_option("file", file, "Program (.lpmln)")->required();
  prob->add_option("--interp", interp, "Comma-separated atoms of one interpretation");
  prob->add_flag("--json", as_json, "Machine-readable output");

  auto* se = app.add_subcommand("check-se", "Decide strong equivalence of two programs");
  se->add_option("first", file, "First program")->required();
  se->add_option("second", file_g, "Second program")->required();
  se->add_option("--method", method, "theorem1 | b | c | d | e | f | g | falsify")
      ->check(CLI::IsMember({"theorem1", "b", "c", "d", "e", "f", "g", "falsify"}, CLI::ignore_case));
  se->add_option("--trials", trials, "Falsifier trials")->check(CLI::PositiveNumber);
  se->add_option("--seed", seed, "Falsifier seed");
  se->add_flag("--json", as_json, "Machine-readable output");

  auto* red = app.add_subcommand("reduct", "Print F_X and its reduct");
  red->add_option("file", file, "Program (.lpmln)")->required();
  red->add_option("--interp", reduct_interp, "Comma-separated atoms of X")->required();
  red->add_flag("--json", as_json, "Machine-readable output");

  auto* delta = app.add_subcommand("delta", "Print the primed translation of every rule");
  delta->add_option("file", file, "Program (.lpmln)")->required();
  delta->add_flag("--json", as_json, "Machine-readable output");

  auto* ch = app.add_subcommand("choice", "Print the choice formula of every rule");
  ch->add_option("file", file, "Program (.lpmln)")->required();
  ch->add_flag("--json", as_json, "Machine-readable output");

  auto* cross = app.add_subcommand("cross-check", "Evaluate conditions B..G on two programs");
  cross->add_option("first", file, "First program")->required();
  cross->add_option("second", file_g, "Second program")->required();
  cross->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  for (auto& c : method) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  try {
    if (*models) return cmd_models(file, as_json);
    if (*prob) return cmd_prob(file, interp, as_json);
    if (*se) return cmd_check_se(file, file_g, method, trials, seed, as_json);
    if (*red) return cmd_reduct(file, reduct_interp, as_json);
    if (*delta) return cmd_translate(file, true, as_json);
    if (*ch) return cmd_translate(file, false, as_json);
    if (*cross) return cmd_cross_check(file, file_g, as_json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const SignatureTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTooLarge;
  } catch (const NoSoftStableModel& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoModel;
  } catch (const UnknownAtom& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
