// lpmln/equivalence.hpp - strong equivalence of weighted programs.
//
// check_se decides strong equivalence with the weight-ratio + reduct
// characterisation: F and G are strongly equivalent iff one w-expression c
// satisfies TW(F_X) = c * TW(G_X) for every X, and the reducts of the
// satisfied parts are classically equivalent for every X.
//
// check_condition evaluates the reformulations of the reduct half (B..G)
// independently of each other so that they can be cross-validated, and
// falsify searches for an extension program H that separates the two
// distributions directly.
//
// Interpretations range over the joint signature atoms(F) | atoms(G).

#ifndef LPMLN_EQUIVALENCE_HPP
#define LPMLN_EQUIVALENCE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lpmln/random.hpp"
#include "lpmln/semantics.hpp"
#include "lpmln/syntax.hpp"
#include "lpmln/weights.hpp"

namespace lpmln {

// ============================================================================
// Verdicts
// ============================================================================

struct Equivalent {
  WExpr witness;
};

/// The ratio TW(F_X)/TW(G_X) differs between two interpretations.
struct WeightMismatch {
  Interpretation x1;
  WExpr ratio1;
  Interpretation x2;
  WExpr ratio2;
};

/// The reducts of F_X and G_X disagree on `distinguishing`.
struct ReductMismatch {
  Interpretation x;
  Interpretation distinguishing;
  Formula left_reduct;
  Formula right_reduct;
};

/// Both programs are empty.
struct Vacuous {};

using SEVerdict = std::variant<Equivalent, WeightMismatch, ReductMismatch, Vacuous>;

inline bool is_equivalent(const SEVerdict& v) {
  return std::holds_alternative<Equivalent>(v) || std::holds_alternative<Vacuous>(v);
}

/// Witness c of an equivalent verdict (e^0 when vacuous).
inline std::optional<WExpr> witness_of(const SEVerdict& v) {
  if (const auto* e = std::get_if<Equivalent>(&v)) return e->witness;
  if (std::holds_alternative<Vacuous>(v)) return WExpr{};
  return std::nullopt;
}

inline const char* verdict_name(const SEVerdict& v) {
  switch (v.index()) {
    case 0: return "equivalent";
    case 1: return "weight-mismatch";
    case 2: return "reduct-mismatch";
    default: return "vacuous";
  }
}

inline Signature joint_signature(const Program& f, const Program& g) { return f.signature() | g.signature(); }

namespace detail {

struct RuleTable {
  RuleTable(const Program& p, const Signature& sig) : program(&p) {
    for (const auto& r : p.rules()) compiled.emplace_back(r.formula, sig);
  }

  std::vector<Formula> satisfied(std::uint64_t x) const {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < compiled.size(); ++i)
      if (compiled[i].eval(x)) out.push_back(program->rules()[i].formula);
    return out;
  }

  WExpr satisfied_weight(std::uint64_t x) const {
    WExpr w;
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      if (!compiled[i].eval(x)) continue;
      const Weight& rw = program->rules()[i].weight;
      if (rw.is_hard())
        ++w.c2;
      else
        w.c1 += rw.value();
    }
    return w;
  }

  const Program* program;
  std::vector<CompiledFormula> compiled;
};

// Subsets of `x` in enumeration order.
template <class Fn>
bool for_each_submask(std::uint64_t x, Fn fn) {
  std::vector<std::size_t> bits;
  for (std::size_t i = 0; i < 64; ++i)
    if (x >> i & 1U) bits.push_back(i);
  return for_each_mask(bits.size(), [&](std::uint64_t m) {
    std::uint64_t y = 0;
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (m >> k & 1U) y |= std::uint64_t{1} << bits[k];
    return fn(y);
  });
}

// Reducts relative to x only mention atoms of x, so a distinguishing model,
// if any, exists among the subsets of x.
inline std::optional<std::uint64_t> reducts_differ(const Formula& a, const Formula& b, std::uint64_t x,
                                                   const Signature& sig) {
  const CompiledFormula ca(a, sig), cb(b, sig);
  std::optional<std::uint64_t> out;
  for_each_submask(x, [&](std::uint64_t y) {
    if (ca.eval(y) == cb.eval(y)) return true;
    out = y;
    return false;
  });
  return out;
}

}  // namespace detail

// ============================================================================
// Weight-ratio + reduct characterisation
// ============================================================================

/// Decides strong equivalence. On failure returns the first counterexample in
/// enumeration order; at each X the weight ratio is checked before the reducts.
inline SEVerdict check_se(const Program& f, const Program& g, double tol = kWeightTolerance) {
  const Signature sig = joint_signature(f, g);
  require_cap(sig, kClassicalCap, "strong equivalence check");
  if (f.empty() && g.empty()) return Vacuous{};

  const detail::RuleTable tf(f, sig), tg(g, sig);
  std::optional<SEVerdict> failure;
  WExpr c;
  for_each_mask(sig.size(), [&](std::uint64_t x) {
    const WExpr ratio = tf.satisfied_weight(x) / tg.satisfied_weight(x);
    if (x == 0) {
      c = ratio;
    } else if (!wexpr_eq(ratio, c, tol)) {
      failure = WeightMismatch{Interpretation{}, c, sig.interpretation_of(x), ratio};
      return false;
    }
    const Interpretation xi = sig.interpretation_of(x);
    const Formula rf = conjunction(reduct(tf.satisfied(x), xi));
    const Formula rg = conjunction(reduct(tg.satisfied(x), xi));
    if (auto y = detail::reducts_differ(rf, rg, x, sig)) {
      failure = ReductMismatch{xi, sig.interpretation_of(*y), rf, rg};
      return false;
    }
    return true;
  });
  if (failure) return *failure;
  return Equivalent{c};
}

/// Every X at which the satisfied-part reducts of f and g disagree, in
/// enumeration order.
inline std::vector<ReductMismatch> reduct_mismatches(const Program& f, const Program& g) {
  const Signature sig = joint_signature(f, g);
  require_cap(sig, kClassicalCap, "reduct comparison");
  const detail::RuleTable tf(f, sig), tg(g, sig);
  std::vector<ReductMismatch> out;
  for_each_mask(sig.size(), [&](std::uint64_t x) {
    const Interpretation xi = sig.interpretation_of(x);
    const Formula rf = conjunction(reduct(tf.satisfied(x), xi));
    const Formula rg = conjunction(reduct(tg.satisfied(x), xi));
    if (auto y = detail::reducts_differ(rf, rg, x, sig)) out.push_back({xi, sig.interpretation_of(*y), rf, rg});
    return true;
  });
  return out;
}

// ============================================================================
// Reformulated conditions
// ============================================================================

enum class ConditionId : std::uint8_t { B, C, D, E, F, G };

inline constexpr std::array<ConditionId, 6> kAllConditions = {ConditionId::B, ConditionId::C, ConditionId::D,
                                                              ConditionId::E, ConditionId::F, ConditionId::G};

inline char condition_letter(ConditionId id) { return static_cast<char>('B' + static_cast<int>(id)); }

inline std::optional<ConditionId> parse_condition(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  const char c = static_cast<char>(s[0] >= 'a' && s[0] <= 'z' ? s[0] - 'a' + 'A' : s[0]);
  if (c < 'B' || c > 'G') return std::nullopt;
  return static_cast<ConditionId>(c - 'B');
}

inline const char* condition_summary(ConditionId id) {
  switch (id) {
    case ConditionId::B: return "reducts of satisfied rules classically equivalent for every X";
    case ConditionId::C: return "reducts of choice programs classically equivalent for every X";
    case ConditionId::D: return "same soft HT models (candidate definition)";
    case ConditionId::E: return "choice programs equivalent in HT";
    case ConditionId::F: return "primed translations of satisfied rules equivalent under p' -> p with p fixed to X, every X";
    case ConditionId::G: return "primed translations of choice programs equivalent under p' -> p";
  }
  return "";
}

/// Outcome of one condition. On failure `at` is the X of the per-X
/// conditions (B, C, F), `distinguishing` the classical model that separates
/// the two sides (B, C) and `ht_pair` the separating (H, T) (D, E, F, G).
struct ConditionResult {
  ConditionId id = ConditionId::B;
  bool holds = true;
  std::optional<Interpretation> at;
  std::optional<Interpretation> distinguishing;
  std::optional<HTInterpretation> ht_pair;

  explicit operator bool() const noexcept { return holds; }
};

namespace detail {

inline ConditionResult per_x_classical(ConditionId id, const Program& f, const Program& g, bool use_choice) {
  const Signature sig = joint_signature(f, g);
  require_cap(sig, kClassicalCap, "condition check");
  const detail::RuleTable tf(f, sig), tg(g, sig);
  const auto chf = choice_program(f), chg = choice_program(g);
  ConditionResult out{id, true, {}, {}, {}};
  for_each_mask(sig.size(), [&](std::uint64_t x) {
    const Interpretation xi = sig.interpretation_of(x);
    const Formula lf = conjunction(reduct(use_choice ? chf : tf.satisfied(x), xi));
    const Formula lg = conjunction(reduct(use_choice ? chg : tg.satisfied(x), xi));
    auto r = classically_equivalent(lf, lg, sig);
    if (r) return true;
    out.holds = false;
    out.at = xi;
    out.distinguishing = r.countermodel;
    return false;
  });
  return out;
}

// Soft HT models: (H, T) with (H, T) satisfying every formula of P_T.
inline ConditionResult soft_ht_models(const Program& f, const Program& g) {
  const Signature sig = joint_signature(f, g);
  require_cap(sig, kHTCap, "soft HT model comparison");
  const detail::RuleTable tf(f, sig), tg(g, sig);
  ConditionResult out{ConditionId::D, true, {}, {}, {}};
  auto model_of = [&](const detail::RuleTable& t, std::uint64_t h, std::uint64_t there) {
    for (const auto& c : t.compiled)
      if (c.eval(there) && !c.ht(h, there)) return false;
    return true;
  };
  for_each_ht_pair(sig.size(), [&](std::uint64_t h, std::uint64_t t) {
    if (model_of(tf, h, t) == model_of(tg, h, t)) return true;
    out.holds = false;
    out.ht_pair = HTInterpretation(sig.interpretation_of(h), sig.interpretation_of(t));
    return false;
  });
  return out;
}

inline HTInterpretation split_primed(const Interpretation& m, const PrimingMap& pm) {
  Interpretation here, there;
  for (const auto& a : pm.source()) {
    if (m.contains(PrimingMap::prime(a))) here.insert(a);
    if (m.contains(a)) there.insert(a);
  }
  return HTInterpretation(std::move(here), std::move(there));
}

inline ConditionResult primed(ConditionId id, const Program& f, const Program& g, bool use_choice) {
  const Signature sig = joint_signature(f, g);
  const PrimingMap pm(sig);
  require_cap(pm.doubled(), kClassicalCap, "primed entailment");
  const auto axioms = pm.persistence_axioms();
  ConditionResult out{id, true, {}, {}, {}};

  auto check = [&](const std::vector<Formula>& lf, const std::vector<Formula>& lg,
                   const std::vector<Formula>& assumptions) {
    const Formula goal = iff(delta_transform(conjunction(lf), pm), delta_transform(conjunction(lg), pm));
    auto r = entails(assumptions, goal, pm.doubled());
    if (!r) {
      out.holds = false;
      out.ht_pair = split_primed(*r.countermodel, pm);
    }
    return r.holds;
  };

  if (use_choice) {
    check(choice_program(f), choice_program(g), axioms);
    return out;
  }
  // Per X the unprimed atoms are fixed to X: p for p in X, not p otherwise.
  const detail::RuleTable tf(f, sig), tg(g, sig);
  for_each_mask(sig.size(), [&](std::uint64_t x) {
    std::vector<Formula> assumptions = axioms;
    for (std::size_t i = 0; i < sig.size(); ++i)
      assumptions.push_back(x >> i & 1U ? atom(sig[i]) : neg(atom(sig[i])));
    if (check(tf.satisfied(x), tg.satisfied(x), assumptions)) return true;
    out.at = sig.interpretation_of(x);
    return false;
  });
  return out;
}

}  // namespace detail

inline ConditionResult check_condition(ConditionId id, const Program& f, const Program& g) {
  switch (id) {
    case ConditionId::B: return detail::per_x_classical(id, f, g, false);
    case ConditionId::C: return detail::per_x_classical(id, f, g, true);
    case ConditionId::D: return detail::soft_ht_models(f, g);
    case ConditionId::E: {
      const Signature sig = joint_signature(f, g);
      const auto chf = choice_program(f), chg = choice_program(g);
      auto r = ht_valid(iff(conjunction(chf), conjunction(chg)), sig);
      return ConditionResult{id, r.holds, {}, {}, r.countermodel};
    }
    case ConditionId::F: return detail::primed(id, f, g, false);
    case ConditionId::G: return detail::primed(id, f, g, true);
  }
  return {};
}

struct CrossCheck {
  std::array<ConditionResult, 6> results;

  const ConditionResult& operator[](ConditionId id) const { return results[static_cast<std::size_t>(id)]; }

  /// All six conditions gave the same answer.
  bool agree() const {
    for (const auto& r : results)
      if (r.holds != results.front().holds) return false;
    return true;
  }
  /// Conditions other than D agree; D rests on a candidate definition.
  bool agree_without_d() const {
    for (const auto& r : results)
      if (r.id != ConditionId::D && r.holds != results.front().holds) return false;
    return true;
  }
  bool all_hold() const { return agree() && results.front().holds; }
};

inline CrossCheck check_all_conditions(const Program& f, const Program& g) {
  CrossCheck out;
  for (auto id : kAllConditions) out.results[static_cast<std::size_t>(id)] = check_condition(id, f, g);
  return out;
}

/// F | H and G | H have the same soft stable models for every H; decided via
/// condition B.
inline bool soft_stable_equivalent(const Program& f, const Program& g) {
  return check_condition(ConditionId::B, f, g).holds;
}

// ============================================================================
// Randomized falsifier
// ============================================================================

inline constexpr double kProbabilityTolerance = 1e-9;

struct FalsifierReport {
  bool found = false;
  Program h;
  Interpretation x;
  double p_left = 0.0;
  double p_right = 0.0;
  /// Set when a side has no soft stable model (its distribution is undefined).
  bool left_undefined = false;
  bool right_undefined = false;
  std::size_t trials_used = 0;
  std::uint64_t seed = 0;
};

/// Shape of the extension programs H tried by falsify: up to three rules of
/// depth at most two over `atoms`, weights from {-1, 0, 1, 2, alpha} with
/// alpha drawn with probability 0.2.
inline ProgramShape extension_shape(const Signature& sig) {
  ProgramShape shape;
  shape.atoms = sig.atoms();
  shape.min_rules = 0;
  shape.max_rules = 3;
  shape.max_depth = 2;
  shape.hard_probability = 0.2;
  shape.soft_weights = {-1.0, 0.0, 1.0, 2.0};
  return shape;
}

namespace detail {

inline std::optional<Distribution> try_distribution(const Program& p, const Signature& sig) {
  try {
    return probability_distribution(p, sig);
  } catch (const NoSoftStableModel&) {
    return std::nullopt;
  }
}

// First interpretation (enumeration order) whose probabilities differ.
inline std::optional<Interpretation> first_difference(const Distribution& a, const Distribution& b, double tol) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    const Interpretation* x;
    if (j == eb.size() || (i < ea.size() && ea[i].model < eb[j].model))
      x = &ea[i].model;
    else
      x = &eb[j].model;
    if (std::abs(a.probability(*x) - b.probability(*x)) > tol) return *x;
    if (i < ea.size() && ea[i].model == *x) ++i;
    if (j < eb.size() && eb[j].model == *x) ++j;
  }
  return std::nullopt;
}

}  // namespace detail

/// Tries up to `trials` extension programs H and compares P_{F|H} with
/// P_{G|H} pointwise. The programs in `pool` are tried first, in order, and
/// count towards `trials`; the rest are drawn from extension_shape().
inline FalsifierReport falsify(const Program& f, const Program& g, std::size_t trials, std::uint64_t seed,
                               std::span<const Program> pool = {}, double tol = kProbabilityTolerance) {
  const Signature sig = joint_signature(f, g);
  require_cap(sig, kClassicalCap, "falsifier");
  Rng rng(seed);
  const ProgramShape shape = extension_shape(sig);

  FalsifierReport report;
  report.seed = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    Program h = t < pool.size() ? pool[t] : random_program(rng, shape);
    report.trials_used = t + 1;
    const Signature all = sig | h.signature();
    require_cap(all, kClassicalCap, "falsifier");
    const auto left = detail::try_distribution(join(f, h), all);
    const auto right = detail::try_distribution(join(g, h), all);
    if (!left && !right) continue;

    std::optional<Interpretation> x;
    if (!left || !right) {
      const Distribution& defined = left ? *left : *right;
      x = defined.entries().front().model;
      for (const auto& e : defined.entries())
        if (e.probability > 0.0) {
          x = e.model;
          break;
        }
    } else {
      x = detail::first_difference(*left, *right, tol);
    }
    if (!x) continue;

    report.found = true;
    report.h = std::move(h);
    report.x = *x;
    report.left_undefined = !left;
    report.right_undefined = !right;
    report.p_left = left ? left->probability(*x) : 0.0;
    report.p_right = right ? right->probability(*x) : 0.0;
    return report;
  }
  return report;
}

}  // namespace lpmln

#endif  // LPMLN_EQUIVALENCE_HPP
