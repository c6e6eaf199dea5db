// lpmln/semantics.hpp - satisfaction, reducts, (soft) stable models, the logic
// of here-and-there, choice formulas and the priming translation.
//
// Every check here is exhaustive over a finite signature. Classical checks
// enumerate 2^n interpretations and refuse signatures above kClassicalCap;
// here-and-there checks enumerate 3^n pairs and refuse above kHTCap.
//
// Enumeration order is fixed: interpretations are visited in lexicographic
// order of their sorted atom lists, the empty set first. All "first
// counterexample" results refer to this order.

#ifndef LPMLN_SEMANTICS_HPP
#define LPMLN_SEMANTICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpmln/error.hpp"
#include "lpmln/syntax.hpp"

namespace lpmln {

inline constexpr std::size_t kClassicalCap = 24;
inline constexpr std::size_t kHTCap = 15;

inline void require_cap(const Signature& sig, std::size_t cap, const char* what) {
  if (sig.size() > cap) throw SignatureTooLarge(sig.size(), cap, what);
}

// ============================================================================
// Enumeration
// ============================================================================

namespace detail {

template <class Fn>
bool visit_lex(std::size_t n, std::size_t start, std::uint64_t mask, Fn& fn) {
  if (!fn(mask)) return false;
  for (std::size_t i = start; i < n; ++i)
    if (!visit_lex(n, i + 1, mask | std::uint64_t{1} << i, fn)) return false;
  return true;
}

}  // namespace detail

/// Calls `fn(mask)` for every subset of an n-atom signature in enumeration
/// order. `fn` returns false to stop early; the return value reports whether
/// the walk completed.
template <class Fn>
bool for_each_mask(std::size_t n, Fn fn) {
  return detail::visit_lex(n, 0, 0, fn);
}

/// All interpretations over `sig`, in enumeration order.
inline std::vector<Interpretation> interpretations(const Signature& sig) {
  require_cap(sig, kClassicalCap, "interpretation enumeration");
  std::vector<Interpretation> out;
  out.reserve(std::size_t{1} << sig.size());
  for_each_mask(sig.size(), [&](std::uint64_t m) {
    out.push_back(sig.interpretation_of(m));
    return true;
  });
  return out;
}

// ============================================================================
// Compiled formulas
// ============================================================================

/// A formula with atoms resolved to bit positions of a signature, evaluated
/// against bitmask interpretations without allocation.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const Signature& sig) { root_ = add(f, sig); }

  bool eval(std::uint64_t x) const { return eval(root_, x); }

  /// Here-and-there satisfaction; `here` must be a subset of `there`.
  bool ht(std::uint64_t here, std::uint64_t there) const { return ht(root_, here, there).first; }

 private:
  struct Node {
    Connective op;
    std::uint32_t bit;
    std::uint32_t left;
    std::uint32_t right;
  };

  std::uint32_t add(const Formula& f, const Signature& sig) {
    Node n{f.kind(), 0, 0, 0};
    switch (f.kind()) {
      case Connective::Atom: {
        auto i = sig.index_of(f.name());
        if (!i) throw UnknownAtom(f.name());
        n.bit = static_cast<std::uint32_t>(*i);
        break;
      }
      case Connective::Top:
      case Connective::Bot:
        break;
      case Connective::Not:
        n.left = add(f.operand(), sig);
        break;
      default:
        n.left = add(f.left(), sig);
        n.right = add(f.right(), sig);
    }
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  bool eval(std::uint32_t i, std::uint64_t x) const {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Connective::Atom: return (x >> n.bit & 1U) != 0;
      case Connective::Top: return true;
      case Connective::Bot: return false;
      case Connective::Not: return !eval(n.left, x);
      case Connective::And: return eval(n.left, x) && eval(n.right, x);
      case Connective::Or: return eval(n.left, x) || eval(n.right, x);
      case Connective::Implies: return !eval(n.left, x) || eval(n.right, x);
    }
    return false;
  }

  // {HT value at (here, there), classical value at there}
  std::pair<bool, bool> ht(std::uint32_t i, std::uint64_t here, std::uint64_t there) const {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Connective::Atom:
        return {(here >> n.bit & 1U) != 0, (there >> n.bit & 1U) != 0};
      case Connective::Top:
        return {true, true};
      case Connective::Bot:
        return {false, false};
      case Connective::Not: {
        const bool t = !ht(n.left, here, there).second;
        return {t, t};
      }
      case Connective::And: {
        auto [h1, t1] = ht(n.left, here, there);
        auto [h2, t2] = ht(n.right, here, there);
        return {h1 && h2, t1 && t2};
      }
      case Connective::Or: {
        auto [h1, t1] = ht(n.left, here, there);
        auto [h2, t2] = ht(n.right, here, there);
        return {h1 || h2, t1 || t2};
      }
      case Connective::Implies: {
        auto [h1, t1] = ht(n.left, here, there);
        auto [h2, t2] = ht(n.right, here, there);
        const bool t = !t1 || t2;
        return {(!h1 || h2) && t, t};
      }
    }
    return {false, false};
  }

  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

inline std::set<std::string> atoms_of(std::span<const Formula> fs) {
  std::set<std::string> out;
  for (const auto& f : fs) collect_atoms(f, out);
  return out;
}

inline void require_atoms_in(const std::set<std::string>& atoms, const Signature& sig) {
  for (const auto& a : atoms)
    if (!sig.contains(a)) throw UnknownAtom(a);
}

// ============================================================================
// Classical satisfaction and reducts
// ============================================================================

inline bool satisfies(const Interpretation& x, const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: return x.contains(f.name());
    case Connective::Top: return true;
    case Connective::Bot: return false;
    case Connective::Not: return !satisfies(x, f.operand());
    case Connective::And: return satisfies(x, f.left()) && satisfies(x, f.right());
    case Connective::Or: return satisfies(x, f.left()) || satisfies(x, f.right());
    case Connective::Implies: return !satisfies(x, f.left()) || satisfies(x, f.right());
  }
  return false;
}

inline bool satisfies_all(const Interpretation& x, std::span<const Formula> fs) {
  for (const auto& f : fs)
    if (!satisfies(x, f)) return false;
  return true;
}

/// F_X: the rules of `p` whose formula `x` satisfies, weights and order kept.
/// The signature of `p` is carried over.
inline Program satisfied_rules(const Program& p, const Interpretation& x) {
  std::vector<WeightedRule> kept;
  for (const auto& r : p.rules())
    if (satisfies(x, r.formula)) kept.push_back(r);
  return Program(std::move(kept), p.signature());
}

/// Every maximal subformula not satisfied by `x` replaced by bot.
inline Formula reduct(const Formula& f, const Interpretation& x) {
  if (!satisfies(x, f)) return bot();
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Top:
    case Connective::Bot:
      return f;
    case Connective::Not:
      // x satisfies not g, so g is unsatisfied and reduces to bot
      return neg(bot());
    case Connective::And: return conj(reduct(f.left(), x), reduct(f.right(), x));
    case Connective::Or: return disj(reduct(f.left(), x), reduct(f.right(), x));
    case Connective::Implies: return implies(reduct(f.left(), x), reduct(f.right(), x));
  }
  return f;
}

inline std::vector<Formula> reduct(std::span<const Formula> fs, const Interpretation& x) {
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(reduct(f, x));
  return out;
}

/// Reduct of the satisfied part of `p` with respect to `x`, as one conjunction.
inline Formula reduct_of_satisfied(const Program& p, const Interpretation& x) {
  const auto fs = satisfied_rules(p, x).formulas();
  return conjunction(reduct(fs, x));
}

// ============================================================================
// Stable models
// ============================================================================

namespace detail {

// x (a mask over sig) is stable for fs: x satisfies fs and no proper subset
// of x satisfies the reduct of fs relative to x.
inline bool stable_mask(std::uint64_t x, std::span<const Formula> fs, const Signature& sig) {
  const Interpretation xi = sig.interpretation_of(x);
  std::vector<Formula> reducts;
  reducts.reserve(fs.size());
  for (const auto& f : fs) {
    if (!satisfies(xi, f)) return false;
    reducts.push_back(reduct(f, xi));
  }
  const CompiledFormula r(conjunction(reducts), sig);
  if (x == 0) return true;
  for (std::uint64_t y = (x - 1) & x;; y = (y - 1) & x) {
    if (r.eval(y)) return false;
    if (y == 0) break;
  }
  return true;
}

}  // namespace detail

inline bool is_stable_model(const Interpretation& x, std::span<const Formula> fs, const Signature& sig) {
  require_cap(sig, kClassicalCap, "stable model check");
  require_atoms_in(atoms_of(fs), sig);
  return detail::stable_mask(sig.mask_of(x), fs, sig);
}

/// SM[p]: every X over `sig` that is a stable model of the formulas of p_X.
inline std::vector<Interpretation> soft_stable_models(const Program& p, const Signature& sig) {
  require_cap(sig, kClassicalCap, "soft stable model enumeration");
  require_atoms_in(atoms_of(std::span<const Formula>(p.formulas())), sig);
  std::vector<CompiledFormula> compiled;
  for (const auto& r : p.rules()) compiled.emplace_back(r.formula, sig);

  std::vector<Interpretation> out;
  std::vector<Formula> satisfied;
  for_each_mask(sig.size(), [&](std::uint64_t x) {
    satisfied.clear();
    for (std::size_t i = 0; i < compiled.size(); ++i)
      if (compiled[i].eval(x)) satisfied.push_back(p.rules()[i].formula);
    if (detail::stable_mask(x, satisfied, sig)) out.push_back(sig.interpretation_of(x));
    return true;
  });
  return out;
}

inline std::vector<Interpretation> soft_stable_models(const Program& p) {
  return soft_stable_models(p, p.signature());
}

inline bool is_soft_stable_model(const Program& p, const Interpretation& x, const Signature& sig) {
  const auto fs = satisfied_rules(p, x).formulas();
  return is_stable_model(x, fs, sig);
}

// ============================================================================
// Classical equivalence and entailment
// ============================================================================

/// Outcome of an exhaustive classical check; `countermodel` is set on failure.
struct ClassicalResult {
  bool holds = true;
  std::optional<Interpretation> countermodel;

  explicit operator bool() const noexcept { return holds; }
};

inline ClassicalResult classically_equivalent(const Formula& f, const Formula& g, const Signature& sig) {
  require_cap(sig, kClassicalCap, "classical equivalence");
  const CompiledFormula cf(f, sig), cg(g, sig);
  ClassicalResult out;
  for_each_mask(sig.size(), [&](std::uint64_t x) {
    if (cf.eval(x) == cg.eval(x)) return true;
    out = {false, sig.interpretation_of(x)};
    return false;
  });
  return out;
}

/// Equivalence over the atoms of the two formulas.
inline ClassicalResult classically_equivalent(const Formula& f, const Formula& g) {
  auto atoms = atoms_of(f);
  collect_atoms(g, atoms);
  return classically_equivalent(f, g, Signature(atoms));
}

inline ClassicalResult entails(std::span<const Formula> assumptions, const Formula& f, const Signature& sig) {
  require_cap(sig, kClassicalCap, "entailment");
  const CompiledFormula premise(conjunction(assumptions), sig), goal(f, sig);
  ClassicalResult out;
  for_each_mask(sig.size(), [&](std::uint64_t x) {
    if (!premise.eval(x) || goal.eval(x)) return true;
    out = {false, sig.interpretation_of(x)};
    return false;
  });
  return out;
}

// ============================================================================
// Here-and-there
// ============================================================================

class HTInterpretation {
 public:
  HTInterpretation(Interpretation here, Interpretation there) : here_(std::move(here)), there_(std::move(there)) {
    if (!here_.is_subset_of(there_)) throw std::invalid_argument("HT interpretation needs here to be a subset of there");
  }

  const Interpretation& here() const noexcept { return here_; }
  const Interpretation& there() const noexcept { return there_; }

  friend bool operator==(const HTInterpretation&, const HTInterpretation&) = default;

 private:
  Interpretation here_;
  Interpretation there_;
};

inline bool ht_satisfies(const HTInterpretation& m, const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: return m.here().contains(f.name());
    case Connective::Top: return true;
    case Connective::Bot: return false;
    case Connective::Not: return !satisfies(m.there(), f.operand());
    case Connective::And: return ht_satisfies(m, f.left()) && ht_satisfies(m, f.right());
    case Connective::Or: return ht_satisfies(m, f.left()) || ht_satisfies(m, f.right());
    case Connective::Implies:
      return (!ht_satisfies(m, f.left()) || ht_satisfies(m, f.right())) && satisfies(m.there(), f);
  }
  return false;
}

/// Calls `fn(here, there)` for every pair here <= there over an n-atom
/// signature; `there` follows enumeration order, `here` ranges over its subsets.
template <class Fn>
bool for_each_ht_pair(std::size_t n, Fn fn) {
  return for_each_mask(n, [&](std::uint64_t there) {
    for (std::uint64_t here = there;; here = (here - 1) & there) {
      if (!fn(here, there)) return false;
      if (here == 0) break;
    }
    return true;
  });
}

struct HTResult {
  bool holds = true;
  std::optional<HTInterpretation> countermodel;

  explicit operator bool() const noexcept { return holds; }
};

/// Validity in HT by enumerating all 3^n pairs (H, T).
inline HTResult ht_valid(const Formula& f, const Signature& sig) {
  require_cap(sig, kHTCap, "here-and-there validity");
  const CompiledFormula cf(f, sig);
  HTResult out;
  for_each_ht_pair(sig.size(), [&](std::uint64_t h, std::uint64_t t) {
    if (cf.ht(h, t)) return true;
    out = {false, HTInterpretation(sig.interpretation_of(h), sig.interpretation_of(t))};
    return false;
  });
  return out;
}

// ============================================================================
// Choice formulas and the priming translation
// ============================================================================

inline Formula choice(const Formula& f) { return disj(f, neg(f)); }

/// {R | not R : (w : R) in p}, in rule order.
inline std::vector<Formula> choice_program(const Program& p) {
  std::vector<Formula> out;
  out.reserve(p.size());
  for (const auto& r : p.rules()) out.push_back(choice(r.formula));
  return out;
}

/// Fresh primed copy p' of every atom p of a signature. Primed names end in
/// `'`, which the .lpmln reader never accepts, so they cannot clash.
class PrimingMap {
 public:
  explicit PrimingMap(Signature sig) : source_(std::move(sig)) {
    std::set<std::string> primed, all(source_.begin(), source_.end());
    for (const auto& a : source_) {
      primed.insert(prime(a));
      all.insert(prime(a));
    }
    primed_ = Signature(primed);
    doubled_ = Signature(all);
  }

  static std::string prime(const std::string& atom) { return atom + "'"; }

  const Signature& source() const noexcept { return source_; }
  const Signature& primed() const noexcept { return primed_; }
  /// Source and primed atoms together.
  const Signature& doubled() const noexcept { return doubled_; }

  std::string operator()(const std::string& atom) const {
    if (!source_.contains(atom)) throw UnknownAtom(atom);
    return prime(atom);
  }

  /// {p' -> p : p in the source signature}
  std::vector<Formula> persistence_axioms() const {
    std::vector<Formula> out;
    for (const auto& a : source_) out.push_back(implies(atom(prime(a)), atom(a)));
    return out;
  }

 private:
  Signature source_;
  Signature primed_;
  Signature doubled_;
};

/// Printed form of internal primed names: `p'` becomes `p_prime`.
inline std::string prime_as_suffix(const std::string& name) {
  if (!name.empty() && name.back() == '\'') return name.substr(0, name.size() - 1) + "_prime";
  return name;
}

inline Formula delta_transform(const Formula& f, const PrimingMap& pm) {
  switch (f.kind()) {
    case Connective::Atom: return atom(pm(f.name()));
    case Connective::Top:
    case Connective::Bot:
      return f;
    case Connective::Not: return f;
    case Connective::And: return conj(delta_transform(f.left(), pm), delta_transform(f.right(), pm));
    case Connective::Or: return disj(delta_transform(f.left(), pm), delta_transform(f.right(), pm));
    case Connective::Implies:
      return conj(implies(delta_transform(f.left(), pm), delta_transform(f.right(), pm)), f);
  }
  return f;
}

}  // namespace lpmln

#endif  // LPMLN_SEMANTICS_HPP
