// lpmln/random.hpp - seeded generators for random formulas and programs.
//
// Draws use std::mt19937_64 with explicit modulo reduction instead of the
// standard distributions, whose output is implementation-defined, so a seed
// yields the same programs with every standard library.

#ifndef LPMLN_RANDOM_HPP
#define LPMLN_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lpmln/syntax.hpp"

namespace lpmln {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

struct ProgramShape {
  std::vector<std::string> atoms;
  std::size_t min_rules = 0;
  std::size_t max_rules = 3;
  std::size_t max_depth = 2;
  /// A rule is hard with this probability, otherwise its weight is drawn
  /// uniformly from `soft_weights`.
  double hard_probability = 0.2;
  std::vector<double> soft_weights = {-1.0, 0.0, 1.0, 2.0};
};

/// Random formula of depth at most `depth`. Leaves are atoms, with the
/// occasional `top`/`bot`; without atoms every leaf is a constant.
inline Formula random_formula(Rng& rng, const std::vector<std::string>& atoms, std::size_t depth) {
  if (depth == 0 || rng.chance(0.3)) {
    if (atoms.empty() || rng.chance(0.1)) return rng.chance(0.5) ? top() : bot();
    return atom(atoms[rng.below(atoms.size())]);
  }
  switch (rng.below(4)) {
    case 0: return neg(random_formula(rng, atoms, depth - 1));
    case 1: return conj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 2: return disj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default: return implies(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

inline Weight random_weight(Rng& rng, const ProgramShape& shape) {
  if (shape.soft_weights.empty() || rng.chance(shape.hard_probability)) return Weight::hard();
  return Weight::soft(shape.soft_weights[rng.below(shape.soft_weights.size())]);
}

inline Program random_program(Rng& rng, const ProgramShape& shape) {
  const std::size_t span = shape.max_rules >= shape.min_rules ? shape.max_rules - shape.min_rules + 1 : 1;
  const std::size_t n = shape.min_rules + rng.below(span);
  std::vector<WeightedRule> rules;
  for (std::size_t i = 0; i < n; ++i) {
    Weight w = random_weight(rng, shape);
    rules.push_back({w, random_formula(rng, shape.atoms, shape.max_depth), 0});
  }
  return Program(std::move(rules));
}

}  // namespace lpmln

#endif  // LPMLN_RANDOM_HPP
