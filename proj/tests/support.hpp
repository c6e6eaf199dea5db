// tests/support.hpp - fixtures and program generators shared by the suites.

#ifndef LPMLN_TESTS_SUPPORT_HPP
#define LPMLN_TESTS_SUPPORT_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lpmln/lpmln.hpp"

#ifndef LPMLN_TEST_DATA_DIR
#error "LPMLN_TEST_DATA_DIR must point at tests/data"
#endif

namespace support {

inline std::string data_path(const std::string& name) { return std::string(LPMLN_TEST_DATA_DIR) + "/" + name; }

inline lpmln::Program load(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream buf;
  buf << in.rdbuf();
  return lpmln::parse_program(buf.str());
}

// The running example programs F and G and their variants, spelled out so the suites do not depend on the
// fixture files for their core values.
inline lpmln::Program program_f() { return lpmln::parse_program("0: not a.\n2: b <- a.\n3: a <- not not a.\n"); }
inline lpmln::Program program_g() { return lpmln::parse_program("2: not a | b.\n1: a | not a.\n"); }
inline lpmln::Program program_f_prime() { return lpmln::parse_program("0: not a.\n2: b <- a.\n3: a <- a.\n"); }
inline lpmln::Program program_g_prime() { return lpmln::parse_program("3: not a | b.\n1: a | not a.\n"); }
inline lpmln::Program program_h() { return lpmln::parse_program("1: a <- b.\n1: b <- a.\n"); }
inline lpmln::Program program_p1() { return lpmln::parse_program("alpha: a | b.\nalpha: <- a, b.\n"); }
inline lpmln::Program program_p2() {
  return lpmln::parse_program("alpha: a <- not b.\nalpha: b <- not a.\nalpha: <- a, b.\n");
}
inline lpmln::Program program_h_hard() { return lpmln::parse_program("alpha: a <- b.\nalpha: b <- a.\n"); }

/// Random programs over a, b, c with at most four rules of depth at most
/// three and weights from {-1, 0, 1, 2, alpha}.
inline lpmln::ProgramShape small_shape() {
  lpmln::ProgramShape s;
  s.atoms = {"a", "b", "c"};
  s.min_rules = 0;
  s.max_rules = 4;
  s.max_depth = 3;
  return s;
}

/// A program strongly equivalent to `p`, built by rewrites that keep every
/// satisfied-rule reduct and scale every total weight by the same factor:
/// shuffling rules, splitting soft weights, padding formulas with top/bot,
/// rewriting `not R` as `not not not R`, and adding a `w: top` rule.
inline lpmln::Program equivalent_variant(lpmln::Rng& rng, const lpmln::Program& p) {
  using namespace lpmln;
  std::vector<WeightedRule> rules;
  for (const auto& r : p.rules()) {
    Formula f = r.formula;
    switch (rng.below(4)) {
      case 0: f = conj(f, top()); break;
      case 1: f = disj(f, bot()); break;
      case 2:
        if (f.is(Connective::Not)) f = neg(neg(f));
        break;
      default: break;
    }
    if (r.weight.is_soft() && rng.chance(0.4)) {
      const double part = static_cast<double>(rng.below(4)) - 1.0;
      rules.push_back({Weight::soft(part), f, 0});
      rules.push_back({Weight::soft(r.weight.value() - part), f, 0});
    } else {
      rules.push_back({r.weight, f, 0});
    }
  }
  if (rng.chance(0.5))
    rules.push_back({rng.chance(0.2) ? Weight::hard() : Weight::soft(static_cast<double>(rng.below(3))), top(), 0});
  for (std::size_t i = rules.size(); i > 1; --i) std::swap(rules[i - 1], rules[rng.below(i)]);
  return Program(std::move(rules));
}

}  // namespace support

#endif  // LPMLN_TESTS_SUPPORT_HPP
