// lpmln/syntax.hpp - formulas, weighted rules, programs and the .lpmln text format.
//
// A program is a finite multiset of weighted propositional formulas `w: R`,
// where w is a finite real (soft rule) or the symbolic infinite weight alpha
// (hard rule). Rule order is kept for printing only.
//
// Text format:
//
//   % comment to end of line
//   0: not a.                 soft rule, weight 0
//   2: b <- a.                sugar for  a -> b
//   alpha: <- a, b.           sugar for  a & b -> bot
//   a | b                     no weight prefix: hard rule; a newline also ends a rule
//
// Connectives, loosest first: `<-` (rule level only), `->` (right assoc),
// `|`, `&` (and `,` inside a rule body), `not` / `~`. Constants: `top`, `bot`.

#ifndef LPMLN_SYNTAX_HPP
#define LPMLN_SYNTAX_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "lpmln/error.hpp"

namespace lpmln {

// ============================================================================
// Formula
// ============================================================================

enum class Connective : std::uint8_t { Atom, Top, Bot, Not, And, Or, Implies };

/// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  /// The default formula is `top`.
  Formula() : node_(constant_node(Connective::Top)) {}

  static Formula atom(std::string name) {
    return Formula(std::make_shared<const Node>(Node{Connective::Atom, std::move(name), nullptr, nullptr}));
  }
  static Formula top() { return Formula(constant_node(Connective::Top)); }
  static Formula bot() { return Formula(constant_node(Connective::Bot)); }
  static Formula negation(const Formula& f) { return make(Connective::Not, f.node_, nullptr); }
  static Formula conjunction(const Formula& l, const Formula& r) { return make(Connective::And, l.node_, r.node_); }
  static Formula disjunction(const Formula& l, const Formula& r) { return make(Connective::Or, l.node_, r.node_); }
  static Formula implication(const Formula& l, const Formula& r) { return make(Connective::Implies, l.node_, r.node_); }

  Connective kind() const noexcept { return node_->kind; }
  bool is(Connective c) const noexcept { return node_->kind == c; }

  /// Atom name; empty for every other node.
  const std::string& name() const noexcept { return node_->name; }

  /// Operand of a negation, or left operand of a binary connective.
  Formula left() const { return Formula(node_->left); }
  Formula operand() const { return left(); }
  Formula right() const { return Formula(node_->right); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Connective::Atom:
        return a.name() == b.name();
      case Connective::Top:
      case Connective::Bot:
        return true;
      case Connective::Not:
        return a.left() == b.left();
      default:
        return a.left() == b.left() && a.right() == b.right();
    }
  }

 private:
  struct Node {
    Connective kind;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Formula make(Connective c, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r) {
    return Formula(std::make_shared<const Node>(Node{c, {}, std::move(l), std::move(r)}));
  }

  static std::shared_ptr<const Node> constant_node(Connective c) {
    static const auto top = std::make_shared<const Node>(Node{Connective::Top, {}, nullptr, nullptr});
    static const auto bot = std::make_shared<const Node>(Node{Connective::Bot, {}, nullptr, nullptr});
    return c == Connective::Top ? top : bot;
  }

  std::shared_ptr<const Node> node_;
};

inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula top() { return Formula::top(); }
inline Formula bot() { return Formula::bot(); }
inline Formula neg(const Formula& f) { return Formula::negation(f); }
inline Formula conj(const Formula& l, const Formula& r) { return Formula::conjunction(l, r); }
inline Formula disj(const Formula& l, const Formula& r) { return Formula::disjunction(l, r); }
inline Formula implies(const Formula& l, const Formula& r) { return Formula::implication(l, r); }
inline Formula iff(const Formula& l, const Formula& r) { return conj(implies(l, r), implies(r, l)); }

/// Left-nested conjunction of `fs`; `top` when empty.
inline Formula conjunction(std::span<const Formula> fs) {
  if (fs.empty()) return top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out.insert(f.name());
      return;
    case Connective::Top:
    case Connective::Bot:
      return;
    case Connective::Not:
      collect_atoms(f.operand(), out);
      return;
    default:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
  }
}

inline std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

// ============================================================================
// Weights and rules
// ============================================================================

/// Either a finite real (soft) or the infinite weight alpha (hard).
class Weight {
 public:
  static Weight soft(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("soft weight must be finite");
    return Weight(false, value);
  }
  static Weight hard() { return Weight(true, 0.0); }

  bool is_hard() const noexcept { return hard_; }
  bool is_soft() const noexcept { return !hard_; }
  /// Soft value; 0 for hard weights.
  double value() const noexcept { return value_; }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.hard_ == b.hard_ && (a.hard_ || a.value_ == b.value_);
  }

 private:
  Weight(bool hard, double value) : hard_(hard), value_(value) {}
  bool hard_;
  double value_;
};

struct WeightedRule {
  Weight weight = Weight::hard();
  Formula formula;
  /// Source line, 0 when the rule was built in code. Not part of equality.
  std::size_t line = 0;

  friend bool operator==(const WeightedRule& a, const WeightedRule& b) {
    return a.weight == b.weight && a.formula == b.formula;
  }
};

// ============================================================================
// Signatures and interpretations
// ============================================================================

/// A set of atoms, i.e. the `X` ranging over candidate models.
class Interpretation {
 public:
  Interpretation() = default;
  Interpretation(std::initializer_list<std::string> atoms) : atoms_(atoms) {}
  explicit Interpretation(std::set<std::string> atoms) : atoms_(std::move(atoms)) {}

  bool contains(const std::string& atom) const { return atoms_.count(atom) != 0; }
  void insert(std::string atom) { atoms_.insert(std::move(atom)); }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  const std::set<std::string>& atoms() const noexcept { return atoms_; }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }

  bool is_subset_of(const Interpretation& other) const {
    return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
  }

  // Ordering is lexicographic on the sorted atom list, so the empty set comes first.
  friend bool operator==(const Interpretation&, const Interpretation&) = default;
  friend bool operator<(const Interpretation& a, const Interpretation& b) { return a.atoms_ < b.atoms_; }

 private:
  std::set<std::string> atoms_;
};

/// Sorted, duplicate-free list of atom names. Position i is bit i of an
/// interpretation mask.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::string> atoms) : Signature(std::set<std::string>(atoms)) {}
  explicit Signature(const std::set<std::string>& atoms) : atoms_(atoms.begin(), atoms.end()) {}

  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  const std::string& operator[](std::size_t i) const { return atoms_[i]; }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }

  std::optional<std::size_t> index_of(std::string_view atom) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
    if (it == atoms_.end() || *it != atom) return std::nullopt;
    return static_cast<std::size_t>(it - atoms_.begin());
  }
  bool contains(std::string_view atom) const { return index_of(atom).has_value(); }

  bool includes(const Signature& other) const {
    return std::includes(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end());
  }

  friend Signature operator|(const Signature& a, const Signature& b) {
    std::set<std::string> all(a.atoms_.begin(), a.atoms_.end());
    all.insert(b.atoms_.begin(), b.atoms_.end());
    return Signature(all);
  }

  std::uint64_t mask_of(const Interpretation& x) const {
    std::uint64_t mask = 0;
    for (const auto& a : x) {
      auto i = index_of(a);
      if (!i) throw UnknownAtom(a);
      mask |= std::uint64_t{1} << *i;
    }
    return mask;
  }

  Interpretation interpretation_of(std::uint64_t mask) const {
    std::set<std::string> out;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (mask >> i & 1U) out.insert(atoms_[i]);
    return Interpretation(std::move(out));
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<std::string> atoms_;
};

// ============================================================================
// Program
// ============================================================================

class Program {
 public:
  Program() = default;

  /// Signature is the set of atoms occurring in `rules` plus `extra`.
  explicit Program(std::vector<WeightedRule> rules, const Signature& extra = {}) : rules_(std::move(rules)) {
    std::set<std::string> atoms(extra.begin(), extra.end());
    for (const auto& r : rules_) collect_atoms(r.formula, atoms);
    signature_ = Signature(atoms);
  }

  const std::vector<WeightedRule>& rules() const noexcept { return rules_; }
  const Signature& signature() const noexcept { return signature_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

  /// Formulas with weights dropped, in rule order.
  std::vector<Formula> formulas() const {
    std::vector<Formula> out;
    out.reserve(rules_.size());
    for (const auto& r : rules_) out.push_back(r.formula);
    return out;
  }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<WeightedRule> rules_;
  Signature signature_;
};

/// Multiset union: rules of `a` followed by rules of `b`.
inline Program join(const Program& a, const Program& b) {
  std::vector<WeightedRule> rules = a.rules();
  rules.insert(rules.end(), b.rules().begin(), b.rules().end());
  return Program(std::move(rules), a.signature() | b.signature());
}

// ============================================================================
// Printing
// ============================================================================

/// Maps an atom name to its printed form.
using AtomNamer = std::function<std::string(const std::string&)>;

namespace detail {

inline int precedence(Connective c) {
  switch (c) {
    case Connective::Implies: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    case Connective::Not: return 4;
    default: return 5;
  }
}

inline void render(const Formula& f, int min_prec, const AtomNamer& namer, std::string& out) {
  const int prec = precedence(f.kind());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Connective::Atom:
      out += namer ? namer(f.name()) : f.name();
      break;
    case Connective::Top:
      out += "top";
      break;
    case Connective::Bot:
      out += "bot";
      break;
    case Connective::Not:
      out += "not ";
      render(f.operand(), 4, namer, out);
      break;
    case Connective::And:
      render(f.left(), 3, namer, out);
      out += " & ";
      render(f.right(), 4, namer, out);
      break;
    case Connective::Or:
      render(f.left(), 2, namer, out);
      out += " | ";
      render(f.right(), 3, namer, out);
      break;
    case Connective::Implies:
      render(f.left(), 2, namer, out);
      out += " -> ";
      render(f.right(), 1, namer, out);
      break;
  }
  if (parens) out += ')';
}

// Left spine of a conjunction, i.e. the comma-separated body elements.
inline void body_elements(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Connective::And)) {
    body_elements(f.left(), out);
    out.push_back(f.right());
  } else {
    out.push_back(f);
  }
}

}  // namespace detail

/// Formula text with minimal parentheses; re-parses to the same tree.
inline std::string render_formula(const Formula& f, const AtomNamer& namer = {}) {
  std::string out;
  detail::render(f, 1, namer, out);
  return out;
}

/// Shortest decimal text that reads back to the same double, or `alpha`.
inline std::string render_weight(const Weight& w) {
  if (w.is_hard()) return "alpha";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w.value());
  if (ec != std::errc{}) throw std::runtime_error("cannot format weight");
  return std::string(buf, end);
}

/// `w: R` without the terminating dot. Top-level implications use the
/// `H <- B1, ..., Bn` and `<- B` forms.
inline std::string render_rule(const WeightedRule& rule, const AtomNamer& namer = {}) {
  std::string out = render_weight(rule.weight) + ": ";
  const Formula& f = rule.formula;
  if (!f.is(Connective::Implies)) return out + render_formula(f, namer);

  std::vector<Formula> body;
  detail::body_elements(f.left(), body);
  std::string body_text;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) body_text += ", ";
    body_text += render_formula(body[i], namer);
  }
  if (f.right().is(Connective::Bot)) return out + "<- " + body_text;
  return out + render_formula(f.right(), namer) + " <- " + body_text;
}

/// One rule per line, each terminated by `.`; the empty program renders as "".
inline std::string render_program(const Program& p, const AtomNamer& namer = {}) {
  std::string out;
  for (const auto& r : p.rules()) out += render_rule(r, namer) + ".\n";
  return out;
}

inline std::string render_interpretation(const Interpretation& x) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : x) {
    if (!first) out += ',';
    out += a;
    first = false;
  }
  return out + "}";
}

// ============================================================================
// Parsing
// ============================================================================

namespace detail {

enum class Tok : std::uint8_t {
  Atom, Number, Alpha, Not, Top, Bot, And, Or, Arrow, LArrow, Comma, Colon, LParen, RParen, Dot, Newline, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::Number: return "number";
    case Tok::Alpha: return "'alpha'";
    case Tok::Not: return "'not'";
    case Tok::Top: return "'top'";
    case Tok::Bot: return "'bot'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::LArrow: return "'<-'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "token";
}

// Numbers are only recognised at the start of a rule, where they can only be
// weights; elsewhere `.` is always the rule terminator.
inline std::vector<Token> tokenize(std::string_view text, bool program_mode) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  bool rule_start = program_mode;
  auto at = [&](std::size_t k) { return i + k < text.size() ? text[i + k] : '\0'; };
  auto push = [&](Tok kind, std::size_t len, std::size_t l, std::size_t c) {
    out.push_back(Token{kind, std::string(text.substr(i, len)), l, c});
    i += len;
    col += len;
  };

  while (i < text.size()) {
    const char c = text[i];
    const std::size_t l = line, cl = col;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i, ++col;
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i, ++col;
      continue;
    }
    if (c == '\n') {
      out.push_back(Token{Tok::Newline, "\n", l, cl});
      ++i, ++line, col = 1;
      rule_start = program_mode;
      continue;
    }
    const bool sign = (c == '-' || c == '+') && (is_digit(at(1)) || (at(1) == '.' && is_digit(at(2))));
    if (rule_start && (is_digit(c) || sign || (c == '.' && is_digit(at(1))))) {
      std::size_t k = sign ? 1 : 0;
      while (is_digit(at(k))) ++k;
      if (at(k) == '.') {
        ++k;
        while (is_digit(at(k))) ++k;
      }
      if (at(k) == 'e' || at(k) == 'E') {
        std::size_t e = k + 1;
        if (at(e) == '+' || at(e) == '-') ++e;
        if (!is_digit(at(e))) throw ParseError("malformed weight", l, cl);
        while (is_digit(at(e))) ++e;
        k = e;
      }
      if (is_ident_char(at(k)) || at(k) == '.') throw ParseError("malformed weight", l, cl);
      push(Tok::Number, k, l, cl);
      rule_start = false;
      continue;
    }
    rule_start = false;
    if (is_ident_char(c)) {
      std::size_t k = 0;
      while (is_ident_char(at(k))) ++k;
      std::string_view word = text.substr(i, k);
      Tok kind = Tok::Atom;
      if (word == "not") kind = Tok::Not;
      else if (word == "top") kind = Tok::Top;
      else if (word == "bot") kind = Tok::Bot;
      else if (word == "alpha") kind = Tok::Alpha;
      else if (!(word[0] >= 'a' && word[0] <= 'z'))
        throw ParseError("atom names must start with a lowercase letter: '" + std::string(word) + "'", l, cl);
      push(kind, k, l, cl);
      continue;
    }
    switch (c) {
      case '~': push(Tok::Not, 1, l, cl); continue;
      case '&': push(Tok::And, 1, l, cl); continue;
      case '|': push(Tok::Or, 1, l, cl); continue;
      case ',': push(Tok::Comma, 1, l, cl); continue;
      case ':': push(Tok::Colon, 1, l, cl); continue;
      case '(': push(Tok::LParen, 1, l, cl); continue;
      case ')': push(Tok::RParen, 1, l, cl); continue;
      case '.':
        push(Tok::Dot, 1, l, cl);
        rule_start = program_mode;
        continue;
      case '-':
        if (at(1) == '>') { push(Tok::Arrow, 2, l, cl); continue; }
        break;
      case '<':
        if (at(1) == '-') { push(Tok::LArrow, 2, l, cl); continue; }
        break;
      default:
        break;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", l, cl);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    std::vector<WeightedRule> rules;
    for (;;) {
      while (peek().kind == Tok::Newline || peek().kind == Tok::Dot) ++pos_;
      if (peek().kind == Tok::End) break;
      rules.push_back(rule());
    }
    return Program(std::move(rules));
  }

  Formula lone_formula() {
    Formula f = formula();
    if (peek().kind != Tok::End) unexpected(peek());
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void unexpected(const Token& t) {
    throw ParseError(std::string("unexpected ") + describe(t.kind), t.line, t.column);
  }

  void expect(Tok kind) {
    if (peek().kind != kind) {
      const Token& t = peek();
      throw ParseError(std::string("expected ") + describe(kind) + ", found " + describe(t.kind), t.line, t.column);
    }
    ++pos_;
  }

  static bool ends_rule(Tok t) { return t == Tok::Dot || t == Tok::Newline || t == Tok::End; }

  WeightedRule rule() {
    const Token& first = peek();
    WeightedRule r;
    r.line = first.line;
    if (first.kind == Tok::Number) {
      double value = 0;
      const char* b = first.text.data();
      const char* e = b + first.text.size();
      if (*b == '+') ++b;  // from_chars rejects a leading '+'
      auto [ptr, ec] = std::from_chars(b, e, value);
      if (ec != std::errc{} || ptr != e || !std::isfinite(value))
        throw ParseError("malformed weight", first.line, first.column);
      ++pos_;
      expect(Tok::Colon);
      r.weight = Weight::soft(value);
    } else if (first.kind == Tok::Alpha && peek(1).kind == Tok::Colon) {
      pos_ += 2;
      r.weight = Weight::hard();
    } else if (first.kind == Tok::Atom && peek(1).kind == Tok::Colon) {
      throw ParseError("malformed weight '" + first.text + "'", first.line, first.column);
    }

    if (peek().kind == Tok::LArrow) {
      const Token& arrow = take();
      if (ends_rule(peek().kind)) throw ParseError("constraint without body", arrow.line, arrow.column);
      r.formula = implies(body(), bot());
    } else {
      Formula head = formula();
      if (peek().kind == Tok::LArrow) {
        ++pos_;
        r.formula = ends_rule(peek().kind) ? head : implies(body(), head);
      } else {
        r.formula = head;
      }
    }
    if (!ends_rule(peek().kind)) unexpected(peek());
    if (peek().kind != Tok::End) ++pos_;
    return r;
  }

  Formula body() {
    Formula out = formula();
    while (peek().kind == Tok::Comma) {
      ++pos_;
      out = conj(out, formula());
    }
    return out;
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return implies(lhs, formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula out = conjunction();
    while (peek().kind == Tok::Or) {
      ++pos_;
      out = disj(out, conjunction());
    }
    return out;
  }

  Formula conjunction() {
    Formula out = unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      out = conj(out, unary());
    }
    return out;
  }

  Formula unary() {
    if (peek().kind == Tok::Not) {
      ++pos_;
      return neg(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Atom: return atom(t.text);
      case Tok::Top: return top();
      case Tok::Bot: return bot();
      case Tok::LParen: {
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Alpha:
        throw ParseError("reserved word 'alpha' used as atom", t.line, t.column);
      default:
        unexpected(t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a single formula (no weight, no rule sugar, no terminator).
inline Formula parse_formula(std::string_view text) {
  return detail::Parser(detail::tokenize(text, false)).lone_formula();
}

/// Parses a whole .lpmln document. Rules keep their source order.
inline Program parse_program(std::string_view text) {
  return detail::Parser(detail::tokenize(text, true)).program();
}

}  // namespace lpmln

#endif  // LPMLN_SYNTAX_HPP
