// lpmln/weights.hpp - symbolic weights e^{c1 + c2*alpha}, total weights and
// the limit distribution over soft stable models.

#ifndef LPMLN_WEIGHTS_HPP
#define LPMLN_WEIGHTS_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpmln/error.hpp"
#include "lpmln/semantics.hpp"
#include "lpmln/syntax.hpp"

namespace lpmln {

/// Default absolute tolerance on c1. c2 is always compared exactly.
inline constexpr double kWeightTolerance = 1e-9;

/// The w-expression e^{c1 + c2*alpha}: c1 sums soft weights, c2 counts hard rules.
struct WExpr {
  double c1 = 0.0;
  std::int64_t c2 = 0;

  friend WExpr operator*(const WExpr& a, const WExpr& b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
  friend WExpr operator/(const WExpr& a, const WExpr& b) { return {a.c1 - b.c1, a.c2 - b.c2}; }
  friend bool operator==(const WExpr&, const WExpr&) = default;
};

inline WExpr wexpr_mul(const WExpr& a, const WExpr& b) { return a * b; }
inline WExpr wexpr_div(const WExpr& a, const WExpr& b) { return a / b; }

inline bool wexpr_eq(const WExpr& a, const WExpr& b, double tol = kWeightTolerance) {
  return a.c2 == b.c2 && std::abs(a.c1 - b.c1) <= tol;
}

inline std::string render_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

/// `e^{2}` when there is no alpha part, otherwise `e^{0+1a}` / `e^{2-1a}`.
inline std::string render_wexpr(const WExpr& w) {
  std::string out = "e^{" + render_real(w.c1);
  if (w.c2 != 0) out += (w.c2 > 0 ? "+" : "-") + std::to_string(w.c2 > 0 ? w.c2 : -w.c2) + "a";
  return out + "}";
}

/// W_F(X): zero, or a positive w-expression.
class WeightResult {
 public:
  static WeightResult zero() { return WeightResult(); }
  static WeightResult positive(WExpr w) { return WeightResult(w); }

  bool is_zero() const noexcept { return zero_; }
  const WExpr& value() const {
    if (zero_) throw std::logic_error("weight is zero");
    return value_;
  }

  friend bool operator==(const WeightResult&, const WeightResult&) = default;

 private:
  WeightResult() = default;
  explicit WeightResult(WExpr w) : zero_(false), value_(w) {}
  bool zero_ = true;
  WExpr value_{};
};

inline std::string render_weight_result(const WeightResult& w) {
  return w.is_zero() ? "0" : render_wexpr(w.value());
}

/// TW(p) = exp(sum of the weights of p).
inline WExpr total_weight(const Program& p) {
  WExpr out;
  for (const auto& r : p.rules()) {
    if (r.weight.is_hard())
      ++out.c2;
    else
      out.c1 += r.weight.value();
  }
  return out;
}

inline WeightResult weight_of(const Program& p, const Interpretation& x, const Signature& sig) {
  const Program px = satisfied_rules(p, x);
  const auto fs = px.formulas();
  if (!is_stable_model(x, fs, sig)) return WeightResult::zero();
  return WeightResult::positive(total_weight(px));
}

inline WeightResult weight_of(const Program& p, const Interpretation& x) { return weight_of(p, x, p.signature()); }

/// P_F over SM[F], with the alpha -> infinity limit taken symbolically.
class Distribution {
 public:
  struct Entry {
    Interpretation model;
    WExpr weight;
    double probability;
  };

  Distribution() = default;

  /// `models` are soft stable models in enumeration order with their weights.
  static Distribution from_weights(std::vector<Interpretation> models, const std::vector<WExpr>& weights) {
    if (models.empty()) throw NoSoftStableModel();
    if (models.size() != weights.size()) throw std::invalid_argument("one weight per model required");

    std::int64_t top_c2 = std::numeric_limits<std::int64_t>::min();
    for (const auto& w : weights) top_c2 = std::max(top_c2, w.c2);
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& w : weights)
      if (w.c2 == top_c2) shift = std::max(shift, w.c1);

    double norm = 0.0;
    for (const auto& w : weights)
      if (w.c2 == top_c2) norm += std::exp(w.c1 - shift);

    Distribution d;
    d.entries_.reserve(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
      const double p = weights[i].c2 == top_c2 ? std::exp(weights[i].c1 - shift) / norm : 0.0;
      d.entries_.push_back({std::move(models[i]), weights[i], p});
    }
    return d;
  }

  /// One entry per soft stable model, in enumeration order. Models whose
  /// alpha count is not maximal are present with probability exactly 0.
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// 0 for anything that is not a soft stable model.
  double probability(const Interpretation& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const Entry& e, const Interpretation& y) { return e.model < y; });
    return it != entries_.end() && it->model == x ? it->probability : 0.0;
  }

  double total() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.probability;
    return s;
  }

 private:
  std::vector<Entry> entries_;
};

inline Distribution probability_distribution(const Program& p, const Signature& sig) {
  auto models = soft_stable_models(p, sig);
  std::vector<WExpr> weights;
  weights.reserve(models.size());
  for (const auto& x : models) weights.push_back(total_weight(satisfied_rules(p, x)));
  return Distribution::from_weights(std::move(models), weights);
}

inline Distribution probability_distribution(const Program& p) { return probability_distribution(p, p.signature()); }

}  // namespace lpmln

#endif  // LPMLN_WEIGHTS_HPP
