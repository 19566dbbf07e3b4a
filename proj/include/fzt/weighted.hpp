#pragma once

// Weights of domain elements with respect to distinguished concepts,
// faithfulness, coherence and faithful multipreference (fm) modelhood.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "fzt/interpretation.hpp"
#include "fzt/kb.hpp"

namespace fzt {

/// A rational weight, or -infinity below every rational.
class ExtendedWeight {
 public:
  ExtendedWeight() = default;  // -infinity
  explicit ExtendedWeight(Rational v) : value_(v) {}
  static ExtendedWeight neg_infinity() { return {}; }

  bool is_neg_infinity() const { return !value_; }
  const Rational& value() const { return value_.value(); }
  std::string str() const { return value_ ? value_->str() : "-inf"; }

  friend bool operator==(const ExtendedWeight&, const ExtendedWeight&) = default;
  friend std::strong_ordering operator<=>(const ExtendedWeight& a, const ExtendedWeight& b) {
    if (!a.value_ || !b.value_) return bool(a.value_) <=> bool(b.value_);
    return *a.value_ <=> *b.value_;
  }

 private:
  std::optional<Rational> value_;
};

/// W_i(x) for every element: the weighted sum of consequent degrees when
/// C_i^I(x) > 0, -infinity otherwise. Throws if `concept` is not distinguished.
inline std::vector<ExtendedWeight> weights(const FuzzyInterpretation& I, const WeightedKB& kb,
                                           const std::string& name) {
  if (!kb.is_distinguished(name)) throw SemanticError("\'" + name + "' is not a distinguished concept");
  auto member = extension(I, Concept::atomic(name));
  std::vector<Rational> sum(I.size());
  for (const auto& w : kb.weighted) {
    if (w.subject != name) continue;
    auto d = extension(I, w.consequent);
    for (Element x = 0; x < I.size(); ++x) sum[x] += w.weight * d[x].value();
  }
  std::vector<ExtendedWeight> out(I.size());
  for (Element x = 0; x < I.size(); ++x)
    if (!member[x].is_zero()) out[x] = ExtendedWeight(sum[x]);
  return out;
}

inline ExtendedWeight weight(const FuzzyInterpretation& I, const WeightedKB& kb, const std::string& name,
                             Element x) {
  if (x >= I.size()) throw SemanticError("domain element index out of range");
  return weights(I, kb, name)[x];
}

/// A pair (x, y) for distinguished concept C that breaks the checked
/// condition, with both membership degrees and both weights.
struct PreferenceViolation {
  std::string concept_name;
  Element x;
  Element y;
  Degree degree_x, degree_y;
  ExtendedWeight weight_x, weight_y;
};

struct PreferenceCheck {
  bool ok = true;
  std::vector<PreferenceViolation> violations;
};

namespace detail {

// Scans all ordered pairs. With `coherent` the condition is the biconditional
// x <_C y  iff  W(x) > W(y); otherwise only the forward implication.
inline PreferenceCheck check_preferences(const FuzzyInterpretation& I, const WeightedKB& kb, bool coherent,
                                         bool stop_at_first) {
  PreferenceCheck out;
  for (const auto& c : kb.distinguished) {
    auto deg = extension(I, Concept::atomic(c));
    auto w = weights(I, kb, c);
    for (Element x = 0; x < I.size(); ++x)
      for (Element y = 0; y < I.size(); ++y) {
        bool preferred = deg[x] > deg[y];
        bool heavier = w[x] > w[y];
        bool bad = coherent ? preferred != heavier : preferred && !heavier;
        if (!bad) continue;
        out.ok = false;
        out.violations.push_back({c, x, y, deg[x], deg[y], w[x], w[y]});
        if (stop_at_first) return out;
      }
  }
  return out;
}

}  // namespace detail

/// x <_{C_i} y implies W_i(x) > W_i(y), for every distinguished C_i.
inline PreferenceCheck is_faithful(const FuzzyInterpretation& I, const WeightedKB& kb) {
  return detail::check_preferences(I, kb, false, false);
}

/// x <_{C_i} y iff W_i(x) > W_i(y), for every distinguished C_i.
inline PreferenceCheck is_coherent(const FuzzyInterpretation& I, const WeightedKB& kb) {
  return detail::check_preferences(I, kb, true, false);
}

struct FmModelCheck {
  bool ok = true;
  StrictModelCheck strict;
  PreferenceCheck faithfulness;
};

inline FmModelCheck is_fm_model(const FuzzyInterpretation& I, const WeightedKB& kb) {
  FmModelCheck out;
  out.strict = is_model_strict(I, kb);
  out.faithfulness = is_faithful(I, kb);
  out.ok = out.strict.ok && out.faithfulness.ok;
  return out;
}

// Early-exit variant used by model enumeration.
inline bool accepts_fm_model(const FuzzyInterpretation& I, const WeightedKB& kb) {
  return satisfies_strict_part(I, kb) && detail::check_preferences(I, kb, false, true).ok;
}

}  // namespace fzt
