#pragma once

// Truth degrees and the combination functions of the four supported fuzzy
// logic families.

#include <algorithm>
#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fzt/rational.hpp"

namespace fzt {

/// An exact truth degree in [0, 1].
class Degree {
 public:
  Degree() = default;
  explicit Degree(const Rational& v) : value_(v) {
    if (v < Rational(0) || v > Rational(1))
      throw std::domain_error("degree " + v.str() + " outside [0,1]");
  }
  Degree(std::int64_t p, std::int64_t q) : Degree(Rational(p, q)) {}

  static Degree zero() { return Degree(); }
  static Degree one() { return Degree(Rational(1)); }
  static Degree parse(std::string_view text) { return Degree(Rational::parse(text)); }

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == Rational(1); }
  std::string str() const { return value_.str(); }

  friend bool operator==(const Degree&, const Degree&) = default;
  friend auto operator<=>(const Degree& a, const Degree& b) { return a.value_ <=> b.value_; }

  friend std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.value_; }

 private:
  Rational value_;
};

enum class Logic { zadeh, godel, lukasiewicz, product };

inline constexpr std::array<Logic, 4> kAllLogics = {Logic::zadeh, Logic::godel, Logic::lukasiewicz,
                                                    Logic::product};

inline std::string_view to_string(Logic logic) {
  switch (logic) {
    case Logic::zadeh: return "zadeh";
    case Logic::godel: return "godel";
    case Logic::lukasiewicz: return "lukasiewicz";
    case Logic::product: return "product";
  }
  return "?";
}

inline std::optional<Logic> parse_logic(std::string_view name) {
  for (Logic l : kAllLogics)
    if (to_string(l) == name) return l;
  return std::nullopt;
}

// t-norm: min for Zadeh/Godel, max(0, a+b-1) for Lukasiewicz, a*b for product.
inline Degree tnorm(Logic logic, const Degree& a, const Degree& b) {
  switch (logic) {
    case Logic::zadeh:
    case Logic::godel: return std::min(a, b);
    case Logic::lukasiewicz: return Degree(max(Rational(0), a.value() + b.value() - Rational(1)));
    case Logic::product: return Degree(a.value() * b.value());
  }
  throw std::logic_error("unknown logic");
}

// s-norm: max, min(1, a+b), or the probabilistic sum a+b-ab.
inline Degree snorm(Logic logic, const Degree& a, const Degree& b) {
  switch (logic) {
    case Logic::zadeh:
    case Logic::godel: return std::max(a, b);
    case Logic::lukasiewicz: return Degree(min(Rational(1), a.value() + b.value()));
    case Logic::product: return Degree(a.value() + b.value() - a.value() * b.value());
  }
  throw std::logic_error("unknown logic");
}

// Zadeh uses the Kleene-Dienes implication max(1-a, b). The other three use the
// residuum of their t-norm (Godel, Lukasiewicz, Goguen).
inline Degree implication(Logic logic, const Degree& a, const Degree& b) {
  switch (logic) {
    case Logic::zadeh: return Degree(max(Rational(1) - a.value(), b.value()));
    case Logic::godel: return a <= b ? Degree::one() : b;
    case Logic::lukasiewicz: return Degree(min(Rational(1), Rational(1) - a.value() + b.value()));
    case Logic::product: return a <= b ? Degree::one() : Degree(b.value() / a.value());
  }
  throw std::logic_error("unknown logic");
}

// Involutive 1-a for Zadeh and Lukasiewicz. Godel and product use the residual
// negation a -> 0, which is 1 at 0 and 0 elsewhere.
inline Degree negation(Logic logic, const Degree& a) {
  switch (logic) {
    case Logic::zadeh:
    case Logic::lukasiewicz: return Degree(Rational(1) - a.value());
    case Logic::godel:
    case Logic::product: return a.is_zero() ? Degree::one() : Degree::zero();
  }
  throw std::logic_error("unknown logic");
}

/// Comparator decorating a fuzzy axiom threshold.
enum class Comparator { ge, le, gt, lt };

inline std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::ge: return ">=";
    case Comparator::le: return "<=";
    case Comparator::gt: return ">";
    case Comparator::lt: return "<";
  }
  return "?";
}

inline std::optional<Comparator> parse_comparator(std::string_view s) {
  if (s == ">=") return Comparator::ge;
  if (s == "<=") return Comparator::le;
  if (s == ">") return Comparator::gt;
  if (s == "<") return Comparator::lt;
  return std::nullopt;
}

inline bool compare(const Degree& value, Comparator c, const Degree& threshold) {
  switch (c) {
    case Comparator::ge: return value >= threshold;
    case Comparator::le: return value <= threshold;
    case Comparator::gt: return value > threshold;
    case Comparator::lt: return value < threshold;
  }
  return false;
}

}  // namespace fzt
