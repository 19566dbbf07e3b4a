#pragma once

// Finite fuzzy interpretations and the compositional semantics of concepts,
// typicality, induced preferences and fuzzy axioms.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fzt/concept.hpp"
#include "fzt/kb.hpp"
#include "fzt/logic.hpp"

namespace fzt {

class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Element = std::size_t;

/// A finite fuzzy interpretation over a fixed signature. Valuations are total:
/// entries never set explicitly have degree 0. Individuals start unbound.
class FuzzyInterpretation {
 public:
  FuzzyInterpretation(Logic logic, Signature signature, std::vector<std::string> domain)
      : logic_(logic), signature_(std::move(signature)), domain_(std::move(domain)) {
    if (domain_.empty()) throw SemanticError("interpretation domain must be nonempty");
    const std::size_t n = domain_.size();
    concepts_.assign(signature_.concepts().size(), std::vector<Degree>(n));
    roles_.assign(signature_.roles().size(), std::vector<Degree>(n * n));
    individuals_.assign(signature_.individuals().size(), std::nullopt);
  }

  // Domain elements named e0, e1, ...
  static FuzzyInterpretation with_size(Logic logic, Signature signature, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    return FuzzyInterpretation(logic, std::move(signature), std::move(names));
  }

  Logic logic() const { return logic_; }
  void set_logic(Logic l) { logic_ = l; }
  const Signature& signature() const { return signature_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }

  std::optional<Element> element(const std::string& name) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
      if (domain_[i] == name) return i;
    return std::nullopt;
  }

  void set_concept(const std::string& name, Element x, Degree d) { concept_slot(name)[check(x)] = d; }
  void set_role(const std::string& name, Element x, Element y, Degree d) {
    role_slot(name)[check(x) * size() + check(y)] = d;
  }
  void bind(const std::string& individual, Element x) {
    auto i = signature_.individual_index(individual);
    if (!i) throw SemanticError("undeclared individual '" + individual + "'");
    individuals_[*i] = check(x);
  }

  Degree concept_degree(const std::string& name, Element x) const { return concept_slot(name)[check(x)]; }
  Degree role_degree(const std::string& name, Element x, Element y) const {
    return role_slot(name)[check(x) * size() + check(y)];
  }
  Element individual(const std::string& name) const {
    auto i = signature_.individual_index(name);
    if (!i) throw SemanticError("undeclared individual '" + name + "'");
    if (!individuals_[*i]) throw SemanticError("individual '" + name + "' is not bound to a domain element");
    return *individuals_[*i];
  }
  bool is_bound(const std::string& name) const {
    auto i = signature_.individual_index(name);
    return i && individuals_[*i].has_value();
  }

  // Index-based access for enumeration loops.
  std::vector<Degree>& concept_values(std::size_t index) { return concepts_[index]; }
  const std::vector<Degree>& concept_values(std::size_t index) const { return concepts_[index]; }
  std::vector<Degree>& role_values(std::size_t index) { return roles_[index]; }
  const std::vector<Degree>& role_values(std::size_t index) const { return roles_[index]; }
  void bind_index(std::size_t individual_index, Element x) { individuals_[individual_index] = x; }

  friend bool operator==(const FuzzyInterpretation& a, const FuzzyInterpretation& b) {
    return a.logic_ == b.logic_ && a.signature_ == b.signature_ && a.domain_ == b.domain_ &&
           a.concepts_ == b.concepts_ && a.roles_ == b.roles_ && a.individuals_ == b.individuals_;
  }

 private:
  Element check(Element x) const {
    if (x >= domain_.size()) throw SemanticError("domain element index out of range");
    return x;
  }
  std::vector<Degree>& concept_slot(const std::string& name) {
    auto i = signature_.concept_index(name);
    if (!i) throw SemanticError("undeclared concept name '" + name + "'");
    return concepts_[*i];
  }
  const std::vector<Degree>& concept_slot(const std::string& name) const {
    auto i = signature_.concept_index(name);
    if (!i) throw SemanticError("undeclared concept name '" + name + "'");
    return concepts_[*i];
  }
  std::vector<Degree>& role_slot(const std::string& name) {
    auto i = signature_.role_index(name);
    if (!i) throw SemanticError("undeclared role name '" + name + "'");
    return roles_[*i];
  }
  const std::vector<Degree>& role_slot(const std::string& name) const {
    auto i = signature_.role_index(name);
    if (!i) throw SemanticError("undeclared role name '" + name + "'");
    return roles_[*i];
  }

  Logic logic_;
  Signature signature_;
  std::vector<std::string> domain_;
  std::vector<std::vector<Degree>> concepts_;
  std::vector<std::vector<Degree>> roles_;
  std::vector<std::optional<Element>> individuals_;
};

/// C^I as a vector indexed by domain element.
///
/// Quantifiers take max/min over the finite domain. T(C) is crisp: 1 exactly
/// on the elements of maximal positive C-degree (all of them on ties), 0
/// everywhere if C^I is identically 0.
inline std::vector<Degree> extension(const FuzzyInterpretation& I, const Concept& c) {
  using K = Concept::Kind;
  const std::size_t n = I.size();
  const Logic logic = I.logic();
  switch (c.kind()) {
    case K::atomic: {
      auto i = I.signature().concept_index(c.name());
      if (!i) throw SemanticError("undeclared concept name '" + c.name() + "'");
      return I.concept_values(*i);
    }
    case K::top: return std::vector<Degree>(n, Degree::one());
    case K::bottom: return std::vector<Degree>(n, Degree::zero());
    case K::neg: {
      auto v = extension(I, c.child());
      for (auto& d : v) d = negation(logic, d);
      return v;
    }
    case K::conj:
    case K::disj: {
      auto a = extension(I, c.left());
      auto b = extension(I, c.right());
      for (std::size_t x = 0; x < n; ++x)
        a[x] = c.kind() == K::conj ? tnorm(logic, a[x], b[x]) : snorm(logic, a[x], b[x]);
      return a;
    }
    case K::exists:
    case K::forall: {
      auto r = I.signature().role_index(c.name());
      if (!r) throw SemanticError("undeclared role name '" + c.name() + "'");
      const auto& rel = I.role_values(*r);
      auto inner = extension(I, c.child());
      std::vector<Degree> out(n);
      for (std::size_t x = 0; x < n; ++x) {
        if (c.kind() == K::exists) {
          Degree best = Degree::zero();
          for (std::size_t y = 0; y < n; ++y) best = std::max(best, tnorm(logic, rel[x * n + y], inner[y]));
          out[x] = best;
        } else {
          Degree worst = Degree::one();
          for (std::size_t y = 0; y < n; ++y) worst = std::min(worst, implication(logic, rel[x * n + y], inner[y]));
          out[x] = worst;
        }
      }
      return out;
    }
    case K::typ: {
      if (c.child().contains_typicality()) throw NestedTypicalityError("nested typicality in " + c.str());
      auto inner = extension(I, c.child());
      Degree top = Degree::zero();
      for (const auto& d : inner) top = std::max(top, d);
      std::vector<Degree> out(n, Degree::zero());
      if (top.is_zero()) return out;
      for (std::size_t x = 0; x < n; ++x)
        if (inner[x] == top) out[x] = Degree::one();
      return out;
    }
  }
  throw std::logic_error("unknown concept kind");
}

inline Degree eval_concept(const FuzzyInterpretation& I, const Concept& c, Element x) {
  if (x >= I.size()) throw SemanticError("domain element index out of range");
  return extension(I, c)[x];
}

/// The strict order x <_C y iff C^I(x) > C^I(y), materialized as a matrix.
class InducedPreference {
 public:
  InducedPreference(Concept c, std::vector<Degree> degrees) : concept_(std::move(c)), degrees_(std::move(degrees)) {}

  const Concept& subject() const { return concept_; }
  std::size_t size() const { return degrees_.size(); }
  bool less(Element x, Element y) const { return degrees_.at(x) > degrees_.at(y); }
  const std::vector<Degree>& degrees() const { return degrees_; }

  // All pairs (x, y) with x <_C y, row-major.
  std::vector<std::pair<Element, Element>> pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element x = 0; x < size(); ++x)
      for (Element y = 0; y < size(); ++y)
        if (less(x, y)) out.emplace_back(x, y);
    return out;
  }

  // min_< (S) for S = elements with positive degree.
  std::vector<Element> minimal_positive() const {
    std::vector<Element> out;
    for (Element u = 0; u < size(); ++u) {
      if (degrees_[u].is_zero()) continue;
      bool dominated = false;
      for (Element z = 0; z < size() && !dominated; ++z)
        dominated = !degrees_[z].is_zero() && less(z, u);
      if (!dominated) out.push_back(u);
    }
    return out;
  }

 private:
  Concept concept_;
  std::vector<Degree> degrees_;
};

inline InducedPreference induced_preference(const FuzzyInterpretation& I, const Concept& c) {
  return InducedPreference(c, extension(I, c));
}

/// Elements x with T(C)^I(x) = 1.
inline std::vector<Element> typical_elements(const FuzzyInterpretation& I, const Concept& c) {
  auto t = extension(I, Concept::typ(c));
  std::vector<Element> out;
  for (Element x = 0; x < t.size(); ++x)
    if (t[x].is_one()) out.push_back(x);
  return out;
}

/// (C <= D)^I = min_x C^I(x) ▷ D^I(x); (C(a))^I = C^I(a^I); (r(a,b))^I = r^I(a^I, b^I).
inline Degree axiom_degree(const FuzzyInterpretation& I, const FuzzyAxiom& ax) {
  if (auto* inc = std::get_if<Inclusion>(&ax.body)) {
    auto l = extension(I, inc->lhs);
    auto r = extension(I, inc->rhs);
    Degree out = Degree::one();
    for (std::size_t x = 0; x < l.size(); ++x) out = std::min(out, implication(I.logic(), l[x], r[x]));
    return out;
  }
  if (auto* ca = std::get_if<ConceptAssertion>(&ax.body)) return extension(I, ca->expr)[I.individual(ca->individual)];
  const auto& ra = std::get<RoleAssertion>(ax.body);
  return I.role_degree(ra.role, I.individual(ra.subject), I.individual(ra.object));
}

inline bool satisfies(const FuzzyInterpretation& I, const FuzzyAxiom& ax) {
  return compare(axiom_degree(I, ax), ax.comparator, ax.threshold);
}

struct AxiomViolation {
  std::string section;  // "tbox" or "abox"
  std::size_t index;
  FuzzyAxiom axiom;
  Degree degree;
};

struct StrictModelCheck {
  bool ok = true;
  std::vector<AxiomViolation> violations;
};

/// Checks T_f and A_f only; weighted TBoxes are the business of weighted.hpp.
inline StrictModelCheck is_model_strict(const FuzzyInterpretation& I, const WeightedKB& kb) {
  StrictModelCheck out;
  auto run = [&](const std::vector<FuzzyAxiom>& axioms, const char* section) {
    for (std::size_t i = 0; i < axioms.size(); ++i) {
      Degree d = axiom_degree(I, axioms[i]);
      if (!compare(d, axioms[i].comparator, axioms[i].threshold)) {
        out.ok = false;
        out.violations.push_back({section, i, axioms[i], d});
      }
    }
  };
  run(kb.tbox, "tbox");
  run(kb.abox, "abox");
  return out;
}

// Early-exit variant used by model enumeration.
inline bool satisfies_strict_part(const FuzzyInterpretation& I, const WeightedKB& kb) {
  for (const auto& ax : kb.tbox)
    if (!satisfies(I, ax)) return false;
  for (const auto& ax : kb.abox)
    if (!satisfies(I, ax)) return false;
  return true;
}

}  // namespace fzt
