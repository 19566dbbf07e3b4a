#pragma once

// Knowledge base data model: signatures, fuzzy axioms, weighted typicality
// inclusions and the weighted KB tuple, plus structural validation.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fzt/concept.hpp"
#include "fzt/logic.hpp"

namespace fzt {

/// Ordered, duplicate-free name lists for concepts, roles and individuals.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> concepts, std::vector<std::string> roles,
            std::vector<std::string> individuals) {
    for (auto& c : concepts) add_concept(std::move(c));
    for (auto& r : roles) add_role(std::move(r));
    for (auto& i : individuals) add_individual(std::move(i));
  }

  // Return false if the name was already present in that list.
  bool add_concept(std::string name) { return add(concepts_, concept_index_, std::move(name)); }
  bool add_role(std::string name) { return add(roles_, role_index_, std::move(name)); }
  bool add_individual(std::string name) { return add(individuals_, individual_index_, std::move(name)); }

  const std::vector<std::string>& concepts() const { return concepts_; }
  const std::vector<std::string>& roles() const { return roles_; }
  const std::vector<std::string>& individuals() const { return individuals_; }

  std::optional<std::size_t> concept_index(const std::string& n) const { return find(concept_index_, n); }
  std::optional<std::size_t> role_index(const std::string& n) const { return find(role_index_, n); }
  std::optional<std::size_t> individual_index(const std::string& n) const {
    return find(individual_index_, n);
  }

  bool has_concept(const std::string& n) const { return concept_index_.count(n) != 0; }
  bool has_role(const std::string& n) const { return role_index_.count(n) != 0; }
  bool has_individual(const std::string& n) const { return individual_index_.count(n) != 0; }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.concepts_ == b.concepts_ && a.roles_ == b.roles_ && a.individuals_ == b.individuals_;
  }

 private:
  using Index = std::map<std::string, std::size_t, std::less<>>;

  static bool add(std::vector<std::string>& names, Index& index, std::string name) {
    if (index.count(name)) return false;
    index.emplace(name, names.size());
    names.push_back(std::move(name));
    return true;
  }
  static std::optional<std::size_t> find(const Index& index, const std::string& n) {
    auto it = index.find(n);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> concepts_, roles_, individuals_;
  Index concept_index_, role_index_, individual_index_;
};

struct Inclusion {
  Concept lhs;
  Concept rhs;
  friend bool operator==(const Inclusion&, const Inclusion&) = default;
};

struct ConceptAssertion {
  Concept expr;
  std::string individual;
  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

struct RoleAssertion {
  std::string role;
  std::string subject;
  std::string object;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

/// C <= D θ n, C(a) θ n or r(a,b) θ n.
struct FuzzyAxiom {
  std::variant<Inclusion, ConceptAssertion, RoleAssertion> body;
  Comparator comparator = Comparator::ge;
  Degree threshold = Degree::one();

  static FuzzyAxiom inclusion(Concept lhs, Concept rhs, Comparator c, Degree n) {
    return {Inclusion{std::move(lhs), std::move(rhs)}, c, n};
  }
  static FuzzyAxiom assertion(Concept expr, std::string individual, Comparator c, Degree n) {
    return {ConceptAssertion{std::move(expr), std::move(individual)}, c, n};
  }
  static FuzzyAxiom role_assertion(std::string role, std::string a, std::string b, Comparator c, Degree n) {
    return {RoleAssertion{std::move(role), std::move(a), std::move(b)}, c, n};
  }

  bool is_inclusion() const { return std::holds_alternative<Inclusion>(body); }
  bool is_assertion() const { return !is_inclusion(); }

  // Body in .fkb syntax, without the section prefix.
  std::string str() const {
    std::string head;
    if (auto* inc = std::get_if<Inclusion>(&body)) {
      head = inc->lhs.str() + " <= " + inc->rhs.str();
    } else if (auto* ca = std::get_if<ConceptAssertion>(&body)) {
      head = ca->expr.str() + "(" + ca->individual + ")";
    } else {
      const auto& ra = std::get<RoleAssertion>(body);
      head = ra.role + "(" + ra.subject + "," + ra.object + ")";
    }
    return head + " " + std::string(to_string(comparator)) + " " + threshold.str();
  }

  void collect_names(std::set<std::string>& concepts, std::set<std::string>& roles,
                     std::set<std::string>& individuals) const {
    if (auto* inc = std::get_if<Inclusion>(&body)) {
      inc->lhs.collect_names(concepts, roles);
      inc->rhs.collect_names(concepts, roles);
    } else if (auto* ca = std::get_if<ConceptAssertion>(&body)) {
      ca->expr.collect_names(concepts, roles);
      individuals.insert(ca->individual);
    } else {
      const auto& ra = std::get<RoleAssertion>(body);
      roles.insert(ra.role);
      individuals.insert(ra.subject);
      individuals.insert(ra.object);
    }
  }

  friend bool operator==(const FuzzyAxiom&, const FuzzyAxiom&) = default;
};

/// (T(subject) <= consequent, weight).
struct WeightedInclusion {
  std::string subject;
  Concept consequent;
  Rational weight;
  friend bool operator==(const WeightedInclusion&, const WeightedInclusion&) = default;
};

struct WeightedKB {
  Logic logic = Logic::godel;
  Signature signature;
  std::vector<std::string> distinguished;
  std::vector<FuzzyAxiom> tbox;
  std::vector<FuzzyAxiom> abox;
  std::vector<WeightedInclusion> weighted;

  bool is_distinguished(const std::string& name) const {
    return std::find(distinguished.begin(), distinguished.end(), name) != distinguished.end();
  }

  // The weighted TBox of one distinguished concept, in listed order.
  std::vector<WeightedInclusion> weighted_tbox(const std::string& subject) const {
    std::vector<WeightedInclusion> out;
    for (const auto& w : weighted)
      if (w.subject == subject) out.push_back(w);
    return out;
  }

  // Weighted inclusions compare per subject, so regrouping by distinguished
  // concept does not change the KB.
  friend bool operator==(const WeightedKB& a, const WeightedKB& b) {
    if (a.logic != b.logic || !(a.signature == b.signature) || a.distinguished != b.distinguished ||
        a.tbox != b.tbox || a.abox != b.abox || a.weighted.size() != b.weighted.size())
      return false;
    std::set<std::string> subjects;
    for (const auto& w : a.weighted) subjects.insert(w.subject);
    for (const auto& s : subjects)
      if (a.weighted_tbox(s) != b.weighted_tbox(s)) return false;
    return true;
  }
};

/// One invariant violation; `path` names the offending item, e.g. "wtbox[3]".
struct Violation {
  std::string path;
  std::string message;
};

namespace detail {

inline void check_concept_names(const Concept& c, const Signature& sig, const std::string& path,
                                std::vector<Violation>& out) {
  std::set<std::string> concepts, roles;
  c.collect_names(concepts, roles);
  for (const auto& n : concepts)
    if (!sig.has_concept(n)) out.push_back({path, "undeclared concept name '" + n + "'"});
  for (const auto& n : roles)
    if (!sig.has_role(n)) out.push_back({path, "undeclared role name '" + n + "'"});
}

// Depth-first search for T(.) below another T(.). Concept::typ refuses to
// build such trees, so this only guards hand-assembled data.
inline bool has_nested_typicality(const Concept& c, bool inside) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::atomic:
    case K::top:
    case K::bottom: return false;
    case K::typ: return inside || has_nested_typicality(c.child(), true);
    case K::neg:
    case K::exists:
    case K::forall: return has_nested_typicality(c.child(), inside);
    case K::conj:
    case K::disj: return has_nested_typicality(c.left(), inside) || has_nested_typicality(c.right(), inside);
  }
  return false;
}

inline void check_axiom(const FuzzyAxiom& ax, const Signature& sig, const std::string& path,
                        std::vector<Violation>& out) {
  std::set<std::string> concepts, roles, individuals;
  ax.collect_names(concepts, roles, individuals);
  for (const auto& n : concepts)
    if (!sig.has_concept(n)) out.push_back({path, "undeclared concept name '" + n + "'"});
  for (const auto& n : roles)
    if (!sig.has_role(n)) out.push_back({path, "undeclared role name '" + n + "'"});
  for (const auto& n : individuals)
    if (!sig.has_individual(n)) out.push_back({path, "undeclared individual '" + n + "'"});
  if (auto* inc = std::get_if<Inclusion>(&ax.body)) {
    if (has_nested_typicality(inc->lhs, false) || has_nested_typicality(inc->rhs, false))
      out.push_back({path, "nested typicality"});
  } else if (auto* ca = std::get_if<ConceptAssertion>(&ax.body)) {
    if (has_nested_typicality(ca->expr, false)) out.push_back({path, "nested typicality"});
  }
}

}  // namespace detail

/// Reports every structural invariant violation; an empty result means valid.
inline std::vector<Violation> validate_kb(const WeightedKB& kb) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < kb.distinguished.size(); ++i) {
    const auto& d = kb.distinguished[i];
    std::string path = "distinguished[" + std::to_string(i) + "]";
    if (!kb.signature.has_concept(d)) out.push_back({path, "distinguished '" + d + "' is not a declared concept name"});
    if (!seen.insert(d).second) out.push_back({path, "distinguished '" + d + "' listed twice"});
  }
  for (std::size_t i = 0; i < kb.tbox.size(); ++i) {
    std::string path = "tbox[" + std::to_string(i) + "]";
    if (!kb.tbox[i].is_inclusion()) out.push_back({path, "assertion in TBox"});
    detail::check_axiom(kb.tbox[i], kb.signature, path, out);
  }
  for (std::size_t i = 0; i < kb.abox.size(); ++i) {
    std::string path = "abox[" + std::to_string(i) + "]";
    if (kb.abox[i].is_inclusion()) out.push_back({path, "inclusion in ABox"});
    detail::check_axiom(kb.abox[i], kb.signature, path, out);
  }
  for (std::size_t i = 0; i < kb.weighted.size(); ++i) {
    const auto& w = kb.weighted[i];
    std::string path = "wtbox[" + std::to_string(i) + "]";
    if (!kb.is_distinguished(w.subject))
      out.push_back({path, "subject '" + w.subject + "' is not a distinguished concept"});
    if (w.consequent.contains_typicality())
      out.push_back({path, "typicality in the consequent of a weighted inclusion"});
    detail::check_concept_names(w.consequent, kb.signature, path, out);
  }
  return out;
}

}  // namespace fzt
