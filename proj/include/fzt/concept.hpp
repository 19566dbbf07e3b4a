#pragma once

// ALC concepts extended with a non-nestable typicality constructor T(C).
//
// A Concept is an immutable tree shared by reference; copies are cheap and
// equality is structural.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace fzt {

class NestedTypicalityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Concept {
 public:
  enum class Kind { atomic, top, bottom, neg, conj, disj, exists, forall, typ };

  // Defaults to Top so that containers of concepts are default constructible.
  Concept() : Concept(top()) {}

  static Concept atomic(std::string name) { return make(Kind::atomic, std::move(name), {}, {}); }
  static Concept top() {
    static const Concept t = make(Kind::top, {}, {}, {});
    return t;
  }
  static Concept bottom() {
    static const Concept b = make(Kind::bottom, {}, {}, {});
    return b;
  }
  static Concept neg(Concept c) { return make(Kind::neg, {}, std::move(c), {}); }
  static Concept conj(Concept a, Concept b) { return make(Kind::conj, {}, std::move(a), std::move(b)); }
  static Concept disj(Concept a, Concept b) { return make(Kind::disj, {}, std::move(a), std::move(b)); }
  static Concept exists(std::string role, Concept c) {
    return make(Kind::exists, std::move(role), std::move(c), {});
  }
  static Concept forall(std::string role, Concept c) {
    return make(Kind::forall, std::move(role), std::move(c), {});
  }
  // Throws NestedTypicalityError if c already contains T(.).
  static Concept typ(Concept c) {
    if (c.contains_typicality())
      throw NestedTypicalityError("nested typicality in T(" + c.str() + ")");
    return make(Kind::typ, {}, std::move(c), {});
  }

  Kind kind() const { return node_->kind; }
  // Concept name for atomic, role name for exists/forall, empty otherwise.
  const std::string& name() const { return node_->name; }
  const Concept& child() const { return *node_->first; }
  const Concept& left() const { return *node_->first; }
  const Concept& right() const { return *node_->second; }

  bool is_typicality() const { return kind() == Kind::typ; }
  bool contains_typicality() const { return node_->has_typ; }
  int depth() const { return node_->depth; }

  // Concept names and role names occurring anywhere in the tree.
  void collect_names(std::set<std::string>& concepts, std::set<std::string>& roles) const {
    switch (kind()) {
      case Kind::atomic: concepts.insert(name()); return;
      case Kind::top:
      case Kind::bottom: return;
      case Kind::exists:
      case Kind::forall:
        roles.insert(name());
        child().collect_names(concepts, roles);
        return;
      case Kind::conj:
      case Kind::disj:
        left().collect_names(concepts, roles);
        right().collect_names(concepts, roles);
        return;
      case Kind::neg:
      case Kind::typ: child().collect_names(concepts, roles); return;
    }
  }

  // Replaces atomic concepts by name; used to instantiate schemas.
  template <typename Fn>
  Concept substitute(Fn&& fn) const {
    switch (kind()) {
      case Kind::atomic: return fn(name());
      case Kind::top:
      case Kind::bottom: return *this;
      case Kind::neg: return neg(child().substitute(fn));
      case Kind::typ: return typ(child().substitute(fn));
      case Kind::exists: return exists(name(), child().substitute(fn));
      case Kind::forall: return forall(name(), child().substitute(fn));
      case Kind::conj: return conj(left().substitute(fn), right().substitute(fn));
      case Kind::disj: return disj(left().substitute(fn), right().substitute(fn));
    }
    return *this;
  }

  // Text form of the .fkb concept grammar.
  std::string str() const {
    switch (kind()) {
      case Kind::atomic: return name();
      case Kind::top: return "Top";
      case Kind::bottom: return "Bot";
      case Kind::neg: return "(not " + child().str() + ")";
      case Kind::conj: return "(and " + left().str() + " " + right().str() + ")";
      case Kind::disj: return "(or " + left().str() + " " + right().str() + ")";
      case Kind::exists: return "(some " + name() + " " + child().str() + ")";
      case Kind::forall: return "(all " + name() + " " + child().str() + ")";
      case Kind::typ: return "T(" + child().str() + ")";
    }
    return "?";
  }

  friend bool operator==(const Concept& a, const Concept& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.name() != b.name()) return false;
    if (bool(a.node_->first) != bool(b.node_->first)) return false;
    if (a.node_->first && !(*a.node_->first == *b.node_->first)) return false;
    if (bool(a.node_->second) != bool(b.node_->second)) return false;
    if (a.node_->second && !(*a.node_->second == *b.node_->second)) return false;
    return true;
  }

  friend bool operator<(const Concept& a, const Concept& b) { return a.str() < b.str(); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Concept> first;
    std::shared_ptr<const Concept> second;
    bool has_typ = false;
    int depth = 0;
  };

  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Concept make(Kind kind, std::string name, std::optional<Concept> first,
                      std::optional<Concept> second) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->name = std::move(name);
    int d = 0;
    bool t = kind == Kind::typ;
    if (first) {
      d = std::max(d, first->depth());
      t = t || first->contains_typicality();
      n->first = std::make_shared<const Concept>(std::move(*first));
    }
    if (second) {
      d = std::max(d, second->depth());
      t = t || second->contains_typicality();
      n->second = std::make_shared<const Concept>(std::move(*second));
    }
    bool constructor = kind != Kind::atomic && kind != Kind::top && kind != Kind::bottom && kind != Kind::typ;
    n->depth = constructor ? d + 1 : d;
    n->has_typ = t;
    return Concept(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace fzt
