#pragma once

// KLM postulates for fuzzy typicality inclusions, read in two ways: the ">= 1"
// family (REFL1 ... CM1) and the "> 0" family (REFL0 ... CM0), plus CMSTAR,
// which strengthens the first premise of CM0 to ">= 1".
//
//   REFL  T(C) <= C
//   LLE   |= A == B,  T(A) <= C            =>  T(B) <= C
//   RW    |= C <= D,  T(A) <= C            =>  T(A) <= D
//   AND   T(A) <= C,  T(A) <= D            =>  T(A) <= (and C D)
//   OR    T(A) <= C,  T(B) <= C            =>  T((or A B)) <= C
//   CM    T(A) <= D,  T(A) <= C            =>  T((and A D)) <= C
//
// Checks run on single interpretations. The validity premises of LLE and RW
// must be certified by a ValidityOracle; the premise catalog provides schema
// instances certified by bounded validity checking.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fzt/engine.hpp"
#include "fzt/interpretation.hpp"

namespace fzt {

enum class Postulate { REFL1, LLE1, RW1, AND1, OR1, CM1, REFL0, LLE0, RW0, AND0, OR0, CM0, CMSTAR };

inline constexpr Postulate kAllPostulates[] = {Postulate::REFL1, Postulate::LLE1, Postulate::RW1,  Postulate::AND1,
                                               Postulate::OR1,   Postulate::CM1,  Postulate::REFL0, Postulate::LLE0,
                                               Postulate::RW0,   Postulate::AND0, Postulate::OR0,  Postulate::CM0,
                                               Postulate::CMSTAR};

inline std::string_view to_string(Postulate p) {
  switch (p) {
    case Postulate::REFL1: return "REFL1";
    case Postulate::LLE1: return "LLE1";
    case Postulate::RW1: return "RW1";
    case Postulate::AND1: return "AND1";
    case Postulate::OR1: return "OR1";
    case Postulate::CM1: return "CM1";
    case Postulate::REFL0: return "REFL0";
    case Postulate::LLE0: return "LLE0";
    case Postulate::RW0: return "RW0";
    case Postulate::AND0: return "AND0";
    case Postulate::OR0: return "OR0";
    case Postulate::CM0: return "CM0";
    case Postulate::CMSTAR: return "CMSTAR";
  }
  return "?";
}

// Case-insensitive; also accepts primes ("AND'", "CM''") and "CM*".
inline std::optional<Postulate> parse_postulate(std::string_view name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "CM*") return Postulate::CMSTAR;
  if (s.size() > 2 && s.substr(s.size() - 2) == "''") s = s.substr(0, s.size() - 2) + "0";
  else if (!s.empty() && s.back() == '\'') s = s.substr(0, s.size() - 1) + "1";
  for (Postulate p : kAllPostulates)
    if (to_string(p) == s) return p;
  return std::nullopt;
}

inline constexpr unsigned kA = 1, kB = 2, kC = 4, kD = 8;  // metavariable bits

inline unsigned metavariables(Postulate p) {
  switch (p) {
    case Postulate::REFL1:
    case Postulate::REFL0: return kC;
    case Postulate::LLE1:
    case Postulate::LLE0:
    case Postulate::OR1:
    case Postulate::OR0: return kA | kB | kC;
    default: return kA | kC | kD;
  }
}

/// Concepts for the metavariables A, B, C, D; unused ones stay empty.
struct Instantiation {
  std::optional<Concept> a, b, c, d;

  unsigned used() const { return (a ? kA : 0) | (b ? kB : 0) | (c ? kC : 0) | (d ? kD : 0); }
  std::string str() const {
    std::string out;
    auto add = [&](const char* n, const std::optional<Concept>& v) {
      if (!v) return;
      if (!out.empty()) out += ", ";
      out += std::string(n) + " = " + v->str();
    };
    add("A", a);
    add("B", b);
    add("C", c);
    add("D", d);
    return out;
  }
};

enum class PremiseKind { equivalence, inclusion };

/// |= lhs == rhs or |= lhs <= rhs, both read as validity of ">= 1" inclusions.
struct ValidityPremise {
  PremiseKind kind;
  Concept lhs, rhs;
  std::string str() const { return "|= " + lhs.str() + (kind == PremiseKind::equivalence ? " == " : " <= ") + rhs.str(); }
  friend bool operator==(const ValidityPremise&, const ValidityPremise&) = default;
};

using ValidityOracle = std::function<bool(const ValidityPremise&)>;

class PostulateArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UncertifiedPremiseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PostulateInstance {
  std::optional<ValidityPremise> validity;
  std::vector<FuzzyAxiom> premises;
  FuzzyAxiom conclusion;
};

inline PostulateInstance instantiate(Postulate p, const Instantiation& in) {
  if (in.used() != metavariables(p))
    throw PostulateArityError(std::string(to_string(p)) + ": wrong metavariables in instantiation {" + in.str() + "}");
  const bool strong = p == Postulate::REFL1 || p == Postulate::LLE1 || p == Postulate::RW1 || p == Postulate::AND1 ||
                      p == Postulate::OR1 || p == Postulate::CM1;
  auto incl = [](const Concept& lhs, const Concept& rhs, bool ge_one) {
    return ge_one ? FuzzyAxiom::inclusion(Concept::typ(lhs), rhs, Comparator::ge, Degree::one())
                  : FuzzyAxiom::inclusion(Concept::typ(lhs), rhs, Comparator::gt, Degree::zero());
  };
  PostulateInstance out;
  switch (p) {
    case Postulate::REFL1:
    case Postulate::REFL0: out.conclusion = incl(*in.c, *in.c, strong); break;
    case Postulate::LLE1:
    case Postulate::LLE0:
      out.validity = ValidityPremise{PremiseKind::equivalence, *in.a, *in.b};
      out.premises = {incl(*in.a, *in.c, strong)};
      out.conclusion = incl(*in.b, *in.c, strong);
      break;
    case Postulate::RW1:
    case Postulate::RW0:
      out.validity = ValidityPremise{PremiseKind::inclusion, *in.c, *in.d};
      out.premises = {incl(*in.a, *in.c, strong)};
      out.conclusion = incl(*in.a, *in.d, strong);
      break;
    case Postulate::AND1:
    case Postulate::AND0:
      out.premises = {incl(*in.a, *in.c, strong), incl(*in.a, *in.d, strong)};
      out.conclusion = incl(*in.a, Concept::conj(*in.c, *in.d), strong);
      break;
    case Postulate::OR1:
    case Postulate::OR0:
      out.premises = {incl(*in.a, *in.c, strong), incl(*in.b, *in.c, strong)};
      out.conclusion = incl(Concept::disj(*in.a, *in.b), *in.c, strong);
      break;
    case Postulate::CM1:
    case Postulate::CM0:
      out.premises = {incl(*in.a, *in.d, strong), incl(*in.a, *in.c, strong)};
      out.conclusion = incl(Concept::conj(*in.a, *in.d), *in.c, strong);
      break;
    case Postulate::CMSTAR:
      out.premises = {incl(*in.a, *in.d, true), incl(*in.a, *in.c, false)};
      out.conclusion = incl(Concept::conj(*in.a, *in.d), *in.c, false);
      break;
  }
  return out;
}

struct PostulateWitness {
  FuzzyInterpretation interpretation;
  Postulate postulate;
  Instantiation instantiation;
  std::vector<Degree> premise_degrees;
  Degree conclusion_degree;
};

struct PostulateVerdict {
  bool holds = true;
  bool premises_held = false;  // false means the instance held vacuously
  std::optional<PostulateWitness> witness;
};

/// Evaluates one postulate instance in I. Throws PostulateArityError for a
/// bad instantiation and UncertifiedPremiseError if the oracle rejects the
/// validity premise of LLE/RW.
inline PostulateVerdict check_instance(const FuzzyInterpretation& I, Postulate p, const Instantiation& in,
                                       const ValidityOracle& oracle) {
  PostulateInstance inst = instantiate(p, in);
  if (inst.validity && !(oracle && oracle(*inst.validity)))
    throw UncertifiedPremiseError("uncertified validity premise " + inst.validity->str());
  PostulateVerdict v;
  std::vector<Degree> degrees;
  for (const auto& ax : inst.premises) {
    Degree d = axiom_degree(I, ax);
    if (!compare(d, ax.comparator, ax.threshold)) return v;
    degrees.push_back(d);
  }
  v.premises_held = true;
  Degree concl = axiom_degree(I, inst.conclusion);
  if (compare(concl, inst.conclusion.comparator, inst.conclusion.threshold)) return v;
  v.holds = false;
  v.witness = PostulateWitness{I, p, in, std::move(degrees), concl};
  return v;
}

// ---------------------------------------------------------------------------
// Premise catalog

struct CatalogEntry {
  std::string name;
  ValidityPremise schema;  // over atoms X, Y, Z and role r
  std::string note;
  SearchStats certification;
};

namespace detail {

inline std::vector<CatalogEntry> catalog_candidates() {
  using C = Concept;
  const C X = C::atomic("X"), Y = C::atomic("Y"), Z = C::atomic("Z");
  const auto eq = PremiseKind::equivalence;
  const auto inc = PremiseKind::inclusion;
  return {
      {"refl", {eq, X, X}, "pointwise identity; needs a residuated implication", {}},
      {"and-comm", {eq, C::conj(X, Y), C::conj(Y, X)}, "t-norms are commutative", {}},
      {"or-comm", {eq, C::disj(X, Y), C::disj(Y, X)}, "s-norms are commutative", {}},
      {"and-assoc", {eq, C::conj(C::conj(X, Y), Z), C::conj(X, C::conj(Y, Z))}, "t-norms are associative", {}},
      {"or-assoc", {eq, C::disj(C::disj(X, Y), Z), C::disj(X, C::disj(Y, Z))}, "s-norms are associative", {}},
      {"and-top", {eq, C::conj(X, C::top()), X}, "1 is the t-norm unit", {}},
      {"or-bot", {eq, C::disj(X, C::bottom()), X}, "0 is the s-norm unit", {}},
      {"and-idem", {eq, C::conj(X, X), X}, "min is idempotent", {}},
      {"or-idem", {eq, C::disj(X, X), X}, "max is idempotent", {}},
      {"double-neg", {eq, C::neg(C::neg(X)), X}, "involutive negation", {}},
      {"or-top", {eq, C::disj(X, C::top()), C::top()}, "both sides have degree 1 everywhere", {}},
      {"and-bot", {eq, C::conj(X, C::bottom()), C::bottom()}, "both sides have degree 0 everywhere", {}},
      {"neg-top", {eq, C::neg(C::top()), C::bottom()}, "both sides have degree 0 everywhere", {}},
      {"neg-bot", {eq, C::neg(C::bottom()), C::top()}, "both sides have degree 1 everywhere", {}},
      {"all-top", {eq, C::forall("r", C::top()), C::top()}, "x -> 1 is 1", {}},
      {"some-bot", {eq, C::exists("r", C::bottom()), C::bottom()}, "x (*) 0 is 0", {}},
      {"and-elim", {inc, C::conj(X, Y), X}, "t-norm below min; residuated implication", {}},
      {"or-intro", {inc, X, C::disj(X, Y)}, "s-norm above max; residuated implication", {}},
      {"to-top", {inc, X, C::top()}, "implication into 1 is 1", {}},
      {"from-bot", {inc, C::bottom(), X}, "implication from 0 is 1", {}},
      {"contradiction", {inc, C::conj(X, C::neg(X)), C::bottom()}, "x (*) neg x = 0", {}},
  };
}

inline std::vector<FuzzyAxiom> validity_axioms(const ValidityPremise& vp) {
  std::vector<FuzzyAxiom> out{FuzzyAxiom::inclusion(vp.lhs, vp.rhs, Comparator::ge, Degree::one())};
  if (vp.kind == PremiseKind::equivalence)
    out.push_back(FuzzyAxiom::inclusion(vp.rhs, vp.lhs, Comparator::ge, Degree::one()));
  return out;
}

}  // namespace detail

/// Bounds used to certify catalog entries: grid q = 6 and the largest domain
/// size up to 3 whose space fits into 200000 interpretations.
inline SearchConfig certification_config(const ValidityPremise& vp, Logic logic) {
  SearchConfig cfg;
  cfg.logic = logic;
  cfg.denominator = 6;
  cfg.budget = 200'000;
  std::set<std::string> concepts, roles;
  vp.lhs.collect_names(concepts, roles);
  vp.rhs.collect_names(concepts, roles);
  Signature sig({concepts.begin(), concepts.end()}, {roles.begin(), roles.end()}, {});
  cfg.max_domain = 1;
  for (std::size_t n = 3; n >= 1; --n)
    if (count_interpretations_up_to(sig, n, cfg.denominator) <= cfg.budget) {
      cfg.max_domain = n;
      break;
    }
  return cfg;
}

/// True when no interpretation within the certification bounds falsifies the
/// premise. Not a proof of validity.
inline bool certify_bounded(const ValidityPremise& vp, Logic logic, SearchStats* stats = nullptr) {
  SearchConfig cfg = certification_config(vp, logic);
  for (const auto& ax : detail::validity_axioms(vp)) {
    auto v = check_validity_bounded(ax, logic, cfg);
    if (stats) *stats = v.stats;
    if (v.refuted) return false;
  }
  return true;
}

/// Catalog of premise schemas that survive bounded validity checking in
/// `logic`. Results are cached per logic.
inline const std::vector<CatalogEntry>& valid_premise_catalog(Logic logic) {
  static std::mutex mu;
  static std::map<Logic, std::vector<CatalogEntry>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(logic);
  if (it != cache.end()) return it->second;
  std::vector<CatalogEntry> out;
  for (auto& e : detail::catalog_candidates())
    if (certify_bounded(e.schema, logic, &e.certification)) out.push_back(std::move(e));
  return cache.emplace(logic, std::move(out)).first->second;
}

/// Substitutes X, Y, Z in a catalog schema.
inline ValidityPremise instantiate_schema(const ValidityPremise& schema, const Concept& x, const Concept& y,
                                          const Concept& z) {
  auto sub = [&](const std::string& n) {
    if (n == "X") return x;
    if (n == "Y") return y;
    if (n == "Z") return z;
    return Concept::atomic(n);
  };
  return {schema.kind, schema.lhs.substitute(sub), schema.rhs.substitute(sub)};
}

/// Oracle accepting exactly the listed premises.
inline ValidityOracle certified_set(std::vector<ValidityPremise> premises) {
  return [premises = std::move(premises)](const ValidityPremise& vp) {
    return std::find(premises.begin(), premises.end(), vp) != premises.end();
  };
}

/// Oracle running the bounded validity check on demand.
inline ValidityOracle bounded_validity_oracle(Logic logic) {
  return [logic](const ValidityPremise& vp) { return certify_bounded(vp, logic); };
}

// ---------------------------------------------------------------------------
// Random trials and counterexample search

/// Shape of generated concepts: depth bound and atoms. One role "r" is
/// available to the quantifiers.
struct ConceptShape {
  int max_depth = 2;
  std::vector<std::string> atoms = {"A", "B", "C"};
  std::string role = "r";
};

class ConceptGenerator {
 public:
  ConceptGenerator(ConceptShape shape, std::uint64_t seed) : shape_(std::move(shape)), rng_(seed) {}

  Concept generate(int max_depth) {
    if (max_depth <= 0 || pick(3) == 0) {
      if (pick(10) == 0) return pick(2) ? Concept::top() : Concept::bottom();
      return Concept::atomic(shape_.atoms[pick(shape_.atoms.size())]);
    }
    switch (pick(5)) {
      case 0: return Concept::neg(generate(max_depth - 1));
      case 1: return Concept::conj(generate(max_depth - 1), generate(max_depth - 1));
      case 2: return Concept::disj(generate(max_depth - 1), generate(max_depth - 1));
      case 3: return Concept::exists(shape_.role, generate(max_depth - 1));
      default: return Concept::forall(shape_.role, generate(max_depth - 1));
    }
  }
  Concept generate() { return generate(shape_.max_depth); }

  Signature signature() const { return Signature(shape_.atoms, {shape_.role}, {}); }

  // Degrees are 0 or 1 with probability 1/4 each, otherwise uniform on the grid,
  // so that ">= 1" premises are not vacuous too often.
  Degree degree(std::int64_t q) {
    switch (pick(4)) {
      case 0: return Degree::zero();
      case 1: return Degree::one();
      default: return Degree(static_cast<std::int64_t>(pick(static_cast<std::uint64_t>(q) + 1)), q);
    }
  }

  FuzzyInterpretation interpretation(Logic logic, const Signature& sig, std::size_t max_domain, std::int64_t max_q) {
    std::size_t n = 1 + pick(max_domain);
    std::int64_t q = 1 + static_cast<std::int64_t>(pick(static_cast<std::uint64_t>(max_q)));
    auto I = FuzzyInterpretation::with_size(logic, sig, n);
    for (std::size_t c = 0; c < sig.concepts().size(); ++c)
      for (auto& d : I.concept_values(c)) d = degree(q);
    for (std::size_t r = 0; r < sig.roles().size(); ++r)
      for (auto& d : I.role_values(r)) d = degree(q);
    return I;
  }

  std::uint64_t pick(std::uint64_t n) { return rng_() % n; }
  const ConceptShape& shape() const { return shape_; }

 private:
  ConceptShape shape_;
  std::mt19937_64 rng_;
};

struct TrialConfig {
  std::uint64_t trials = 10'000;
  std::size_t max_domain = 5;
  std::int64_t max_denominator = 6;
  ConceptShape shape;
  std::uint64_t seed = 1;
};

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t nonvacuous = 0;   // premises held
  std::uint64_t violations = 0;
  std::uint64_t uncertified = 0;  // validity premise rejected; counted, not checked
  std::optional<PostulateWitness> first_violation;
};

namespace detail {

// Random instantiation. LLE/RW premises come from the catalog so they are
// certified by construction.
inline std::pair<Instantiation, std::optional<ValidityPremise>> random_instantiation(
    Postulate p, Logic logic, ConceptGenerator& gen) {
  Instantiation in;
  std::optional<ValidityPremise> vp;
  const unsigned mv = metavariables(p);
  const bool lle = p == Postulate::LLE1 || p == Postulate::LLE0;
  const bool rw = p == Postulate::RW1 || p == Postulate::RW0;
  if (lle || rw) {
    const auto& catalog = valid_premise_catalog(logic);
    std::vector<const CatalogEntry*> fitting;
    for (const auto& e : catalog)
      if ((e.schema.kind == PremiseKind::equivalence) == lle || rw) fitting.push_back(&e);
    if (!fitting.empty()) {
      const CatalogEntry& e = *fitting[gen.pick(fitting.size())];
      int schema_depth = std::max(e.schema.lhs.depth(), e.schema.rhs.depth());
      int sub_depth = std::max(0, gen.shape().max_depth - schema_depth);
      ValidityPremise inst =
          instantiate_schema(e.schema, gen.generate(sub_depth), gen.generate(sub_depth), gen.generate(sub_depth));
      // An inclusion can discharge an RW premise directly; an equivalence can
      // discharge it in either direction.
      if (rw && inst.kind == PremiseKind::equivalence && gen.pick(2)) std::swap(inst.lhs, inst.rhs);
      inst.kind = lle ? PremiseKind::equivalence : PremiseKind::inclusion;
      vp = inst;
      if (lle) {
        in.a = inst.lhs;
        in.b = inst.rhs;
      } else {
        in.c = inst.lhs;
        in.d = inst.rhs;
      }
    }
  }
  if ((mv & kA) && !in.a) in.a = gen.generate();
  if ((mv & kB) && !in.b) in.b = gen.generate();
  if ((mv & kC) && !in.c) in.c = gen.generate();
  if ((mv & kD) && !in.d) in.d = gen.generate();
  return {in, vp};
}

}  // namespace detail

/// Randomized interpretation/instantiation trials for one postulate.
inline TrialStats run_random_trials(Postulate p, Logic logic, const TrialConfig& cfg) {
  ConceptGenerator gen(cfg.shape, cfg.seed);
  const Signature sig = gen.signature();
  TrialStats stats;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto [in, vp] = detail::random_instantiation(p, logic, gen);
    auto I = gen.interpretation(logic, sig, cfg.max_domain, cfg.max_denominator);
    ++stats.trials;
    ValidityOracle oracle;
    if (vp) oracle = certified_set({*vp});
    PostulateVerdict v;
    try {
      v = check_instance(I, p, in, oracle);
    } catch (const UncertifiedPremiseError&) {
      ++stats.uncertified;
      continue;
    }
    if (v.premises_held) ++stats.nonvacuous;
    if (!v.holds) {
      ++stats.violations;
      if (!stats.first_violation) stats.first_violation = v.witness;
    }
  }
  return stats;
}

struct CounterexampleResult {
  std::optional<PostulateWitness> witness;
  std::uint64_t instantiations = 0;  // atomic instantiations searched exhaustively
  std::uint64_t examined = 0;        // interpretations, both phases
  std::uint64_t random_trials = 0;
  bool truncated = false;  // some exhaustive search was cut by the budget
};

/// Two phases. First, exhaustive bounded search (engine order) over atomic
/// instantiations: each metavariable is its own atom, and for LLE/RW every
/// catalog schema with atoms X, Y, Z. Then `random_trials` random
/// instantiations within `shape` on random interpretations within the bounds.
/// Returns the first violation found.
inline CounterexampleResult search_counterexample(Postulate p, Logic logic, SearchConfig cfg,
                                                  const ConceptShape& shape = {}, std::uint64_t random_trials = 0) {
  cfg.logic = logic;
  cfg.mode = SearchMode::plain;
  CounterexampleResult out;

  std::vector<std::pair<Instantiation, std::optional<ValidityPremise>>> atomic;
  const unsigned mv = metavariables(p);
  auto fill = [&](Instantiation in) {
    if ((mv & kA) && !in.a) in.a = Concept::atomic("A");
    if ((mv & kB) && !in.b) in.b = Concept::atomic("B");
    if ((mv & kC) && !in.c) in.c = Concept::atomic("C");
    if ((mv & kD) && !in.d) in.d = Concept::atomic("D");
    return in;
  };
  const bool lle = p == Postulate::LLE1 || p == Postulate::LLE0;
  const bool rw = p == Postulate::RW1 || p == Postulate::RW0;
  if (lle || rw) {
    for (const auto& e : valid_premise_catalog(logic)) {
      if (lle && e.schema.kind != PremiseKind::equivalence) continue;
      Instantiation in;
      ValidityPremise vp{lle ? PremiseKind::equivalence : PremiseKind::inclusion, e.schema.lhs, e.schema.rhs};
      if (lle) {
        in.a = vp.lhs;
        in.b = vp.rhs;
      } else {
        in.c = vp.lhs;
        in.d = vp.rhs;
      }
      atomic.emplace_back(fill(in), vp);
    }
  } else {
    atomic.emplace_back(fill({}), std::nullopt);
  }

  for (const auto& [in, vp] : atomic) {
    ValidityOracle oracle = vp ? certified_set({*vp}) : ValidityOracle{};
    PostulateInstance inst = instantiate(p, in);
    std::set<std::string> concepts, roles, individuals;
    for (const auto& ax : inst.premises) ax.collect_names(concepts, roles, individuals);
    inst.conclusion.collect_names(concepts, roles, individuals);
    Signature sig({concepts.begin(), concepts.end()}, {roles.begin(), roles.end()}, {});
    auto found = search_interpretations(sig, cfg, [&](const FuzzyInterpretation& I) {
      return Visit{true, !check_instance(I, p, in, oracle).holds};
    });
    ++out.instantiations;
    out.examined += found.stats.examined;
    out.truncated = out.truncated || found.stats.truncated;
    if (found.hit) {
      out.witness = check_instance(*found.hit, p, in, oracle).witness;
      return out;
    }
  }

  ConceptGenerator gen(shape, cfg.seed == 0 ? 1 : cfg.seed);
  const Signature sig = gen.signature();
  for (std::uint64_t t = 0; t < random_trials; ++t) {
    auto [in, vp] = detail::random_instantiation(p, logic, gen);
    auto I = gen.interpretation(logic, sig, cfg.max_domain, cfg.denominator);
    ++out.random_trials;
    ++out.examined;
    ValidityOracle oracle = vp ? certified_set({*vp}) : ValidityOracle{};
    PostulateVerdict v;
    try {
      v = check_instance(I, p, in, oracle);
    } catch (const UncertifiedPremiseError&) {
      continue;
    }
    if (!v.holds) {
      out.witness = v.witness;
      return out;
    }
  }
  return out;
}

}  // namespace fzt
