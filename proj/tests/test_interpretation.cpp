#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fzt/fint.hpp"
#include "fzt/interpretation.hpp"
#include "fzt/parser.hpp"
#include "generators.hpp"
#include "reference_eval.hpp"

using fzt::Concept;
using fzt::Degree;
using fzt::Logic;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FZT_SAMPLES_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fzt::FuzzyInterpretation three_point(Logic logic, Degree a, Degree b, Degree c) {
  fzt::FuzzyInterpretation I(logic, fzt::Signature({"C", "D"}, {}, {"i"}), {"a", "b", "c"});
  I.set_concept("C", 0, a);
  I.set_concept("C", 1, b);
  I.set_concept("C", 2, c);
  return I;
}

const Concept C = Concept::atomic("C");
const Concept D = Concept::atomic("D");

}  // namespace

TEST(Typicality, UniqueMaximum) {
  auto I = three_point(Logic::godel, Degree(1, 2), Degree(9, 10), Degree::zero());
  auto t = fzt::extension(I, Concept::typ(C));
  EXPECT_EQ(t, (std::vector<Degree>{Degree::zero(), Degree::one(), Degree::zero()}));
  EXPECT_EQ(fzt::typical_elements(I, C), std::vector<fzt::Element>{1});
}

TEST(Typicality, TiesShareTypicality) {
  auto I = three_point(Logic::zadeh, Degree(9, 10), Degree(9, 10), Degree(1, 10));
  EXPECT_EQ(fzt::typical_elements(I, C), (std::vector<fzt::Element>{0, 1}));
}

TEST(Typicality, EmptyWhenIdenticallyZero) {
  auto I = three_point(Logic::godel, Degree::zero(), Degree::zero(), Degree::zero());
  EXPECT_TRUE(fzt::typical_elements(I, C).empty());
}

TEST(Evaluation, TopBottomAndZadehConjunction) {
  fzt::FuzzyInterpretation I(Logic::zadeh, fzt::Signature({"A", "B"}, {}, {}), {"x", "y"});
  I.set_concept("A", 0, Degree::parse("0.4"));
  I.set_concept("B", 0, Degree::parse("0.7"));
  for (Logic l : fzt::kAllLogics) {
    I.set_logic(l);
    for (fzt::Element x = 0; x < 2; ++x) {
      EXPECT_TRUE(fzt::eval_concept(I, Concept::top(), x).is_one());
      EXPECT_TRUE(fzt::eval_concept(I, Concept::bottom(), x).is_zero());
    }
  }
  I.set_logic(Logic::zadeh);
  EXPECT_EQ(fzt::eval_concept(I, Concept::conj(Concept::atomic("A"), Concept::atomic("B")), 0), Degree::parse("0.4"));
  EXPECT_THROW(fzt::eval_concept(I, Concept::atomic("Z"), 0), fzt::SemanticError);
  EXPECT_THROW(fzt::eval_concept(I, Concept::top(), 2), fzt::SemanticError);
}

TEST(Evaluation, QuantifiersOverFiniteDomain) {
  fzt::FuzzyInterpretation I(Logic::godel, fzt::Signature({"A"}, {"r"}, {}), {"x", "y"});
  I.set_concept("A", 0, Degree(1, 4));
  I.set_concept("A", 1, Degree(3, 4));
  I.set_role("r", 0, 0, Degree::one());
  I.set_role("r", 0, 1, Degree(1, 2));
  auto some = Concept::exists("r", Concept::atomic("A"));
  auto all = Concept::forall("r", Concept::atomic("A"));
  // max(min(1, 1/4), min(1/2, 3/4)) and min(1 -> 1/4, 1/2 -> 3/4)
  EXPECT_EQ(fzt::eval_concept(I, some, 0), Degree(1, 2));
  EXPECT_EQ(fzt::eval_concept(I, all, 0), Degree(1, 4));
  EXPECT_TRUE(fzt::eval_concept(I, some, 1).is_zero());
  EXPECT_TRUE(fzt::eval_concept(I, all, 1).is_one());
}

TEST(Preference, ThreePointOrder) {
  auto I = three_point(Logic::godel, Degree(1, 2), Degree(9, 10), Degree::zero());
  auto p = fzt::induced_preference(I, C);
  using P = std::pair<fzt::Element, fzt::Element>;
  // b < a, a < c, b < c
  EXPECT_EQ(p.pairs(), (std::vector<P>{{0, 2}, {1, 0}, {1, 2}}));
  auto flat = three_point(Logic::godel, Degree(1, 3), Degree(1, 3), Degree(1, 3));
  EXPECT_TRUE(fzt::induced_preference(flat, C).pairs().empty());
}

TEST(Preference, PenguinBirds) {
  auto kb = fzt::parse_kb(slurp("penguin.fkb"));
  auto I = fzt::parse_fint(slurp("penguin.fint"), kb.signature, kb.logic).interpretation;
  auto p = fzt::induced_preference(I, Concept::atomic("Bird"));
  auto reddy = *I.element("reddy"), opus = *I.element("opus");
  EXPECT_TRUE(p.less(reddy, opus));
  EXPECT_FALSE(p.less(opus, reddy));
}

TEST(AxiomDegree, Examples) {
  fzt::FuzzyInterpretation I(Logic::zadeh, fzt::Signature({"C", "D"}, {}, {"a"}), {"a"});
  I.set_concept("C", 0, Degree::parse("0.4"));
  I.set_concept("D", 0, Degree::parse("0.2"));
  I.bind("a", 0);
  auto inc = fzt::FuzzyAxiom::inclusion(C, D, fzt::Comparator::ge, Degree::parse("0.6"));
  EXPECT_EQ(fzt::axiom_degree(I, inc), Degree::parse("0.6"));
  EXPECT_TRUE(fzt::satisfies(I, inc));
  inc.comparator = fzt::Comparator::gt;
  EXPECT_FALSE(fzt::satisfies(I, inc));

  I.set_logic(Logic::godel);
  I.set_concept("D", 0, Degree::parse("0.5"));
  EXPECT_TRUE(fzt::axiom_degree(I, inc).is_one());

  I.set_concept("C", 0, Degree::one());
  EXPECT_TRUE(fzt::satisfies(I, fzt::FuzzyAxiom::assertion(C, "a", fzt::Comparator::ge, Degree::one())));
}

TEST(AxiomDegree, TypicalBirdsFly) {
  fzt::FuzzyInterpretation I(Logic::godel, fzt::Signature({"Bird", "Fly"}, {}, {}), {"x", "y", "z"});
  I.set_concept("Bird", 0, Degree::one());
  I.set_concept("Bird", 1, Degree::one());
  I.set_concept("Bird", 2, Degree(1, 2));
  I.set_concept("Fly", 0, Degree::one());
  I.set_concept("Fly", 1, Degree::one());
  auto ax = fzt::FuzzyAxiom::inclusion(Concept::typ(Concept::atomic("Bird")), Concept::atomic("Fly"),
                                       fzt::Comparator::ge, Degree::one());
  for (Logic l : fzt::kAllLogics) {
    I.set_logic(l);
    EXPECT_TRUE(fzt::axiom_degree(I, ax).is_one()) << fzt::to_string(l);
  }
}

TEST(StrictModel, PenguinColours) {
  auto kb = fzt::parse_kb(slurp("penguin.fkb"));
  auto I = fzt::parse_fint(slurp("penguin.fint"), kb.signature, kb.logic).interpretation;
  EXPECT_TRUE(fzt::is_model_strict(I, kb).ok);
  EXPECT_TRUE(fzt::satisfies(I, kb.tbox[0]));

  I.set_concept("Yellow", *I.element("opus"), Degree::one());
  auto check = fzt::is_model_strict(I, kb);
  EXPECT_FALSE(check.ok);
  ASSERT_EQ(check.violations.size(), 1u);
  EXPECT_EQ(check.violations[0].section, "tbox");
  EXPECT_EQ(check.violations[0].axiom.str(), "(and Yellow Black) <= Bot >= 1");
  EXPECT_TRUE(check.violations[0].degree.is_zero());

  fzt::WeightedKB empty;
  empty.signature = kb.signature;
  EXPECT_TRUE(fzt::is_model_strict(I, empty).ok);
}

TEST(Properties, TypicalityNonEmptyAndTwoValued) {
  gen::Rng rng(101);
  auto sig = gen::small_signature();
  for (int t = 0; t < 3000; ++t) {
    Logic l = fzt::kAllLogics[rng.below(4)];
    auto I = gen::interpretation(rng, l, sig, 5, 6, true);
    Concept c = gen::concept_expr(rng, sig, 3);
    auto ext = fzt::extension(I, c);
    auto typ = fzt::extension(I, Concept::typ(c));
    bool positive = std::any_of(ext.begin(), ext.end(), [](const Degree& d) { return !d.is_zero(); });
    EXPECT_EQ(!fzt::typical_elements(I, c).empty(), positive);
    for (const auto& d : typ) EXPECT_TRUE(d.is_zero() || d.is_one());
    auto pref = fzt::induced_preference(I, c);
    EXPECT_EQ(pref.minimal_positive(), fzt::typical_elements(I, c));
  }
}

TEST(Properties, PreferenceIsModularStrictOrder) {
  gen::Rng rng(202);
  auto sig = gen::small_signature();
  for (int t = 0; t < 1000; ++t) {
    auto I = gen::interpretation(rng, fzt::kAllLogics[rng.below(4)], sig, 5, 4, true);
    auto p = fzt::induced_preference(I, gen::concept_expr(rng, sig, 2));
    const std::size_t n = p.size();
    for (fzt::Element x = 0; x < n; ++x) {
      EXPECT_FALSE(p.less(x, x));
      for (fzt::Element y = 0; y < n; ++y) {
        if (p.less(x, y)) EXPECT_FALSE(p.less(y, x));
        for (fzt::Element z = 0; z < n; ++z) {
          if (p.less(x, y) && p.less(y, z)) EXPECT_TRUE(p.less(x, z));
          // modularity: x < y implies x < z or z < y
          if (p.less(x, y)) EXPECT_TRUE(p.less(x, z) || p.less(z, y));
        }
      }
    }
  }
}

TEST(Properties, TypicalityIsValuationDetermined) {
  gen::Rng rng(303);
  auto sig = gen::small_signature();
  for (int t = 0; t < 1000; ++t) {
    auto I = gen::interpretation(rng, Logic::godel, sig, 4, 4, true);
    Concept c = gen::concept_expr(rng, sig, 2);
    // (and c Top) and (not (not c)) in Zadeh have the same valuation as c
    EXPECT_EQ(fzt::extension(I, Concept::typ(Concept::conj(c, Concept::top()))), fzt::extension(I, Concept::typ(c)));
    Concept d = gen::concept_expr(rng, sig, 2);
    if (fzt::extension(I, c) == fzt::extension(I, d))
      EXPECT_EQ(fzt::extension(I, Concept::typ(c)), fzt::extension(I, Concept::typ(d)));
    I.set_logic(Logic::zadeh);
    EXPECT_EQ(fzt::extension(I, Concept::typ(Concept::neg(Concept::neg(c)))), fzt::extension(I, Concept::typ(c)));
  }
}

TEST(Properties, AgreesWithReferenceEvaluator) {
  gen::Rng rng(404);
  auto sig = gen::small_signature();
  for (int t = 0; t < 3000; ++t) {
    Logic l = fzt::kAllLogics[rng.below(4)];
    auto I = gen::interpretation(rng, l, sig, 4, 6, rng.coin());
    Concept c = rng.coin() ? gen::concept_expr(rng, sig, 3) : gen::concept_with_typ(rng, sig, 3);
    auto ext = fzt::extension(I, c);
    for (fzt::Element x = 0; x < I.size(); ++x)
      ASSERT_TRUE(ref::same(ref::eval(I, c, x), ext[x])) << c.str() << " under " << fzt::to_string(l);
    auto ax = fzt::FuzzyAxiom::inclusion(c, gen::concept_expr(rng, sig, 2), gen::comparator(rng), rng.degree(4));
    EXPECT_EQ(fzt::satisfies(I, ax), ref::satisfies(I, ax));
  }
}

TEST(Properties, GridClosureForNonProductLogics) {
  gen::Rng rng(505);
  auto sig = gen::small_signature();
  for (int t = 0; t < 1000; ++t) {
    Logic l = fzt::kAllLogics[rng.below(3)];
    ASSERT_NE(l, Logic::product);
    std::int64_t q = rng.range(1, 6);
    auto I = fzt::FuzzyInterpretation::with_size(l, sig, 1 + rng.below(3));
    for (std::size_t c = 0; c < 3; ++c)
      for (auto& d : I.concept_values(c)) d = rng.degree(q);
    for (auto& d : I.role_values(0)) d = rng.degree(q);
    for (const auto& d : fzt::extension(I, gen::concept_with_typ(rng, sig, 3)))
      EXPECT_EQ(q % d.value().den(), 0) << d;
  }
}

TEST(Fint, PenguinFileLoads) {
  auto kb = fzt::parse_kb(slurp("penguin.fkb"));
  auto doc = fzt::parse_fint(slurp("penguin.fint"), kb.signature, Logic::zadeh);
  const auto& I = doc.interpretation;
  EXPECT_EQ(I.domain(), (std::vector<std::string>{"reddy", "opus"}));
  EXPECT_EQ(I.concept_degree("Bird", 1), Degree(4, 5));
  EXPECT_EQ(I.concept_degree("Penguin", 0), Degree(1, 5));
  EXPECT_TRUE(I.concept_degree("Canary", 0).is_zero());
  EXPECT_EQ(I.logic(), doc.declared_logic.value_or(Logic::zadeh));
}

TEST(Fint, RoundTrip) {
  gen::Rng rng(606);
  auto sig = gen::small_signature();
  for (int t = 0; t < 300; ++t) {
    auto I = gen::interpretation(rng, fzt::kAllLogics[rng.below(4)], sig, 4, 7, true);
    auto doc = fzt::parse_fint(fzt::serialize_fint(I), sig, Logic::godel);
    EXPECT_EQ(doc.interpretation, I);
    EXPECT_EQ(doc.declared_logic, I.logic());
  }
}

TEST(Fint, FallbackLogicAndErrors) {
  fzt::Signature sig({"A"}, {"r"}, {"a"});
  auto doc = fzt::parse_fint("domain x y\nconcept A y 0.5\n", sig, Logic::product);
  EXPECT_FALSE(doc.declared_logic);
  EXPECT_EQ(doc.interpretation.logic(), Logic::product);
  EXPECT_FALSE(doc.interpretation.is_bound("a"));

  auto kind = [&](const std::string& text) {
    try {
      fzt::parse_fint(text, sig, Logic::godel);
    } catch (const fzt::ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << text;
    return fzt::ParseError::Kind::invalid_kb;
  };
  using K = fzt::ParseError::Kind;
  EXPECT_EQ(kind("concept A x 1\n"), K::syntax);
  EXPECT_EQ(kind("domain x x\n"), K::syntax);
  EXPECT_EQ(kind("domain x\nconcept B x 1\n"), K::undeclared_name);
  EXPECT_EQ(kind("domain x\nconcept A z 1\n"), K::syntax);
  EXPECT_EQ(kind("domain x\nconcept A x 1.5\n"), K::threshold_range);
  EXPECT_EQ(kind("domain x\nrole r x 1\n"), K::syntax);
  EXPECT_EQ(kind("domain x\nindividual b x\n"), K::undeclared_name);
  EXPECT_EQ(kind("domain x\nlogic fuzzy\n"), K::syntax);
  EXPECT_EQ(kind("fint 2\ndomain x\n"), K::syntax);
}
