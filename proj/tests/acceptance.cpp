// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fzt/engine.hpp"
#include "fzt/fint.hpp"
#include "fzt/klm.hpp"
#include "fzt/mlp.hpp"
#include "fzt/parser.hpp"
#include "fzt/weighted.hpp"
#include "generators.hpp"
#include "reference_eval.hpp"

using fzt::Concept;
using fzt::Degree;
using fzt::Logic;
using fzt::Postulate;
using fzt::Rational;

namespace {

// Pinned limits.
constexpr double kExampleSeconds = 1.0;
constexpr double kSuiteSeconds = 60.0;
constexpr std::uint64_t kTrials = 10'000;
constexpr std::size_t kTrialDomain = 5;
constexpr std::int64_t kTrialGrid = 6;
constexpr int kDepth = 2;
constexpr std::size_t kWitnessDomain = 3;
constexpr std::int64_t kWitnessGrid = 4;
constexpr int kStructuralSamples = 10'000;
constexpr std::int64_t kMonotoneGrid = 10;
constexpr int kNets = 100;
constexpr int kStimuli = 8;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FZT_SAMPLES_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void report(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.note << "[exception: " << e.what() << "] ";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.2fs) %s\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), seconds_since(t0),
              o.note.str().c_str());
  std::fflush(stdout);
}

fzt::TrialConfig trial_config() {
  fzt::TrialConfig cfg;
  cfg.trials = kTrials;
  cfg.max_domain = kTrialDomain;
  cfg.max_denominator = kTrialGrid;
  cfg.shape.max_depth = kDepth;
  return cfg;
}

// Runs the trial suite for each (postulate, logic) and requires zero violations.
void zero_violation_suite(Outcome& o, std::initializer_list<Postulate> ps, std::initializer_list<Logic> ls) {
  auto t0 = std::chrono::steady_clock::now();
  for (Logic l : ls)
    for (Postulate p : ps) {
      auto s = fzt::run_random_trials(p, l, trial_config());
      std::string tag = std::string(fzt::to_string(p)) + "/" + std::string(fzt::to_string(l));
      o.note << tag << " " << s.violations << "v/" << s.nonvacuous << "n ";
      o.require(s.trials == kTrials, tag + " trial count");
      o.require(s.violations == 0, tag + " violations");
      o.require(s.uncertified == 0, tag + " uncertified premises");
      o.require(s.nonvacuous > 0, tag + " all trials vacuous");
    }
  double t = seconds_since(t0);
  o.require(t < kSuiteSeconds, "runtime " + std::to_string(t) + "s");
}

bool reference_violation(const fzt::PostulateWitness& w) {
  auto inst = fzt::instantiate(w.postulate, w.instantiation);
  for (const auto& ax : inst.premises)
    if (!ref::satisfies(w.interpretation, ax)) return false;
  return !ref::satisfies(w.interpretation, inst.conclusion);
}

void criterion1(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  auto kb = fzt::parse_kb(slurp("penguin.fkb"));
  auto I = fzt::parse_fint(slurp("penguin.fint"), kb.signature, kb.logic).interpretation;
  auto reddy = *I.element("reddy"), opus = *I.element("opus");
  auto W = [&](const char* c, fzt::Element x) { return fzt::weight(I, kb, c, x); };
  o.require(W("Bird", reddy) == fzt::ExtendedWeight(Rational(120)), "W_Bird(reddy)=120");
  o.require(W("Bird", opus) == fzt::ExtendedWeight(Rational(100)), "W_Bird(opus)=100");
  o.require(W("Penguin", reddy) == fzt::ExtendedWeight(Rational(30)), "W_Penguin(reddy)=30");
  o.require(W("Penguin", opus) == fzt::ExtendedWeight(Rational(120)), "W_Penguin(opus)=120");
  o.require(fzt::is_faithful(I, kb).ok, "faithful at Penguin(reddy)=0.2");
  I.set_concept("Penguin", reddy, Degree::parse("0.9"));
  auto bad = fzt::is_faithful(I, kb);
  o.require(!bad.ok, "unfaithful at Penguin(reddy)=0.9");
  bool pair = !bad.violations.empty() && bad.violations[0].concept_name == "Penguin" &&
              bad.violations[0].x == reddy && bad.violations[0].y == opus;
  o.require(pair, "violating pair (Penguin, reddy, opus)");
  double t = seconds_since(t0);
  o.require(t < kExampleSeconds, "runtime");
  o.note << "W = 120/100/30/120, violation (Penguin, reddy, opus)";
}

void criterion4(Outcome& o) {
  fzt::SearchConfig cfg;
  cfg.max_domain = kWitnessDomain;
  cfg.denominator = kWitnessGrid;
  fzt::ConceptShape shape;
  shape.max_depth = kDepth;
  auto find = [&](Postulate p, Logic l) {
    auto r = fzt::search_counterexample(p, l, cfg, shape, kTrials);
    std::string tag = std::string(fzt::to_string(p)) + "/" + std::string(fzt::to_string(l));
    o.require(r.witness.has_value(), tag + " witness");
    if (r.witness) {
      o.require(r.witness->interpretation.size() <= kWitnessDomain, tag + " within domain bound");
      o.require(reference_violation(*r.witness), tag + " re-check");
      o.note << tag << " |D|=" << r.witness->interpretation.size() << " ";
    }
    return r.witness.has_value();
  };
  find(Postulate::REFL1, Logic::godel);
  for (Logic l : {Logic::lukasiewicz, Logic::product}) {
    find(Postulate::REFL1, l);
    find(Postulate::OR1, l);
  }
  bool cm = find(Postulate::CM0, Logic::godel);
  if (!cm) cm = find(Postulate::CM0, Logic::zadeh);
}

void criterion6(Outcome& o) {
  gen::Rng rng(6);
  auto sig = gen::small_signature();
  int nonempty_failures = 0, order_failures = 0, two_valued_failures = 0;
  for (int t = 0; t < kStructuralSamples; ++t) {
    auto I = gen::interpretation(rng, fzt::kAllLogics[rng.below(4)], sig, 5, 6, true);
    Concept c = gen::concept_expr(rng, sig, kDepth);
    auto ext = fzt::extension(I, c);
    bool positive = false;
    for (const auto& d : ext) positive = positive || !d.is_zero();
    if (positive && fzt::typical_elements(I, c).empty()) ++nonempty_failures;
    for (const auto& d : fzt::extension(I, Concept::typ(c)))
      if (!d.is_zero() && !d.is_one()) ++two_valued_failures;
    auto p = fzt::induced_preference(I, c);
    for (fzt::Element x = 0; x < p.size(); ++x) {
      if (p.less(x, x)) ++order_failures;
      for (fzt::Element y = 0; y < p.size(); ++y)
        for (fzt::Element z = 0; z < p.size(); ++z) {
          if (p.less(x, y) && p.less(y, z) && !p.less(x, z)) ++order_failures;
          if (p.less(x, y) && !p.less(x, z) && !p.less(z, y)) ++order_failures;
        }
    }
  }
  o.require(nonempty_failures == 0, "typicality non-emptiness");
  o.require(two_valued_failures == 0, "typicality two-valued");
  o.require(order_failures == 0, "preference irreflexive/transitive/modular");

  int coherent_not_faithful = 0, witnesses = 0;
  for (int t = 0; t < kStructuralSamples; ++t) {
    auto kb = gen::weighted_kb(rng, fzt::kAllLogics[rng.below(4)], sig, kDepth);
    auto I = gen::interpretation(rng, kb.logic, sig, 4, 4, true);
    bool coherent = fzt::is_coherent(I, kb).ok, faithful = fzt::is_faithful(I, kb).ok;
    if (coherent && !faithful) ++coherent_not_faithful;
    if (faithful && !coherent) ++witnesses;
  }
  o.require(coherent_not_faithful == 0, "coherent implies faithful");
  o.require(witnesses > 0, "faithful-not-coherent witness");
  o.note << witnesses << " faithful-not-coherent witnesses in " << kStructuralSamples << " pairs";
}

std::uint64_t closed_form(std::size_t concepts, std::size_t roles, std::size_t individuals, std::size_t max_n,
                          std::uint64_t q) {
  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::uint64_t c = 1;
    for (std::size_t k = 0; k < concepts * n + roles * n * n; ++k) c *= q + 1;
    for (std::size_t k = 0; k < individuals; ++k) c *= n;
    total += c;
  }
  return total;
}

void criterion7(Outcome& o) {
  struct Config {
    std::size_t c, r, i, n;
    std::int64_t q;
  };
  const Config configs[] = {{1, 0, 0, 1, 1}, {1, 0, 0, 1, 2}, {2, 0, 0, 2, 2}, {1, 1, 0, 2, 1},
                            {1, 0, 2, 3, 1}, {0, 1, 1, 2, 2}, {2, 1, 1, 2, 1}};
  for (const auto& k : configs) {
    std::vector<std::string> cs, rs, is;
    for (std::size_t j = 0; j < k.c; ++j) cs.push_back("C" + std::to_string(j));
    for (std::size_t j = 0; j < k.r; ++j) rs.push_back("r" + std::to_string(j));
    for (std::size_t j = 0; j < k.i; ++j) is.push_back("a" + std::to_string(j));
    fzt::SearchConfig cfg;
    cfg.max_domain = k.n;
    cfg.denominator = k.q;
    auto stats = fzt::enumerate_interpretations(fzt::Signature(cs, rs, is), cfg,
                                                [](std::uint64_t, const fzt::FuzzyInterpretation&) { return true; });
    o.require(stats.examined == closed_form(k.c, k.r, k.i, k.n, k.q) && stats.space == stats.examined,
              "count for " + std::to_string(k.c) + "/" + std::to_string(k.r) + "/" + std::to_string(k.i));
  }

  gen::Rng rng(7);
  fzt::Signature sig({"A", "B"}, {"r"}, {"a"});
  int refuted = 0;
  for (int t = 0; t < 200; ++t) {
    Logic l = fzt::kAllLogics[rng.below(4)];
    auto kb = gen::weighted_kb(rng, l, sig, kDepth, rng.below(3));
    auto goal = fzt::FuzzyAxiom::inclusion(gen::concept_with_typ(rng, sig, kDepth), gen::concept_expr(rng, sig, kDepth),
                                           gen::comparator(rng), rng.degree(3));
    fzt::SearchConfig cfg;
    cfg.logic = l;
    cfg.max_domain = 2;
    cfg.denominator = 2;
    cfg.budget = 20'000;
    cfg.mode = t % 2 ? fzt::SearchMode::fm : fzt::SearchMode::plain;
    cfg.seed = rng.below(4);
    auto v = fzt::check_entailment_bounded(kb, goal, cfg);
    if (!v.refuted) continue;
    ++refuted;
    const auto& I = *v.countermodel;
    bool model = cfg.mode == fzt::SearchMode::fm ? ref::fm_model(I, kb) : ref::strict_model(I, kb);
    o.require(model && !ref::satisfies(I, goal), "countermodel re-check");
    cfg.jobs = 3;
    auto again = fzt::check_entailment_bounded(kb, goal, cfg);
    o.require(again.countermodel == v.countermodel && again.stats.examined == v.stats.examined,
              "same seed, same output");
  }
  o.require(refuted > 20, "enough countermodels to re-check");
  o.note << "7 counting configurations, " << refuted << " countermodels re-checked";
}

void criterion8(Outcome& o) {
  auto kb = fzt::parse_kb(slurp("penguin.fkb"));
  auto I = fzt::FuzzyInterpretation::with_size(kb.logic, kb.signature, 2);
  const std::int64_t q = kMonotoneGrid;
  std::uint64_t checks = 0, failures_bird = 0, failures_fly = 0;
  // profiles for the other element: all zero, all one, copy of x
  for (int profile = 0; profile < 3; ++profile)
    for (std::int64_t pen = 0; pen <= q; ++pen)
      for (std::int64_t fly = 0; fly <= q; ++fly)
        for (std::int64_t black = 0; black <= q; ++black) {
          auto set = [&](fzt::Element x, std::int64_t bird, std::int64_t f) {
            I.set_concept("Penguin", x, Degree(pen, q));
            I.set_concept("Fly", x, Degree(f, q));
            I.set_concept("Black", x, Degree(black, q));
            I.set_concept("Bird", x, Degree(bird, q));
          };
          auto W = [&](std::int64_t bird, std::int64_t f) {
            set(0, bird, f);
            if (profile == 2) set(1, bird, f);
            return fzt::weight(I, kb, "Penguin", 0);
          };
          for (const char* c : {"Penguin", "Fly", "Black", "Bird"})
            I.set_concept(c, 1, profile == 1 ? Degree::one() : Degree::zero());
          for (std::int64_t b1 = 0; b1 <= q; ++b1)
            for (std::int64_t b2 = b1 + 1; b2 <= q; ++b2) {
              ++checks;
              if (W(b2, fly) < W(b1, fly)) ++failures_bird;
            }
          // the negative weight on Fly works the other way
          for (std::int64_t f2 = fly + 1; f2 <= q; ++f2) {
            ++checks;
            if (W(q / 2, f2) > W(q / 2, fly)) ++failures_fly;
          }
        }
  o.require(failures_bird == 0, "W_Penguin nondecreasing in Bird");
  o.require(failures_fly == 0, "W_Penguin nonincreasing in Fly");
  o.note << checks << " grid comparisons";
}

fzt::FeedForwardNet random_net(gen::Rng& rng) {
  fzt::FeedForwardNet net;
  net.add_unit({"x1", 0, fzt::Activation::clipped, Rational(0)});
  net.add_unit({"x2", 0, fzt::Activation::clipped, Rational(0)});
  auto hidden = rng.coin() ? fzt::Activation::hard_sigmoid : fzt::Activation::clipped;
  for (const char* h : {"h1", "h2", "h3"}) net.add_unit({h, 1, hidden, Rational(0)});
  net.add_unit({"y", 2, rng.coin() ? fzt::Activation::clipped : fzt::Activation::hard_sigmoid, Rational(0)});
  for (const char* x : {"x1", "x2"})
    for (const char* h : {"h1", "h2", "h3"}) net.add_synapse({x, h, rng.weight(4, 6)});
  for (const char* h : {"h1", "h2", "h3"}) {
    net.add_synapse({h, "y", rng.weight(4, 6)});
    if (rng.coin()) net.set_bias(h, rng.weight(2, 4));
  }
  if (rng.coin()) net.set_bias("y", rng.weight(2, 4));
  return net;
}

void criterion9(Outcome& o) {
  gen::Rng rng(9);
  int faithful = 0;
  for (int t = 0; t < kNets; ++t) {
    auto net = random_net(rng);
    fzt::StimulusSet stimuli;
    for (int s = 0; s < kStimuli; ++s) {
      std::int64_t d1 = rng.range(1, 12), d2 = rng.range(1, 12);
      stimuli.push_back({"s" + std::to_string(s), {Degree(rng.range(0, d1), d1), Degree(rng.range(0, d2), d2)}});
    }
    auto kb = fzt::mlp_to_kb(net);
    o.require(fzt::validate_kb(kb).empty(), "net " + std::to_string(t) + " KB valid");
    auto r = fzt::verify_network_faithfulness(net, stimuli);
    for (std::size_t c = 0; c < r.interpretation.signature().concepts().size(); ++c)
      for (const auto& d : r.interpretation.concept_values(c)) {
        ref::Q v = ref::q(d);
        o.require(v >= 0 && v <= 1, "degree in [0,1]");
      }
    bool ok = r.faithful() && ref::faithful(r.interpretation, r.kb);
    if (ok) {
      ++faithful;
    } else {
      o.require(false, "net " + std::to_string(t) + " faithful");
      std::cout << "witness network:\n"
                << fzt::serialize_fnet(net) << fzt::serialize_stimuli(stimuli) << fzt::serialize_fint(r.interpretation);
    }
  }
  o.note << faithful << "/" << kNets << " nets faithful";
}

}  // namespace

int main() {
  report(1, "example weights and faithfulness", criterion1);
  report(2, "strong family in zadeh and godel", [](Outcome& o) {
    zero_violation_suite(o, {Postulate::LLE1, Postulate::RW1, Postulate::AND1, Postulate::OR1, Postulate::CM1},
                         {Logic::zadeh, Logic::godel});
  });
  report(3, "weak family and CMSTAR in zadeh and godel", [](Outcome& o) {
    zero_violation_suite(o,
                         {Postulate::REFL0, Postulate::LLE0, Postulate::RW0, Postulate::AND0, Postulate::OR0,
                          Postulate::CMSTAR},
                         {Logic::zadeh, Logic::godel});
  });
  report(4, "failure witnesses", criterion4);
  report(5, "strong family in product and lukasiewicz", [](Outcome& o) {
    zero_violation_suite(o, {Postulate::LLE1, Postulate::RW1, Postulate::AND1, Postulate::CM1},
                         {Logic::product, Logic::lukasiewicz});
  });
  report(6, "structural invariants", criterion6);
  report(7, "engine counts, countermodels, determinism", criterion7);
  report(8, "weight monotonicity on the penguin KB", criterion8);
  report(9, "network bridge faithfulness", criterion9);
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
