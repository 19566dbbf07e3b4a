#pragma once

// Command implementations behind the fzt executable. Each command takes file
// contents and options, writes its report to `out` and diagnostics to `err`,
// and returns the process exit status:
//
//   0  success / holds / no countermodel within bounds
//   1  refuted / violated / not a model
//   2  usage, parse or validation error
//   3  no countermodel found, but the bounds exceeded the budget
//
// Record output starts with the header line "fzt-records 1"; every further
// line is "<record> key=value ...". Multi-line payloads (interpretations,
// knowledge bases) are framed by "begin <kind>" and "end <kind>".

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fzt/engine.hpp"
#include "fzt/fint.hpp"
#include "fzt/klm.hpp"
#include "fzt/mlp.hpp"
#include "fzt/parser.hpp"
#include "fzt/weighted.hpp"

namespace fzt::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolated = 1;
inline constexpr int kUsage = 2;
inline constexpr int kTruncated = 3;

inline constexpr const char* kRecordsHeader = "fzt-records 1";

enum class Format { human, records };

struct Options {
  std::optional<Logic> logic;
  std::optional<std::size_t> max_domain;
  std::optional<std::int64_t> denominator;
  std::uint64_t budget = 1'000'000;
  std::string mode;  // entail: plain|fm; klm-test: verify|find-counterexample
  std::uint64_t seed = 0;
  Format format = Format::human;
  unsigned jobs = 1;
  std::uint64_t trials = 10'000;
  int depth = 2;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string element_name(const FuzzyInterpretation& I, Element x) { return I.domain()[x]; }

inline void begin_records(std::ostream& out, const Options& o) {
  if (o.format == Format::records) out << kRecordsHeader << '\n';
}

inline void framed(std::ostream& out, const std::string& kind, const std::string& body) {
  out << "begin " << kind << '\n' << body;
  if (!body.empty() && body.back() != '\n') out << '\n';
  out << "end " << kind << '\n';
}

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline SearchConfig search_config(const Options& o, Logic logic, std::size_t max_domain, std::int64_t denominator) {
  SearchConfig cfg;
  cfg.logic = logic;
  cfg.max_domain = o.max_domain.value_or(max_domain);
  cfg.denominator = o.denominator.value_or(denominator);
  cfg.budget = o.budget;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

inline void print_stats(std::ostream& out, const Options& o, const SearchStats& s) {
  if (o.format == Format::records) {
    out << "stats examined=" << s.examined << " models=" << s.models << " space=" << s.space
        << " truncated=" << (s.truncated ? "true" : "false") << " max_domain=" << s.max_domain
        << " denominator=" << s.denominator << '\n';
  } else {
    out << "bounds: domain size <= " << s.max_domain << ", grid 1/" << s.denominator << ", space ";
    if (s.space == fzt::detail::kSaturated) out << "at least " << s.space << " (saturated)";
    else out << s.space;
    out << " interpretations\n";
    out << "examined " << s.examined << " interpretations, " << s.models << " of them models";
    if (s.truncated) out << " (search truncated by the budget)";
    out << '\n';
  }
}

// Parse errors and usage errors both map to exit status 2.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const NetworkError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

inline FuzzyAxiom parse_goal(const std::string& text, const Signature& sig) {
  try {
    return parse_axiom(text, sig);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.line(), e.column(), std::string("goal axiom: ") + e.what());
  }
}

}  // namespace detail

/// Syntax and validation check of a KB, optionally with an interpretation.
inline int cmd_parse(const std::string& kb_text, const std::optional<std::string>& fint_text, const Options& o,
                     std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    WeightedKB kb = parse_kb(kb_text);
    if (o.logic) kb.logic = *o.logic;
    std::optional<FintDocument> doc;
    if (fint_text) doc = parse_fint(*fint_text, kb.signature, kb.logic);
    detail::begin_records(out, o);
    if (o.format == Format::records) {
      out << "kb logic=" << to_string(kb.logic) << " concepts=" << kb.signature.concepts().size()
          << " roles=" << kb.signature.roles().size() << " individuals=" << kb.signature.individuals().size()
          << " distinguished=" << kb.distinguished.size() << " tbox=" << kb.tbox.size()
          << " weighted=" << kb.weighted.size() << " abox=" << kb.abox.size() << '\n';
      detail::framed(out, "fkb", serialize_kb(kb));
      if (doc) detail::framed(out, "fint", serialize_fint(doc->interpretation));
    } else {
      out << "ok: logic " << to_string(kb.logic) << ", " << kb.signature.concepts().size() << " concepts, "
          << kb.signature.roles().size() << " roles, " << kb.signature.individuals().size() << " individuals, "
          << kb.distinguished.size() << " distinguished, " << kb.tbox.size() << " tbox, " << kb.weighted.size()
          << " weighted, " << kb.abox.size() << " abox axioms\n";
      if (doc) out << "ok: interpretation over " << doc->interpretation.size() << " elements\n";
    }
    return kOk;
  });
}

/// Strict part, weight tables, faithfulness and coherence of an interpretation.
/// Exit 0 iff the interpretation is an fm-model.
inline int cmd_check_model(const std::string& kb_text, const std::string& fint_text, const Options& o,
                           std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    WeightedKB kb = parse_kb(kb_text);
    if (o.logic) kb.logic = *o.logic;
    FintDocument doc = parse_fint(fint_text, kb.signature, kb.logic);
    if (doc.declared_logic && *doc.declared_logic != kb.logic)
      throw UsageError("interpretation declares logic " + std::string(to_string(*doc.declared_logic)) +
                       " but the run uses " + std::string(to_string(kb.logic)) + "; pass --logic to choose");
    const FuzzyInterpretation& I = doc.interpretation;
    FmModelCheck fm = is_fm_model(I, kb);
    PreferenceCheck coherent = is_coherent(I, kb);

    detail::begin_records(out, o);
    const bool rec = o.format == Format::records;
    if (rec) {
      out << "verdict fm_model=" << (fm.ok ? "true" : "false") << " strict=" << (fm.strict.ok ? "true" : "false")
          << " faithful=" << (fm.faithfulness.ok ? "true" : "false")
          << " coherent=" << (coherent.ok ? "true" : "false") << " logic=" << to_string(kb.logic) << '\n';
    } else {
      out << "logic: " << to_string(kb.logic) << '\n';
      out << "strict part: " << (fm.strict.ok ? "satisfied" : "violated") << " (" << kb.tbox.size() << " tbox, "
          << kb.abox.size() << " abox axioms)\n";
    }
    for (const auto& v : fm.strict.violations) {
      if (rec)
        out << "strict-violation section=" << v.section << " index=" << v.index << " degree=" << v.degree
            << " axiom=" << detail::quoted(v.axiom.str()) << '\n';
      else
        out << "  violated " << v.section << "[" << v.index << "]: " << v.axiom.str() << "  (degree " << v.degree
            << ")\n";
    }

    if (!rec && !kb.distinguished.empty()) out << "weights:\n";
    for (const auto& c : kb.distinguished) {
      auto deg = extension(I, Concept::atomic(c));
      auto w = weights(I, kb, c);
      for (Element x = 0; x < I.size(); ++x) {
        if (rec)
          out << "weight concept=" << c << " element=" << detail::element_name(I, x) << " degree=" << deg[x]
              << " weight=" << w[x].str() << '\n';
        else
          out << "  W_" << c << "(" << detail::element_name(I, x) << ") = " << w[x].str() << "   [" << c << " = "
              << deg[x] << "]\n";
      }
    }

    auto report = [&](const char* kind, const PreferenceCheck& pc) {
      for (const auto& v : pc.violations) {
        if (rec)
          out << "preference-violation kind=" << kind << " concept=" << v.concept_name
              << " x=" << detail::element_name(I, v.x) << " y=" << detail::element_name(I, v.y)
              << " degree_x=" << v.degree_x << " degree_y=" << v.degree_y << " weight_x=" << v.weight_x.str()
              << " weight_y=" << v.weight_y.str() << '\n';
        else
          out << "  " << kind << " violation for " << v.concept_name << ": (" << detail::element_name(I, v.x) << ", "
              << detail::element_name(I, v.y) << ") degrees " << v.degree_x << " vs " << v.degree_y << ", weights "
              << v.weight_x.str() << " vs " << v.weight_y.str() << '\n';
      }
    };
    if (!rec) out << "faithful: " << (fm.faithfulness.ok ? "yes" : "no") << '\n';
    report("faithfulness", fm.faithfulness);
    if (!rec) out << "coherent: " << (coherent.ok ? "yes" : "no") << '\n';
    report("coherence", coherent);
    if (!rec) out << "fm-model: " << (fm.ok ? "yes" : "no") << '\n';
    return fm.ok ? kOk : kViolated;
  });
}

/// Bounded countermodel search for a goal axiom, plain or fm mode.
inline int cmd_entail(const std::string& kb_text, const std::string& goal_text, const Options& o,
                      std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    WeightedKB kb = parse_kb(kb_text);
    const Logic logic = o.logic.value_or(kb.logic);
    SearchConfig cfg = detail::search_config(o, logic, 2, 2);
    if (o.mode.empty() || o.mode == "plain") cfg.mode = SearchMode::plain;
    else if (o.mode == "fm") cfg.mode = SearchMode::fm;
    else throw UsageError("entail: --mode must be plain or fm");
    FuzzyAxiom goal = detail::parse_goal(goal_text, kb.signature);
    EntailmentVerdict v = check_entailment_bounded(kb, goal, cfg);

    detail::begin_records(out, o);
    const bool rec = o.format == Format::records;
    const char* verdict = v.refuted ? "refuted" : (v.stats.truncated ? "truncated" : "no-countermodel-within-bounds");
    if (rec) {
      out << "verdict " << verdict << " mode=" << (cfg.mode == SearchMode::fm ? "fm" : "plain")
          << " logic=" << to_string(logic) << " goal=" << detail::quoted(goal.str()) << '\n';
    } else {
      out << "goal: " << goal.str() << '\n';
      out << "mode: " << (cfg.mode == SearchMode::fm ? "fm" : "plain") << ", logic: " << to_string(logic) << '\n';
      if (v.refuted)
        out << "refuted: countermodel #" << v.countermodel_index << " (goal degree "
            << axiom_degree(*v.countermodel, goal) << ")\n";
      else if (v.stats.truncated)
        out << "no countermodel among the examined interpretations, but the budget cut the search short\n";
      else
        out << "no countermodel within bounds (this is not a proof of entailment)\n";
    }
    detail::print_stats(out, o, v.stats);
    if (v.refuted) {
      if (rec) out << "countermodel index=" << v.countermodel_index << '\n';
      detail::framed(out, "fint", serialize_fint(*v.countermodel));
    }
    if (v.refuted) return kViolated;
    if (v.stats.truncated) {
      if (!rec) err << "warning: bounds exceed the budget; search was truncated\n";
      return kTruncated;
    }
    return kOk;
  });
}

namespace detail {

inline void print_witness(std::ostream& out, const Options& o, const PostulateWitness& w) {
  PostulateInstance inst = instantiate(w.postulate, w.instantiation);
  if (o.format == Format::records) {
    out << "witness postulate=" << to_string(w.postulate) << " instantiation=" << quoted(w.instantiation.str())
        << " conclusion=" << quoted(inst.conclusion.str()) << " conclusion_degree=" << w.conclusion_degree << '\n';
    for (std::size_t i = 0; i < inst.premises.size(); ++i)
      out << "premise index=" << i << " axiom=" << quoted(inst.premises[i].str())
          << " degree=" << w.premise_degrees[i] << '\n';
    if (inst.validity) out << "validity-premise " << quoted(inst.validity->str()) << '\n';
  } else {
    out << "instantiation: " << w.instantiation.str() << '\n';
    if (inst.validity) out << "  validity premise " << inst.validity->str() << " (certified)\n";
    for (std::size_t i = 0; i < inst.premises.size(); ++i)
      out << "  premise    " << inst.premises[i].str() << "   degree " << w.premise_degrees[i] << '\n';
    out << "  conclusion " << inst.conclusion.str() << "   degree " << w.conclusion_degree << " (fails)\n";
  }
  framed(out, "fint", serialize_fint(w.interpretation));
}

}  // namespace detail

/// KLM postulate checks. verify: randomized trials (default |D| <= 5, q <= 6).
/// find-counterexample: exhaustive atomic search then randomized instances
/// (default |D| <= 3, q = 4).
inline int cmd_klm(const std::string& postulate, const Options& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    auto p = parse_postulate(postulate);
    if (!p) throw UsageError("unknown postulate '" + postulate + "'");
    const Logic logic = o.logic.value_or(Logic::godel);
    ConceptShape shape;
    if (o.depth < 0) throw UsageError("--depth must be non-negative");
    shape.max_depth = o.depth;
    const bool rec = o.format == Format::records;

    if (o.mode.empty() || o.mode == "verify") {
      TrialConfig tc;
      tc.trials = o.trials;
      tc.max_domain = o.max_domain.value_or(5);
      tc.max_denominator = o.denominator.value_or(6);
      if (tc.max_domain < 1 || tc.max_denominator < 1) throw UsageError("bounds must be positive");
      tc.shape = shape;
      tc.seed = o.seed;
      TrialStats s = run_random_trials(*p, logic, tc);
      detail::begin_records(out, o);
      if (rec)
        out << "trials postulate=" << to_string(*p) << " logic=" << to_string(logic) << " trials=" << s.trials
            << " nonvacuous=" << s.nonvacuous << " violations=" << s.violations << " uncertified=" << s.uncertified
            << " max_domain=" << tc.max_domain << " max_denominator=" << tc.max_denominator
            << " depth=" << shape.max_depth << " seed=" << tc.seed << '\n';
      else
        out << to_string(*p) << " in " << to_string(logic) << ": " << s.trials << " trials, " << s.nonvacuous
            << " with premises satisfied, " << s.violations << " violations, " << s.uncertified
            << " skipped for uncertified premises\n";
      if (s.first_violation) detail::print_witness(out, o, *s.first_violation);
      return s.violations ? kViolated : kOk;
    }
    if (o.mode != "find-counterexample") throw UsageError("klm-test: --mode must be verify or find-counterexample");

    SearchConfig cfg = detail::search_config(o, logic, 3, 4);
    CounterexampleResult r = search_counterexample(*p, logic, cfg, shape, o.trials);
    detail::begin_records(out, o);
    if (rec)
      out << "search postulate=" << to_string(*p) << " logic=" << to_string(logic)
          << " verdict=" << (r.witness ? "violated" : "holds-within-bounds") << " instantiations=" << r.instantiations
          << " examined=" << r.examined << " random_trials=" << r.random_trials
          << " truncated=" << (r.truncated ? "true" : "false") << '\n';
    else
      out << to_string(*p) << " in " << to_string(logic) << ": "
          << (r.witness ? "counterexample found" : "holds within bounds") << " (" << r.instantiations
          << " atomic instantiations searched exhaustively, " << r.random_trials << " random instances, "
          << r.examined << " interpretations" << (r.truncated ? ", truncated by the budget" : "") << ")\n";
    if (r.witness) {
      detail::print_witness(out, o, *r.witness);
      return kViolated;
    }
    return r.truncated ? kTruncated : kOk;
  });
}

struct MlpArtifacts {
  std::string kb;              // .fkb text of K^N
  std::string interpretation;  // .fint text
  std::string report;
};

/// Translates a network, builds the interpretation over the stimuli and
/// checks faithfulness. Exit 0 iff faithful.
inline int cmd_mlp(const std::string& net_text, const std::string& stimuli_text, const Options& o,
                   std::ostream& out, std::ostream& err, MlpArtifacts* artifacts = nullptr) {
  return detail::guarded(err, [&] {
    FeedForwardNet net = parse_fnet(net_text);
    StimulusSet stimuli = parse_stimuli(stimuli_text);
    const Logic logic = o.logic.value_or(Logic::godel);
    NetworkReport r = verify_network_faithfulness(net, stimuli, logic);
    auto violations = validate_kb(r.kb);
    if (!violations.empty()) throw SemanticError("generated KB is invalid: " + violations.front().message);

    std::ostringstream rep;
    const bool rec = o.format == Format::records;
    if (rec) rep << kRecordsHeader << '\n';
    if (rec)
      rep << "network units=" << net.units().size() << " synapses=" << net.synapses().size()
          << " stimuli=" << stimuli.size() << " distinguished=" << r.kb.distinguished.size()
          << " weighted=" << r.kb.weighted.size() << " faithful=" << (r.faithful() ? "true" : "false") << '\n';
    else
      rep << "network: " << net.units().size() << " units, " << net.synapses().size() << " synapses, "
          << stimuli.size() << " stimuli\nK^N: " << r.kb.distinguished.size() << " distinguished concepts, "
          << r.kb.weighted.size() << " weighted inclusions\n";
    for (const auto& t : r.tables)
      for (Element x = 0; x < t.degrees.size(); ++x) {
        const std::string& e = r.interpretation.domain()[x];
        if (rec)
          rep << "weight concept=" << t.concept_name << " element=" << e << " degree=" << t.degrees[x]
              << " weight=" << t.weights[x].str() << '\n';
        else
          rep << "  W_" << t.concept_name << "(" << e << ") = " << t.weights[x].str() << "   [" << t.concept_name << " = "
              << t.degrees[x] << "]\n";
      }
    for (const auto& v : r.check.faithfulness.violations) {
      const auto& dom = r.interpretation.domain();
      if (rec)
        rep << "preference-violation kind=faithfulness concept=" << v.concept_name << " x=" << dom[v.x]
            << " y=" << dom[v.y] << " degree_x=" << v.degree_x << " degree_y=" << v.degree_y
            << " weight_x=" << v.weight_x.str() << " weight_y=" << v.weight_y.str() << '\n';
      else
        rep << "  faithfulness violation for " << v.concept_name << ": (" << dom[v.x] << ", " << dom[v.y] << ")\n";
    }
    if (!rec) rep << "faithful: " << (r.faithful() ? "yes" : "no") << '\n';

    if (artifacts) *artifacts = {serialize_kb(r.kb), serialize_fint(r.interpretation), rep.str()};
    out << rep.str();
    return r.faithful() ? kOk : kViolated;
  });
}

}  // namespace fzt::cli
