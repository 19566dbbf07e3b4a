#pragma once

// Feed-forward networks as weighted conditional knowledge bases.
//
// Every unit h becomes a concept name. A non-input unit i with incoming
// synapses (h, i, w) gets the weighted inclusions T(i) <= h @ w and is
// distinguished. A bias b of unit i is a synapse from a virtual unit whose
// concept is 1 on every stimulus. Activation values on a stimulus are the
// membership degrees of that stimulus.
//
// .fnet format ('#' comments):
//
//   input x1 x2                     (input units, in stimulus order)
//   layer hard_sigmoid h1 h2 h3     (activation, then unit names)
//   layer clipped y
//   synapse x1 h1 3/2
//   bias h1 -1/2
//
// Activations: hard_sigmoid(v) = clip(v/5 + 1/2), clipped(v) = clip(v),
// step(v) = 1 if v >= 0 else 0, where clip cuts to [0,1].
//
// Stimuli format: one "stimulus <name> <v1> ... <vk>" line per stimulus,
// values in [0,1], one per input unit.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fzt/parser.hpp"
#include "fzt/weighted.hpp"

namespace fzt {

enum class Activation { hard_sigmoid, clipped, step };

inline std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::hard_sigmoid: return "hard_sigmoid";
    case Activation::clipped: return "clipped";
    case Activation::step: return "step";
  }
  return "?";
}

inline std::optional<Activation> parse_activation(std::string_view s) {
  if (s == "hard_sigmoid") return Activation::hard_sigmoid;
  if (s == "clipped") return Activation::clipped;
  if (s == "step") return Activation::step;
  return std::nullopt;
}

inline Degree activate(Activation a, const Rational& v) {
  auto clip = [](const Rational& r) { return Degree(fzt::max(Rational(0), fzt::min(Rational(1), r))); };
  switch (a) {
    case Activation::hard_sigmoid: return clip(v / Rational(5) + Rational(1, 2));
    case Activation::clipped: return clip(v);
    case Activation::step: return v.sign() >= 0 ? Degree::one() : Degree::zero();
  }
  throw std::logic_error("unknown activation");
}

class NetworkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Unit {
  std::string name;
  std::size_t layer = 0;  // 0 = input
  Activation activation = Activation::clipped;  // unused for inputs
  Rational bias;
};

struct Synapse {
  std::string from, to;
  Rational weight;
};

class FeedForwardNet {
 public:
  static constexpr std::string_view kBiasConcept = "Bias";

  void add_unit(Unit u) {
    if (u.name.empty() || detail::is_reserved(u.name) || u.name == kBiasConcept)
      throw NetworkError("invalid unit name '" + u.name + "'");
    if (index_.count(u.name)) throw NetworkError("duplicate unit '" + u.name + "'");
    index_.emplace(u.name, units_.size());
    units_.push_back(std::move(u));
  }
  void add_synapse(Synapse s) {
    unit(s.from);
    if (unit(s.to).layer == 0) throw NetworkError("synapse into input unit '" + s.to + "'");
    synapses_.push_back(std::move(s));
  }
  void set_bias(const std::string& name, Rational b) {
    Unit& u = units_[index_of(name)];
    if (u.layer == 0) throw NetworkError("bias on input unit '" + name + "'");
    u.bias = b;
    has_bias_ = true;
  }

  const std::vector<Unit>& units() const { return units_; }
  const std::vector<Synapse>& synapses() const { return synapses_; }
  const Unit& unit(const std::string& name) const { return units_[index_of(name)]; }
  bool has_bias() const { return has_bias_; }

  std::vector<std::string> inputs() const {
    std::vector<std::string> out;
    for (const auto& u : units_)
      if (u.layer == 0) out.push_back(u.name);
    return out;
  }

  /// Units in evaluation order. Throws NetworkError on a cycle.
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> indegree(units_.size());
    std::vector<std::vector<std::size_t>> out(units_.size());
    for (const auto& s : synapses_) {
      out[index_of(s.from)].push_back(index_of(s.to));
      ++indegree[index_of(s.to)];
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < units_.size(); ++i)
      if (indegree[i] == 0) order.push_back(i);
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t j : out[order[k]])
        if (--indegree[j] == 0) order.push_back(j);
    if (order.size() != units_.size()) throw NetworkError("network contains a cycle");
    return order;
  }

  /// Activations of all units on one input vector, indexed like units().
  std::vector<Degree> forward(const std::vector<Degree>& input) const {
    auto order = topological_order();
    auto in_names = inputs();
    if (input.size() != in_names.size())
      throw NetworkError("stimulus has " + std::to_string(input.size()) + " values, network has " +
                         std::to_string(in_names.size()) + " inputs");
    std::vector<Degree> act(units_.size());
    for (std::size_t k = 0; k < in_names.size(); ++k) act[index_of(in_names[k])] = input[k];
    std::vector<std::vector<const Synapse*>> incoming(units_.size());
    for (const auto& s : synapses_) incoming[index_of(s.to)].push_back(&s);
    for (std::size_t i : order) {
      const Unit& u = units_[i];
      if (u.layer == 0) continue;
      Rational v = u.bias;
      for (const Synapse* s : incoming[i]) v += s->weight * act[index_of(s->from)].value();
      act[i] = activate(u.activation, v);
    }
    return act;
  }

 private:
  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw NetworkError("unknown unit '" + name + "'");
    return it->second;
  }

  std::vector<Unit> units_;
  std::vector<Synapse> synapses_;
  std::map<std::string, std::size_t> index_;
  bool has_bias_ = false;
};

struct Stimulus {
  std::string name;
  std::vector<Degree> values;
};

using StimulusSet = std::vector<Stimulus>;

namespace detail {

inline Rational parse_number(const std::string& s, int line) {
  try {
    return Rational::parse(s);
  } catch (const std::exception& e) {
    throw ParseError(ParseError::Kind::syntax, line, 1, e.what());
  }
}

inline std::vector<std::string> fields(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(strip_comment(line))};
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace detail

inline FeedForwardNet parse_fnet(std::string_view text) {
  FeedForwardNet net;
  std::size_t layer = 0;
  auto lines = detail::split_lines(text);
  auto fail = [](int ln, const std::string& msg) { throw ParseError(ParseError::Kind::syntax, ln, 1, msg); };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int ln = static_cast<int>(i) + 1;
    auto w = detail::fields(lines[i]);
    if (w.empty()) continue;
    try {
      if (w[0] == "input") {
        if (layer != 0) fail(ln, "input line after hidden layers");
        for (std::size_t k = 1; k < w.size(); ++k) net.add_unit({w[k], 0, Activation::clipped, Rational(0)});
      } else if (w[0] == "layer") {
        if (w.size() < 3) fail(ln, "expected 'layer <activation> <unit>+'");
        auto act = parse_activation(w[1]);
        if (!act) fail(ln, "unknown activation '" + w[1] + "'");
        ++layer;
        for (std::size_t k = 2; k < w.size(); ++k) net.add_unit({w[k], layer, *act, Rational(0)});
      } else if (w[0] == "synapse") {
        if (w.size() != 4) fail(ln, "expected 'synapse <from> <to> <weight>'");
        net.add_synapse({w[1], w[2], detail::parse_number(w[3], ln)});
      } else if (w[0] == "bias") {
        if (w.size() != 3) fail(ln, "expected 'bias <unit> <value>'");
        net.set_bias(w[1], detail::parse_number(w[2], ln));
      } else {
        fail(ln, "unknown directive '" + w[0] + "'");
      }
    } catch (const NetworkError& e) {
      throw ParseError(ParseError::Kind::invalid_kb, ln, 1, e.what());
    }
  }
  if (net.inputs().empty()) throw ParseError(ParseError::Kind::syntax, 1, 1, "network has no input units");
  try {
    net.topological_order();
  } catch (const NetworkError& e) {
    throw ParseError(ParseError::Kind::invalid_kb, 1, 1, e.what());
  }
  return net;
}

inline std::string serialize_fnet(const FeedForwardNet& net) {
  std::ostringstream os;
  std::map<std::size_t, std::vector<const Unit*>> layers;
  for (const auto& u : net.units()) layers[u.layer].push_back(&u);
  for (const auto& [layer, units] : layers) {
    os << (layer == 0 ? "input" : "layer " + std::string(to_string(units.front()->activation)));
    for (const Unit* u : units) os << ' ' << u->name;
    os << '\n';
  }
  for (const auto& s : net.synapses()) os << "synapse " << s.from << ' ' << s.to << ' ' << s.weight << '\n';
  for (const auto& u : net.units())
    if (u.layer != 0 && !u.bias.is_zero()) os << "bias " << u.name << ' ' << u.bias << '\n';
  return os.str();
}

inline StimulusSet parse_stimuli(std::string_view text) {
  StimulusSet out;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int ln = static_cast<int>(i) + 1;
    auto w = detail::fields(lines[i]);
    if (w.empty()) continue;
    if (w[0] != "stimulus" || w.size() < 3)
      throw ParseError(ParseError::Kind::syntax, ln, 1, "expected 'stimulus <name> <value>+'");
    for (const auto& s : out)
      if (s.name == w[1]) throw ParseError(ParseError::Kind::syntax, ln, 1, "duplicate stimulus '" + w[1] + "'");
    Stimulus s{w[1], {}};
    for (std::size_t k = 2; k < w.size(); ++k) {
      try {
        s.values.push_back(Degree::parse(w[k]));
      } catch (const std::exception& e) {
        throw ParseError(ParseError::Kind::threshold_range, ln, 1, e.what());
      }
    }
    out.push_back(std::move(s));
  }
  if (out.empty()) throw ParseError(ParseError::Kind::syntax, 1, 1, "stimulus set is empty");
  return out;
}

inline std::string serialize_stimuli(const StimulusSet& stimuli) {
  std::ostringstream os;
  for (const auto& s : stimuli) {
    os << "stimulus " << s.name;
    for (const auto& v : s.values) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

/// The weighted KB K^N of a network. Strict TBox and ABox are empty.
inline WeightedKB mlp_to_kb(const FeedForwardNet& net, Logic logic = Logic::godel) {
  net.topological_order();
  WeightedKB kb;
  kb.logic = logic;
  for (const auto& u : net.units()) kb.signature.add_concept(u.name);
  if (net.has_bias()) kb.signature.add_concept(std::string(FeedForwardNet::kBiasConcept));
  for (const auto& u : net.units()) {
    if (u.layer == 0) continue;
    kb.distinguished.push_back(u.name);
    for (const auto& s : net.synapses())
      if (s.to == u.name) kb.weighted.push_back({u.name, Concept::atomic(s.from), s.weight});
    if (!u.bias.is_zero())
      kb.weighted.push_back({u.name, Concept::atomic(std::string(FeedForwardNet::kBiasConcept)), u.bias});
  }
  return kb;
}

/// Domain = stimulus names; C_h(x) = activation of unit h on stimulus x.
inline FuzzyInterpretation build_interpretation(const FeedForwardNet& net, const StimulusSet& stimuli,
                                                Logic logic = Logic::godel) {
  if (stimuli.empty()) throw NetworkError("stimulus set is empty");
  WeightedKB kb = mlp_to_kb(net, logic);
  std::vector<std::string> names;
  for (const auto& s : stimuli) names.push_back(s.name);
  FuzzyInterpretation I(logic, kb.signature, names);
  for (std::size_t x = 0; x < stimuli.size(); ++x) {
    auto act = net.forward(stimuli[x].values);
    for (std::size_t u = 0; u < net.units().size(); ++u) I.set_concept(net.units()[u].name, x, act[u]);
    if (net.has_bias()) I.set_concept(std::string(FeedForwardNet::kBiasConcept), x, Degree::one());
  }
  return I;
}

struct WeightTable {
  std::string concept_name;
  std::vector<Degree> degrees;
  std::vector<ExtendedWeight> weights;
};

struct NetworkReport {
  WeightedKB kb;
  FuzzyInterpretation interpretation;
  FmModelCheck check;
  std::vector<WeightTable> tables;

  bool faithful() const { return check.faithfulness.ok; }
};

inline NetworkReport verify_network_faithfulness(const FeedForwardNet& net, const StimulusSet& stimuli,
                                                 Logic logic = Logic::godel) {
  WeightedKB kb = mlp_to_kb(net, logic);
  FuzzyInterpretation I = build_interpretation(net, stimuli, logic);
  FmModelCheck check = is_fm_model(I, kb);
  std::vector<WeightTable> tables;
  for (const auto& c : kb.distinguished) tables.push_back({c, extension(I, Concept::atomic(c)), weights(I, kb, c)});
  return {std::move(kb), std::move(I), std::move(check), std::move(tables)};
}

}  // namespace fzt
