#pragma once

// Reader and writer for the .fint interpretation format.
//
//   fint 1                              (optional version line)
//   logic godel                         (optional)
//   domain reddy opus                   (required, element names)
//   concept Bird reddy 1
//   concept Bird opus 4/5
//   role has_Wings reddy reddy 1
//   individual tweety reddy
//
// Concept and role entries that are not listed have degree 0. Degrees are
// written as integers, fractions p/q or exact decimals. Names must belong to
// the signature the file is read against.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fzt/interpretation.hpp"
#include "fzt/parser.hpp"

namespace fzt {

struct FintDocument {
  FuzzyInterpretation interpretation;
  std::optional<Logic> declared_logic;
};

namespace detail {

inline std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace detail

/// Parses .fint text against `signature`. When the file has no logic line the
/// interpretation uses `fallback`.
inline FintDocument parse_fint(std::string_view text, const Signature& signature, Logic fallback) {
  auto lines = detail::split_lines(text);
  std::optional<Logic> logic;
  std::vector<std::string> domain;
  int domain_line = 0;

  auto fail = [](int line, const std::string& msg) -> void {
    throw ParseError(ParseError::Kind::syntax, line, 1, msg);
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto w = detail::words(detail::strip_comment(lines[i]));
    int ln = static_cast<int>(i) + 1;
    if (w.empty()) continue;
    if (w[0] == "logic") {
      if (w.size() != 2 || !parse_logic(w[1])) fail(ln, "expected 'logic <zadeh|godel|lukasiewicz|product>'");
      if (logic) fail(ln, "duplicate logic line");
      logic = parse_logic(w[1]);
    } else if (w[0] == "domain") {
      if (domain_line) fail(ln, "duplicate domain line");
      domain_line = ln;
      domain.assign(w.begin() + 1, w.end());
      for (std::size_t a = 0; a < domain.size(); ++a)
        for (std::size_t b = a + 1; b < domain.size(); ++b)
          if (domain[a] == domain[b]) fail(ln, "duplicate domain element '" + domain[a] + "'");
    }
  }
  if (domain.empty()) fail(domain_line ? domain_line : 1, "missing or empty domain line");

  FuzzyInterpretation I(logic.value_or(fallback), signature, domain);
  auto element = [&](int ln, const std::string& name) {
    auto e = I.element(name);
    if (!e) fail(ln, "unknown domain element '" + name + "'");
    return *e;
  };
  auto degree = [&](int ln, const std::string& text) {
    try {
      return Degree::parse(text);
    } catch (const std::exception& e) {
      throw ParseError(ParseError::Kind::threshold_range, ln, 1, e.what());
    }
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto w = detail::words(detail::strip_comment(lines[i]));
    int ln = static_cast<int>(i) + 1;
    if (w.empty() || w[0] == "logic" || w[0] == "domain") continue;
    if (w[0] == "fint") {
      if (w.size() != 2 || w[1] != "1") fail(ln, "unsupported fint version");
    } else if (w[0] == "concept") {
      if (w.size() != 4) fail(ln, "expected 'concept <name> <element> <degree>'");
      if (!signature.has_concept(w[1]))
        throw ParseError(ParseError::Kind::undeclared_name, ln, 1, "undeclared concept name '" + w[1] + "'");
      I.set_concept(w[1], element(ln, w[2]), degree(ln, w[3]));
    } else if (w[0] == "role") {
      if (w.size() != 5) fail(ln, "expected 'role <name> <element> <element> <degree>'");
      if (!signature.has_role(w[1]))
        throw ParseError(ParseError::Kind::undeclared_name, ln, 1, "undeclared role name '" + w[1] + "'");
      I.set_role(w[1], element(ln, w[2]), element(ln, w[3]), degree(ln, w[4]));
    } else if (w[0] == "individual") {
      if (w.size() != 3) fail(ln, "expected 'individual <name> <element>'");
      if (!signature.has_individual(w[1]))
        throw ParseError(ParseError::Kind::undeclared_name, ln, 1, "undeclared individual '" + w[1] + "'");
      I.bind(w[1], element(ln, w[2]));
    } else {
      fail(ln, "unknown directive '" + w[0] + "'");
    }
  }
  return {std::move(I), logic};
}

/// Canonical text; zero entries are omitted.
inline std::string serialize_fint(const FuzzyInterpretation& I) {
  std::ostringstream os;
  const auto& sig = I.signature();
  const auto& dom = I.domain();
  const std::size_t n = I.size();
  os << "fint 1\n";
  os << "logic " << to_string(I.logic()) << '\n';
  os << "domain";
  for (const auto& e : dom) os << ' ' << e;
  os << '\n';
  for (std::size_t c = 0; c < sig.concepts().size(); ++c)
    for (std::size_t x = 0; x < n; ++x)
      if (const auto& d = I.concept_values(c)[x]; !d.is_zero())
        os << "concept " << sig.concepts()[c] << ' ' << dom[x] << ' ' << d << '\n';
  for (std::size_t r = 0; r < sig.roles().size(); ++r)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (const auto& d = I.role_values(r)[x * n + y]; !d.is_zero())
          os << "role " << sig.roles()[r] << ' ' << dom[x] << ' ' << dom[y] << ' ' << d << '\n';
  for (const auto& ind : sig.individuals())
    if (I.is_bound(ind)) os << "individual " << ind << ' ' << dom[I.individual(ind)] << '\n';
  return os.str();
}

}  // namespace fzt
