#pragma once

// Reader and writer for the line-oriented .fkb knowledge base format.
//
//   # comment
//   logic godel                      (zadeh | godel | lukasiewicz | product)
//   concepts Bird Penguin Fly        (any number of lines; names accumulate)
//   roles has_Wings
//   individuals tweety
//   distinguished Bird Penguin
//   tbox: (and Yellow Black) <= Bot >= 1
//   wtbox Bird: T(Bird) <= Fly @ 20
//   abox: Bird(tweety) >= 0.5
//   abox: has_Wings(tweety,tweety) > 0
//
// Concept expressions:
//   E := name | Top | Bot | (not E) | (and E E) | (or E E)
//      | (some role E) | (all role E) | T(E)
//
// Numbers are integers, exact decimals ("0.125") or fractions ("3/8"), with
// an optional sign. Thresholds must lie in [0,1]; weights are unrestricted.
// Declarations may appear anywhere in the file; every name used in an axiom
// must be declared.

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fzt/kb.hpp"

namespace fzt {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, nested_typicality, undeclared_name, threshold_range, invalid_kb };

  ParseError(Kind kind, int line, int column, std::string message, std::vector<std::string> expected = {})
      : std::runtime_error(format(line, column, message, expected)),
        kind_(kind),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(int line, int column, const std::string& msg,
                            const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << msg;
    if (!expected.empty()) {
      os << " (expected";
      for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? " | " : " ") << expected[i];
      os << ")";
    }
    return os.str();
  }

  Kind kind_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

namespace detail {

inline bool is_reserved(std::string_view s) {
  static constexpr std::string_view kReserved[] = {"Top", "Bot", "T", "not", "and", "or", "some", "all"};
  for (auto r : kReserved)
    if (s == r) return true;
  return false;
}

struct Token {
  enum class Type { ident, number, punct, end };
  Type type;
  std::string text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t pos) { return static_cast<int>(pos) + 1; };
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
      out.push_back({Token::Type::ident, std::string(line.substr(start, i - start)), col(start)});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
               ((c == '-' || c == '+') && i + 1 < line.size() &&
                (std::isdigit(static_cast<unsigned char>(line[i + 1])) || line[i + 1] == '.'))) {
      ++i;
      while (i < line.size() && (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '.' ||
                                 line[i] == '/'))
        ++i;
      out.push_back({Token::Type::number, std::string(line.substr(start, i - start)), col(start)});
    } else if ((c == '<' || c == '>') && i + 1 < line.size() && line[i + 1] == '=') {
      out.push_back({Token::Type::punct, std::string(line.substr(start, 2)), col(start)});
      i += 2;
    } else if (c == '(' || c == ')' || c == ',' || c == ':' || c == '@' || c == '<' || c == '>') {
      out.push_back({Token::Type::punct, std::string(1, c), col(start)});
      ++i;
    } else {
      throw ParseError(ParseError::Kind::syntax, line_no, col(start),
                       std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Type::end, "", col(line.size())});
  return out;
}

class LineParser {
 public:
  LineParser(std::string_view line, int line_no, const Signature& sig)
      : toks_(tokenize(line, line_no)), line_no_(line_no), sig_(sig) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at_end() const { return peek().type == Token::Type::end; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg, std::vector<std::string> expected = {},
                         ParseError::Kind kind = ParseError::Kind::syntax) const {
    throw ParseError(kind, line_no_, t.column, msg, std::move(expected));
  }

  static std::string describe(const Token& t) {
    return t.type == Token::Type::end ? "end of line" : "'" + t.text + "'";
  }

  void expect_punct(std::string_view p) {
    const Token& t = peek();
    if (t.type != Token::Type::punct || t.text != p) fail(t, "unexpected " + describe(t), {std::string(p)});
    next();
  }

  bool accept_punct(std::string_view p) {
    if (peek().type == Token::Type::punct && peek().text == p) {
      next();
      return true;
    }
    return false;
  }

  void expect_end() {
    if (!at_end()) fail(peek(), "trailing input " + describe(peek()), {"end of line"});
  }

  std::string expect_ident(const char* what) {
    const Token& t = peek();
    if (t.type != Token::Type::ident) fail(t, "unexpected " + describe(t), {what});
    return next().text;
  }

  std::string expect_role() {
    Token t = peek();
    std::string name = expect_ident("role name");
    if (!sig_.has_role(name))
      fail(t, "undeclared role name '" + name + "'", {}, ParseError::Kind::undeclared_name);
    return name;
  }

  std::string expect_individual() {
    Token t = peek();
    std::string name = expect_ident("individual name");
    if (!sig_.has_individual(name))
      fail(t, "undeclared individual '" + name + "'", {}, ParseError::Kind::undeclared_name);
    return name;
  }

  Concept concept_expr() {
    Token t = peek();
    if (t.type == Token::Type::ident) {
      next();
      if (t.text == "Top") return Concept::top();
      if (t.text == "Bot") return Concept::bottom();
      if (t.text == "T") {
        expect_punct("(");
        Token inner_start = peek();
        Concept inner = concept_expr();
        expect_punct(")");
        if (inner.contains_typicality())
          fail(inner_start, "nested typicality operator", {}, ParseError::Kind::nested_typicality);
        return Concept::typ(inner);
      }
      if (is_reserved(t.text)) fail(t, "keyword '" + t.text + "' outside parentheses", {"concept"});
      if (!sig_.has_concept(t.text))
        fail(t, "undeclared concept name '" + t.text + "'", {}, ParseError::Kind::undeclared_name);
      return Concept::atomic(t.text);
    }
    if (t.type == Token::Type::punct && t.text == "(") {
      next();
      Token op = peek();
      std::string name = expect_ident("not | and | or | some | all");
      Concept result;
      if (name == "not") {
        result = Concept::neg(concept_expr());
      } else if (name == "and" || name == "or") {
        Concept a = concept_expr();
        Concept b = concept_expr();
        result = name == "and" ? Concept::conj(a, b) : Concept::disj(a, b);
      } else if (name == "some" || name == "all") {
        std::string role = expect_role();
        Concept c = concept_expr();
        result = name == "some" ? Concept::exists(role, c) : Concept::forall(role, c);
      } else {
        fail(op, "unknown constructor '" + name + "'", {"not", "and", "or", "some", "all"});
      }
      expect_punct(")");
      return result;
    }
    fail(t, "unexpected " + describe(t), {"concept"});
  }

  Comparator comparator() {
    const Token& t = peek();
    if (t.type == Token::Type::punct)
      if (auto c = parse_comparator(t.text)) {
        next();
        return *c;
      }
    fail(t, "unexpected " + describe(t), {">=", "<=", ">", "<"});
  }

  Rational number(const char* what) {
    Token t = peek();
    if (t.type != Token::Type::number) fail(t, "unexpected " + describe(t), {what});
    next();
    try {
      return Rational::parse(t.text);
    } catch (const std::exception& e) {
      fail(t, e.what(), {what});
    }
  }

  Degree threshold() {
    Token t = peek();
    Rational r = number("threshold in [0,1]");
    if (r < Rational(0) || r > Rational(1))
      fail(t, "threshold " + r.str() + " outside [0,1]", {}, ParseError::Kind::threshold_range);
    return Degree(r);
  }

  // tbox body: C <= D θ n
  FuzzyAxiom inclusion() {
    Concept lhs = concept_expr();
    expect_punct("<=");
    Concept rhs = concept_expr();
    Comparator c = comparator();
    Degree n = threshold();
    return FuzzyAxiom::inclusion(lhs, rhs, c, n);
  }

  // abox body: C(a) θ n | r(a,b) θ n
  FuzzyAxiom assertion() {
    if (peek().type == Token::Type::ident && sig_.has_role(peek().text) && peek(1).text == "(") {
      std::string role = next().text;
      expect_punct("(");
      std::string a = expect_individual();
      expect_punct(",");
      std::string b = expect_individual();
      expect_punct(")");
      Comparator c = comparator();
      return FuzzyAxiom::role_assertion(role, a, b, c, threshold());
    }
    Concept body = concept_expr();
    expect_punct("(");
    std::string a = expect_individual();
    expect_punct(")");
    Comparator c = comparator();
    return FuzzyAxiom::assertion(body, a, c, threshold());
  }

  // Either form, distinguished by what follows the leading expression.
  FuzzyAxiom any_axiom() {
    if (peek().type == Token::Type::ident && sig_.has_role(peek().text) && peek(1).text == "(")
      return assertion();
    std::size_t save = pos_;
    concept_expr();
    bool is_assertion = peek().type == Token::Type::punct && peek().text == "(";
    pos_ = save;
    return is_assertion ? assertion() : inclusion();
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_no_;
  const Signature& sig_;
};

inline std::string_view strip_comment(std::string_view line) {
  if (auto p = line.find('#'); p != std::string_view::npos) line = line.substr(0, p);
  return line;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines.push_back(l);
    start = end + 1;
  }
  return lines;
}

inline void declare_name(LineParser& p, const Token& t, bool added, const std::string& kind) {
  if (is_reserved(t.text)) p.fail(t, "reserved word '" + t.text + "' used as " + kind + " name");
  if (!added) p.fail(t, "duplicate declaration of '" + t.text + "'");
}

}  // namespace detail

/// Parses .fkb text. Throws ParseError on syntax errors, nested typicality,
/// undeclared names, out-of-range thresholds, or an invalid resulting KB.
inline WeightedKB parse_kb(std::string_view text) {
  using detail::LineParser;
  using detail::Token;
  WeightedKB kb;
  auto lines = detail::split_lines(text);
  bool logic_seen = false;
  Signature empty;

  // Pass 1: declarations.
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    LineParser p(detail::strip_comment(lines[i]), line_no, empty);
    if (p.at_end()) continue;
    Token head = p.peek();
    if (head.type != Token::Type::ident) continue;  // reported in pass 2
    const std::string& kw = head.text;
    if (kw == "logic") {
      p.next();
      Token t = p.peek();
      std::string name = p.expect_ident("zadeh | godel | lukasiewicz | product");
      auto logic = parse_logic(name);
      if (!logic) p.fail(t, "unknown logic '" + name + "'", {"zadeh", "godel", "lukasiewicz", "product"});
      if (logic_seen) p.fail(head, "duplicate logic line");
      logic_seen = true;
      kb.logic = *logic;
      p.expect_end();
    } else if (kw == "concepts" || kw == "roles" || kw == "individuals") {
      p.next();
      while (!p.at_end()) {
        Token t = p.peek();
        std::string name = p.expect_ident("name");
        bool added = true;
        if (kw != "concepts" && kb.signature.has_concept(name)) added = false;
        if (kw != "roles" && kb.signature.has_role(name)) added = false;
        if (kw != "individuals" && kb.signature.has_individual(name)) added = false;
        if (added) {
          if (kw == "concepts") added = kb.signature.add_concept(name);
          else if (kw == "roles") added = kb.signature.add_role(name);
          else added = kb.signature.add_individual(name);
        }
        detail::declare_name(p, t, added, kw.substr(0, kw.size() - 1));
      }
    }
  }

  // Pass 2: everything else, against the complete signature.
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    LineParser p(detail::strip_comment(lines[i]), line_no, kb.signature);
    if (p.at_end()) continue;
    Token head = p.peek();
    static const std::vector<std::string> kSections = {"logic", "concepts", "roles", "individuals",
                                                      "distinguished", "tbox:", "wtbox", "abox:"};
    if (head.type != Token::Type::ident) p.fail(head, "unexpected " + LineParser::describe(head), kSections);
    const std::string& kw = head.text;
    if (kw == "logic" || kw == "concepts" || kw == "roles" || kw == "individuals") continue;
    p.next();
    if (kw == "distinguished") {
      while (!p.at_end()) {
        Token t = p.peek();
        std::string name = p.expect_ident("concept name");
        if (!kb.signature.has_concept(name))
          p.fail(t, "undeclared concept name '" + name + "'", {}, ParseError::Kind::undeclared_name);
        if (kb.is_distinguished(name)) p.fail(t, "duplicate distinguished concept '" + name + "'");
        kb.distinguished.push_back(name);
      }
    } else if (kw == "tbox") {
      p.expect_punct(":");
      kb.tbox.push_back(p.inclusion());
      p.expect_end();
    } else if (kw == "abox") {
      p.expect_punct(":");
      kb.abox.push_back(p.assertion());
      p.expect_end();
    } else if (kw == "wtbox") {
      Token subj_tok = p.peek();
      std::string subject = p.expect_ident("distinguished concept name");
      if (!kb.signature.has_concept(subject))
        p.fail(subj_tok, "undeclared concept name '" + subject + "'", {}, ParseError::Kind::undeclared_name);
      p.expect_punct(":");
      Token lhs_tok = p.peek();
      Concept lhs = p.concept_expr();
      if (!(lhs == Concept::typ(Concept::atomic(subject))))
        p.fail(lhs_tok, "left side of a weighted inclusion must be T(" + subject + ")", {"T(" + subject + ")"});
      p.expect_punct("<=");
      Token rhs_tok = p.peek();
      Concept rhs = p.concept_expr();
      if (rhs.contains_typicality())
        p.fail(rhs_tok, "typicality in the consequent of a weighted inclusion", {},
               ParseError::Kind::nested_typicality);
      p.expect_punct("@");
      Rational w = p.number("weight");
      p.expect_end();
      kb.weighted.push_back({subject, rhs, w});
    } else {
      p.fail(head, "unknown section '" + kw + "'", kSections);
    }
  }

  auto violations = validate_kb(kb);
  if (!violations.empty())
    throw ParseError(ParseError::Kind::invalid_kb, 0, 0, violations.front().path + ": " + violations.front().message);
  return kb;
}

/// Parses a concept expression against a signature.
inline Concept parse_concept(std::string_view text, const Signature& sig) {
  detail::LineParser p(text, 1, sig);
  Concept c = p.concept_expr();
  p.expect_end();
  return c;
}

/// Parses one axiom body ("C <= D >= n", "C(a) > n", "r(a,b) < n"), with an
/// optional "tbox:" or "abox:" prefix.
inline FuzzyAxiom parse_axiom(std::string_view text, const Signature& sig) {
  detail::LineParser p(text, 1, sig);
  const auto& head = p.peek();
  if (head.type == detail::Token::Type::ident && (head.text == "tbox" || head.text == "abox") &&
      p.peek(1).text == ":") {
    bool tbox = head.text == "tbox";
    p.next();
    p.next();
    FuzzyAxiom ax = tbox ? p.inclusion() : p.assertion();
    p.expect_end();
    return ax;
  }
  FuzzyAxiom ax = p.any_axiom();
  p.expect_end();
  return ax;
}

/// Canonical .fkb text. Weighted inclusions are grouped by distinguished
/// concept in declaration order.
inline std::string serialize_kb(const WeightedKB& kb) {
  std::ostringstream os;
  auto names = [&](const char* kw, const std::vector<std::string>& list) {
    if (list.empty()) return;
    os << kw;
    for (const auto& n : list) os << ' ' << n;
    os << '\n';
  };
  os << "logic " << to_string(kb.logic) << '\n';
  names("concepts", kb.signature.concepts());
  names("roles", kb.signature.roles());
  names("individuals", kb.signature.individuals());
  names("distinguished", kb.distinguished);
  for (const auto& ax : kb.tbox) os << "tbox: " << ax.str() << '\n';
  std::vector<std::string> subjects = kb.distinguished;
  for (const auto& w : kb.weighted)
    if (std::find(subjects.begin(), subjects.end(), w.subject) == subjects.end()) subjects.push_back(w.subject);
  for (const auto& s : subjects)
    for (const auto& w : kb.weighted_tbox(s))
      os << "wtbox " << s << ": T(" << s << ") <= " << w.consequent.str() << " @ " << w.weight.str() << '\n';
  for (const auto& ax : kb.abox) os << "abox: " << ax.str() << '\n';
  return os.str();
}

}  // namespace fzt
