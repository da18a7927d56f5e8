// Copyright 2026 The iamcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iamcheck/property.h"

#include <cctype>
#include <optional>
#include <utility>

namespace iamcheck {

std::string_view SortKeyword(Sort sort) {
  switch (sort) {
    case Sort::kMember:
      return "MEMBER";
    case Sort::kRole:
      return "ROLE";
    case Sort::kPermission:
      return "PERMISSION";
    case Sort::kResource:
      return "RESOURCE";
    case Sort::kCondition:
      return "CONDITION";
  }
  return "?";
}

SortPredicate SortPredicate::Any(Sort sort) {
  SortPredicate p;
  p.sort = sort;
  p.any = true;
  return p;
}

SortPredicate SortPredicate::OneOf(Sort sort, std::vector<std::string> values) {
  SortPredicate p;
  p.sort = sort;
  p.values = std::move(values);
  return p;
}

SortPredicate SortPredicate::NotEqual(Sort sort, std::string value) {
  SortPredicate p;
  p.sort = sort;
  p.negated = true;
  p.values.push_back(std::move(value));
  return p;
}

bool SortPredicate::Matches(std::string_view value) const {
  if (any) return true;
  if (negated) return values.front() != value;
  for (auto const& v : values) {
    if (v == value) return true;
  }
  return false;
}

bool SortPredicate::MatchesContext(RequestContext const& context) const {
  if (any) return true;
  auto it = context.find(attribute);
  if (it == context.end()) return negated;
  bool listed = false;
  for (auto const& v : values) listed = listed || it->second == LiteralFromText(v);
  return negated ? !listed : listed;
}

namespace {

std::string FormatError(std::string const& message, int line, int column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": " + message;
}

std::string JoinErrors(std::vector<PropertySyntaxError> const& errors) {
  std::string out;
  for (auto const& e : errors) {
    if (!out.empty()) out += '\n';
    out += e.what();
  }
  return out;
}

}  // namespace

PropertySyntaxError::PropertySyntaxError(std::string const& message, int line,
                                         int column)
    : std::runtime_error(FormatError(message, line, column)),
      line_(line),
      column_(column) {}

PropertyFileError::PropertyFileError(std::vector<PropertySyntaxError> errors)
    : std::runtime_error(JoinErrors(errors)), errors_(std::move(errors)) {}

namespace {

enum class Tok {
  kIdent,
  kString,
  kLParen,
  kRParen,
  kAmp,
  kPipe,
  kArrow,
  kEq,
  kNeq,
  kName,  // `# name: ...` directive
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string_view TokName(Tok kind) {
  switch (kind) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kString:
      return "string";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kAmp:
      return "'&'";
    case Tok::kPipe:
      return "'|'";
    case Tok::kArrow:
      return "'->'";
    case Tok::kEq:
      return "'='";
    case Tok::kNeq:
      return "'!='";
    case Tok::kName:
      return "name directive";
    case Tok::kEnd:
      return "end of input";
  }
  return "?";
}

std::string Trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, std::string t, std::size_t width) {
    tokens.push_back({kind, std::move(t), line, column});
    advance(width);
  };
  // Aliases for the logical symbols as typeset.
  struct Alias {
    std::string_view utf8;
    Tok kind;
  };
  static constexpr Alias kAliases[] = {
      {"∧", Tok::kAmp},
      {"∨", Tok::kPipe},
      {"→", Tok::kArrow},
      {"≠", Tok::kNeq},
  };

  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      auto end = text.find('\n', i);
      if (end == std::string_view::npos) end = text.size();
      auto body = Trim(text.substr(i + 1, end - i - 1));
      if (body.rfind("name:", 0) == 0) {
        push(Tok::kName, Trim(std::string_view(body).substr(5)), end - i);
      } else {
        advance(end - i);
      }
      continue;
    }
    bool aliased = false;
    for (auto const& a : kAliases) {
      if (text.substr(i, a.utf8.size()) == a.utf8) {
        push(a.kind, std::string(a.utf8), a.utf8.size());
        aliased = true;
        break;
      }
    }
    if (aliased) continue;
    switch (ch) {
      case '(':
        push(Tok::kLParen, "(", 1);
        continue;
      case ')':
        push(Tok::kRParen, ")", 1);
        continue;
      case '&':
        push(Tok::kAmp, "&", text.substr(i, 2) == "&&" ? 2 : 1);
        continue;
      case '|':
        push(Tok::kPipe, "|", text.substr(i, 2) == "||" ? 2 : 1);
        continue;
      case '=':
        push(Tok::kEq, "=", text.substr(i, 2) == "==" ? 2 : 1);
        continue;
      default:
        break;
    }
    if (text.substr(i, 2) == "->") {
      push(Tok::kArrow, "->", 2);
      continue;
    }
    if (text.substr(i, 2) == "!=") {
      push(Tok::kNeq, "!=", 2);
      continue;
    }
    if (ch == '"') {
      auto close = text.find('"', i + 1);
      if (close == std::string_view::npos ||
          text.substr(i, close - i).find('\n') != std::string_view::npos) {
        throw PropertySyntaxError("unterminated string", line, column);
      }
      push(Tok::kString, std::string(text.substr(i + 1, close - i - 1)),
           close - i + 1);
      continue;
    }
    auto is_ident = [](char c) {
      auto u = static_cast<unsigned char>(c);
      return std::isalnum(u) || c == '_' || c == '.' || c == '/' || c == '-' ||
             c == '@';
    };
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && is_ident(text[j])) {
        // Stop before "->": `ANY->` is two tokens.
        if (text[j] == '-' && text.substr(j, 2) == "->") break;
        ++j;
      }
      push(Tok::kIdent, std::string(text.substr(i, j - i)), j - i);
      continue;
    }
    throw PropertySyntaxError(
        "unexpected character '" + std::string(1, ch) + "'", line, column);
  }
  tokens.push_back({Tok::kEnd, "", line, column});
  return tokens;
}

class PropertyParser {
 public:
  explicit PropertyParser(std::vector<Token> tokens)
      : tokens_(std::move(tokens)) {}

  bool AtEnd() const { return Peek().kind == Tok::kEnd; }
  Token const& Peek() const { return tokens_[pos_]; }

  std::optional<std::string> TakeNames() {
    std::optional<std::string> label;
    while (Peek().kind == Tok::kName) label = tokens_[pos_++].text;
    return label;
  }

  /// Skips to the next SPEC keyword or name directive after an error.
  void Recover() {
    if (!AtEnd()) ++pos_;
    while (!AtEnd() && !IsKeyword(Peek(), "SPEC") &&
           Peek().kind != Tok::kName) {
      ++pos_;
    }
  }

  Property ParseOne() {
    Property p;
    p.line = Peek().line;
    ExpectKeyword("SPEC");
    ExpectKeyword("AG");
    Expect(Tok::kLParen);

    std::set<Sort> seen;
    std::set<std::string> seen_attributes;
    while (true) {
      auto clause = ParseClause();
      auto const& at = clause.second;
      auto& pred = clause.first;
      if (pred.sort == Sort::kCondition) {
        if (!seen_attributes.insert(pred.attribute).second) {
          Fail("duplicate CONDITION." + pred.attribute + " clause", at);
        }
        p.conditions.push_back(std::move(pred));
      } else {
        if (!seen.insert(pred.sort).second) {
          Fail("duplicate " + std::string(SortKeyword(pred.sort)) + " clause",
               at);
        }
        Slot(p, pred.sort) = std::move(pred);
      }
      if (Peek().kind == Tok::kAmp) {
        ++pos_;
        continue;
      }
      break;
    }
    auto const& arrow = Peek();
    for (auto sort :
         {Sort::kMember, Sort::kRole, Sort::kPermission, Sort::kResource}) {
      if (!seen.contains(sort)) {
        Fail("missing " + std::string(SortKeyword(sort)) +
                 " clause (all four of MEMBER, ROLE, PERMISSION, RESOURCE "
                 "are required)",
             arrow);
      }
    }
    Expect(Tok::kArrow);
    ExpectKeyword("AF");
    ParseResult(p);
    Expect(Tok::kRParen);
    return p;
  }

 private:
  static bool IsKeyword(Token const& t, std::string_view word) {
    return t.kind == Tok::kIdent && t.text == word;
  }

  static SortPredicate& Slot(Property& p, Sort sort) {
    switch (sort) {
      case Sort::kMember:
        return p.member;
      case Sort::kRole:
        return p.role;
      case Sort::kPermission:
        return p.permission;
      default:
        return p.resource;
    }
  }

  [[noreturn]] static void Fail(std::string const& message, Token const& at) {
    throw PropertySyntaxError(message, at.line, at.column);
  }

  Token const& Expect(Tok kind) {
    auto const& t = Peek();
    if (t.kind != kind) {
      Fail("expected " + std::string(TokName(kind)) + ", found " +
               Describe(t),
           t);
    }
    ++pos_;
    return t;
  }

  void ExpectKeyword(std::string_view word) {
    auto const& t = Peek();
    if (!IsKeyword(t, word)) {
      Fail("expected '" + std::string(word) + "', found " + Describe(t), t);
    }
    ++pos_;
  }

  static std::string Describe(Token const& t) {
    if (t.kind == Tok::kIdent) return "'" + t.text + "'";
    if (t.kind == Tok::kString) return "\"" + t.text + "\"";
    return std::string(TokName(t.kind));
  }

  // Returns (sort, attribute) for MEMBER / ... / CONDITION.<attribute>.
  std::pair<Sort, std::string> ParseSortRef() {
    auto const& t = Peek();
    if (t.kind != Tok::kIdent) {
      Fail("expected sort name, found " + Describe(t), t);
    }
    for (auto sort :
         {Sort::kMember, Sort::kRole, Sort::kPermission, Sort::kResource}) {
      if (t.text == SortKeyword(sort)) {
        ++pos_;
        return {sort, {}};
      }
    }
    if (t.text == "CONDITION") {
      Fail("CONDITION needs an attribute, e.g. CONDITION.request.region", t);
    }
    if (t.text.rfind("CONDITION.", 0) == 0 && t.text.size() > 10) {
      ++pos_;
      return {Sort::kCondition, t.text.substr(10)};
    }
    Fail("unknown sort '" + t.text + "'", t);
  }

  // Returns the value, or nullopt for ANY.
  std::optional<std::string> ParseValue() {
    auto const& t = Peek();
    if (t.kind == Tok::kString) {
      ++pos_;
      return t.text;
    }
    if (IsKeyword(t, "ANY")) {
      ++pos_;
      return std::nullopt;
    }
    Fail("expected quoted value or ANY, found " + Describe(t), t);
  }

  std::pair<SortPredicate, Token> ParseClause() {
    Expect(Tok::kLParen);
    Token start = Peek();
    auto [sort, attribute] = ParseSortRef();
    SortPredicate pred;
    pred.sort = sort;
    pred.attribute = attribute;

    auto const& op = Peek();
    bool negated = false;
    if (op.kind == Tok::kNeq) {
      negated = true;
    } else if (op.kind != Tok::kEq) {
      Fail("expected '=' or '!=', found " + Describe(op), op);
    }
    ++pos_;
    Token value_tok = Peek();
    auto value = ParseValue();
    if (!value) {
      if (negated) Fail("'!= ANY' is not allowed", value_tok);
      pred.any = true;
    } else {
      pred.negated = negated;
      pred.values.push_back(*value);
    }

    while (Peek().kind == Tok::kPipe) {
      auto const& pipe = Peek();
      if (pred.any) Fail("ANY cannot be combined with other values", pipe);
      if (pred.negated) Fail("'!=' cannot be combined with '|'", pipe);
      ++pos_;
      if (Peek().kind == Tok::kIdent && !IsKeyword(Peek(), "ANY")) {
        Token ref_tok = Peek();
        auto ref = ParseSortRef();
        if (ref.first != sort || ref.second != attribute) {
          Fail("clause mixes sorts", ref_tok);
        }
        auto const& eq = Peek();
        if (eq.kind == Tok::kNeq) {
          Fail("'!=' cannot be combined with '|'", eq);
        }
        Expect(Tok::kEq);
      }
      Token alt_tok = Peek();
      auto alt = ParseValue();
      if (!alt) Fail("ANY cannot be combined with other values", alt_tok);
      pred.values.push_back(*alt);
    }
    Expect(Tok::kRParen);
    return {std::move(pred), start};
  }

  void ParseResult(Property& p) {
    int parens = 0;
    while (Peek().kind == Tok::kLParen) {
      ++pos_;
      ++parens;
    }
    ExpectKeyword("decision");
    Expect(Tok::kEq);
    ParseDecisionInto(p);
    while (Peek().kind == Tok::kPipe) {
      ++pos_;
      if (IsKeyword(Peek(), "decision")) {
        ++pos_;
        Expect(Tok::kEq);
      }
      ParseDecisionInto(p);
    }
    for (; parens > 0; --parens) Expect(Tok::kRParen);
  }

  void ParseDecisionInto(Property& p) {
    auto const& t = Peek();
    std::optional<Decision> d;
    if (t.kind == Tok::kIdent) d = ParseDecision(t.text);
    if (!d) {
      Fail("empty consequent: expected Grant or Deny, found " + Describe(t),
           t);
    }
    ++pos_;
    p.consequent.insert(*d);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Property ParseProperty(std::string_view text) {
  PropertyParser parser(Lex(text));
  auto label = parser.TakeNames();
  auto p = parser.ParseOne();
  parser.TakeNames();
  if (!parser.AtEnd()) {
    auto const& t = parser.Peek();
    throw PropertySyntaxError("unexpected input after property", t.line,
                              t.column);
  }
  p.label = label.value_or("spec 1");
  return p;
}

std::vector<Property> ParsePropertyFile(std::string_view text) {
  std::vector<Token> tokens;
  try {
    tokens = Lex(text);
  } catch (PropertySyntaxError const& e) {
    throw PropertyFileError({e});
  }
  PropertyParser parser(std::move(tokens));
  std::vector<Property> out;
  std::vector<PropertySyntaxError> errors;
  int index = 0;
  while (true) {
    auto label = parser.TakeNames();
    if (parser.AtEnd()) break;
    ++index;
    try {
      auto p = parser.ParseOne();
      p.label = label.value_or("spec " + std::to_string(index));
      out.push_back(std::move(p));
    } catch (PropertySyntaxError const& e) {
      errors.push_back(e);
      parser.Recover();
    }
  }
  if (!errors.empty()) throw PropertyFileError(std::move(errors));
  return out;
}

namespace {

std::string SortRef(SortPredicate const& p) {
  std::string out(SortKeyword(p.sort));
  if (p.sort == Sort::kCondition) out += "." + p.attribute;
  return out;
}

std::string ClauseToString(SortPredicate const& p) {
  auto ref = SortRef(p);
  if (p.any) return "(" + ref + " = ANY)";
  if (p.negated) return "(" + ref + " != \"" + p.values.front() + "\")";
  std::string out = "(";
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (i > 0) out += " | ";
    out += ref + " = \"" + p.values[i] + "\"";
  }
  return out + ")";
}

}  // namespace

std::string ToString(Property const& property) {
  std::string out = "SPEC AG (";
  out += ClauseToString(property.member) + " & ";
  out += ClauseToString(property.role) + " & ";
  out += ClauseToString(property.permission) + " & ";
  out += ClauseToString(property.resource);
  for (auto const& c : property.conditions) out += " & " + ClauseToString(c);
  out += " -> AF decision = ";
  bool first = true;
  for (auto d : property.consequent) {
    if (!first) out += " | ";
    out += DecisionName(d);
    first = false;
  }
  return out + ")";
}

bool Matches(Property const& property, Request const& request) {
  if (!property.member.Matches(request.member)) return false;
  if (!property.role.Matches(request.role)) return false;
  if (!property.permission.Matches(request.permission.ToString())) {
    return false;
  }
  if (!property.resource.Matches(request.resource)) return false;
  for (auto const& c : property.conditions) {
    if (!c.MatchesContext(request.context)) return false;
  }
  return true;
}

}  // namespace iamcheck
