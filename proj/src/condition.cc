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

#include "iamcheck/condition.h"

#include <cctype>
#include <charconv>
#include <utility>

namespace iamcheck {

std::string LiteralToString(Literal const& value) {
  if (auto const* s = std::get_if<std::string>(&value)) return *s;
  return std::to_string(std::get<std::int64_t>(value));
}

Literal LiteralFromText(std::string_view text) {
  std::int64_t value = 0;
  auto const* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (!text.empty() && ec == std::errc() && ptr == end &&
      std::to_string(value) == text) {
    return value;
  }
  return std::string(text);
}

std::string_view CompareOpSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq:
      return "==";
    case CompareOp::kNeq:
      return "!=";
    case CompareOp::kLt:
      return "<";
    case CompareOp::kLeq:
      return "<=";
    case CompareOp::kGt:
      return ">";
    case CompareOp::kGeq:
      return ">=";
  }
  return "?";
}

Condition Condition::Compare(std::string attribute, CompareOp op,
                             Literal value) {
  if (std::holds_alternative<std::string>(value) && op != CompareOp::kEq &&
      op != CompareOp::kNeq) {
    throw std::invalid_argument("ordering comparison on '" + attribute +
                                "' needs an integer literal");
  }
  Condition c;
  c.kind_ = Kind::kCompare;
  c.attribute_ = std::move(attribute);
  c.op_ = op;
  c.value_ = std::move(value);
  return c;
}

Condition Condition::And(std::vector<Condition> operands) {
  if (operands.empty()) {
    throw std::invalid_argument("'&&' needs at least one operand");
  }
  if (operands.size() == 1) return std::move(operands.front());
  Condition c;
  c.kind_ = Kind::kAnd;
  c.operands_ = std::move(operands);
  return c;
}

Condition Condition::Or(std::vector<Condition> operands) {
  if (operands.empty()) {
    throw std::invalid_argument("'||' needs at least one operand");
  }
  if (operands.size() == 1) return std::move(operands.front());
  Condition c;
  c.kind_ = Kind::kOr;
  c.operands_ = std::move(operands);
  return c;
}

Condition Condition::Not(Condition operand) {
  Condition c;
  c.kind_ = Kind::kNot;
  c.operands_.push_back(std::move(operand));
  return c;
}

bool Condition::Evaluate(RequestContext const& context) const {
  switch (kind_) {
    case Kind::kAnd:
      for (auto const& o : operands_) {
        if (!o.Evaluate(context)) return false;
      }
      return true;
    case Kind::kOr:
      for (auto const& o : operands_) {
        if (o.Evaluate(context)) return true;
      }
      return false;
    case Kind::kNot:
      return !operands_.front().Evaluate(context);
    case Kind::kCompare:
      break;
  }
  auto it = context.find(attribute_);
  if (it == context.end()) return false;
  Literal const& actual = it->second;
  if (actual.index() != value_.index()) return op_ == CompareOp::kNeq;
  switch (op_) {
    case CompareOp::kEq:
      return actual == value_;
    case CompareOp::kNeq:
      return actual != value_;
    case CompareOp::kLt:
      return actual < value_;
    case CompareOp::kLeq:
      return actual <= value_;
    case CompareOp::kGt:
      return actual > value_;
    case CompareOp::kGeq:
      return actual >= value_;
  }
  return false;
}

std::string Condition::ToString() const {
  switch (kind_) {
    case Kind::kCompare: {
      std::string out = attribute_;
      out += ' ';
      out += CompareOpSymbol(op_);
      out += ' ';
      if (auto const* s = std::get_if<std::string>(&value_)) {
        out += '"' + *s + '"';
      } else {
        out += std::to_string(std::get<std::int64_t>(value_));
      }
      return out;
    }
    case Kind::kNot:
      return "!(" + operands_.front().ToString() + ")";
    case Kind::kAnd:
    case Kind::kOr: {
      std::string out = "(";
      for (std::size_t i = 0; i < operands_.size(); ++i) {
        if (i > 0) out += kind_ == Kind::kAnd ? " && " : " || ";
        out += operands_[i].ToString();
      }
      return out + ")";
    }
  }
  return {};
}

void Condition::CollectAtoms(
    std::vector<std::pair<std::string, Literal>>& out) const {
  if (kind_ == Kind::kCompare) {
    out.emplace_back(attribute_, value_);
    return;
  }
  for (auto const& o : operands_) o.CollectAtoms(out);
}

namespace {

// or := and ("||" and)* ; and := unary ("&&" unary)* ;
// unary := "!" unary | "(" or ")" | attribute op literal
class ConditionParser {
 public:
  explicit ConditionParser(std::string_view text) : text_(text) {}

  Condition Parse() {
    auto c = ParseOr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return c;
  }

 private:
  [[noreturn]] void Fail(std::string const& what) const {
    throw ConditionSyntaxError(
        "condition: " + what + " at offset " + std::to_string(pos_), pos_);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(std::string_view token) {
    SkipSpace();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Condition ParseOr() {
    std::vector<Condition> operands;
    operands.push_back(ParseAnd());
    while (Accept("||")) operands.push_back(ParseAnd());
    return Condition::Or(std::move(operands));
  }

  Condition ParseAnd() {
    std::vector<Condition> operands;
    operands.push_back(ParseUnary());
    while (Accept("&&")) operands.push_back(ParseUnary());
    return Condition::And(std::move(operands));
  }

  Condition ParseUnary() {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '!' &&
        text_.substr(pos_, 2) != "!=") {
      ++pos_;
      return Condition::Not(ParseUnary());
    }
    if (Accept("(")) {
      auto inner = ParseOr();
      if (!Accept(")")) Fail("expected ')'");
      return inner;
    }
    return ParseCompare();
  }

  Condition ParseCompare() {
    SkipSpace();
    auto start = pos_;
    auto is_ident_char = [](char ch, bool first) {
      auto u = static_cast<unsigned char>(ch);
      return std::isalpha(u) || ch == '_' ||
             (!first && (std::isdigit(u) || ch == '.'));
    };
    if (pos_ >= text_.size() || !is_ident_char(text_[pos_], true)) {
      Fail("expected attribute name");
    }
    while (pos_ < text_.size() && is_ident_char(text_[pos_], false)) ++pos_;
    std::string attribute(text_.substr(start, pos_ - start));

    CompareOp op;
    if (Accept("==")) {
      op = CompareOp::kEq;
    } else if (Accept("!=")) {
      op = CompareOp::kNeq;
    } else if (Accept("<=")) {
      op = CompareOp::kLeq;
    } else if (Accept(">=")) {
      op = CompareOp::kGeq;
    } else if (Accept("<")) {
      op = CompareOp::kLt;
    } else if (Accept(">")) {
      op = CompareOp::kGt;
    } else {
      Fail("expected comparison operator");
    }
    auto at = pos_;
    auto value = ParseLiteral();
    if (std::holds_alternative<std::string>(value) && op != CompareOp::kEq &&
        op != CompareOp::kNeq) {
      pos_ = at;
      Fail("ordering comparison needs an integer literal");
    }
    return Condition::Compare(std::move(attribute), op, std::move(value));
  }

  Literal ParseLiteral() {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '"') {
      auto close = text_.find('"', pos_ + 1);
      if (close == std::string_view::npos) Fail("unterminated string");
      std::string value(text_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return value;
    }
    std::int64_t number = 0;
    auto const* first = text_.data() + pos_;
    auto const* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, number);
    if (ec != std::errc{} || ptr == first) Fail("expected literal");
    pos_ += static_cast<std::size_t>(ptr - first);
    return number;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Condition ParseCondition(std::string_view text) {
  return ConditionParser(text).Parse();
}

}  // namespace iamcheck
