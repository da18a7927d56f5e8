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

#ifndef IAMCHECK_CONDITION_H_
#define IAMCHECK_CONDITION_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iamcheck {

/// A condition literal: either a string or a signed integer.
using Literal = std::variant<std::string, std::int64_t>;

std::string LiteralToString(Literal const& value);

/// Integer if `text` is a decimal integer in range, string otherwise.
Literal LiteralFromText(std::string_view text);

/// Attribute name to literal. Attributes absent from the map are "missing".
using RequestContext = std::map<std::string, Literal>;

enum class CompareOp { kEq, kNeq, kLt, kLeq, kGt, kGeq };

std::string_view CompareOpSymbol(CompareOp op);

/// Binding guard expression over request-context attributes.
///
/// This is a deliberately small language: comparisons of one attribute
/// against one literal, combined with `&&`, `||` and `!`. Textual form:
///
///     request.hour >= 9 && request.hour < 17 && !(resource.type == "bucket")
///
/// Evaluation is total. A comparison whose attribute is missing from the
/// context is false. Comparing a string with an integer is never equal;
/// ordering operators across the two types are false. Ordering operators
/// take integer literals only.
class Condition {
 public:
  enum class Kind { kCompare, kAnd, kOr, kNot };

  static Condition Compare(std::string attribute, CompareOp op, Literal value);
  static Condition And(std::vector<Condition> operands);
  static Condition Or(std::vector<Condition> operands);
  static Condition Not(Condition operand);

  Kind kind() const { return kind_; }
  std::string const& attribute() const { return attribute_; }
  CompareOp op() const { return op_; }
  Literal const& value() const { return value_; }
  std::vector<Condition> const& operands() const { return operands_; }

  bool Evaluate(RequestContext const& context) const;

  /// Canonical text; parsing it yields an equal condition.
  std::string ToString() const;

  /// Every (attribute, literal) pair used by a comparison, in tree order.
  void CollectAtoms(
      std::vector<std::pair<std::string, Literal>>& out) const;

  friend bool operator==(Condition const& a, Condition const& b) {
    return a.ToString() == b.ToString();
  }
  friend auto operator<=>(Condition const& a, Condition const& b) {
    return a.ToString() <=> b.ToString();
  }

 private:
  Condition() = default;

  Kind kind_ = Kind::kCompare;
  std::string attribute_;
  CompareOp op_ = CompareOp::kEq;
  Literal value_;
  std::vector<Condition> operands_;
};

class ConditionSyntaxError : public std::runtime_error {
 public:
  ConditionSyntaxError(std::string const& message, std::size_t offset)
      : std::runtime_error(message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the textual form shown on `Condition`. Throws ConditionSyntaxError.
Condition ParseCondition(std::string_view text);

}  // namespace iamcheck

#endif  // IAMCHECK_CONDITION_H_
