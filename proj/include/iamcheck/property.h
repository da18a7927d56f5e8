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

#ifndef IAMCHECK_PROPERTY_H_
#define IAMCHECK_PROPERTY_H_

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iamcheck/rules.h"

namespace iamcheck {

enum class Sort { kMember, kRole, kPermission, kResource, kCondition };

std::string_view SortKeyword(Sort sort);

/// The constraint one clause places on one sort: ANY, a single `!=` atom,
/// or a disjunction of `=` atoms.
struct SortPredicate {
  Sort sort = Sort::kMember;
  /// Context attribute name; set only for kCondition.
  std::string attribute;
  bool any = false;
  bool negated = false;
  std::vector<std::string> values;

  static SortPredicate Any(Sort sort);
  static SortPredicate OneOf(Sort sort, std::vector<std::string> values);
  static SortPredicate NotEqual(Sort sort, std::string value);

  bool Matches(std::string_view value) const;
  /// kCondition only: compares the rendered context value as a string. A
  /// missing attribute never equals anything.
  bool MatchesContext(RequestContext const& context) const;

  bool operator==(SortPredicate const&) const = default;
};

/// `AG (antecedent -> AF decision in consequent)`.
struct Property {
  std::string label;
  SortPredicate member = SortPredicate::Any(Sort::kMember);
  SortPredicate role = SortPredicate::Any(Sort::kRole);
  SortPredicate permission = SortPredicate::Any(Sort::kPermission);
  SortPredicate resource = SortPredicate::Any(Sort::kResource);
  std::vector<SortPredicate> conditions;
  std::set<Decision> consequent;
  /// 1-based line of the SPEC keyword in its source; 0 when built in code.
  int line = 0;
};

class PropertySyntaxError : public std::runtime_error {
 public:
  PropertySyntaxError(std::string const& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Every syntax error found in a property file.
class PropertyFileError : public std::runtime_error {
 public:
  explicit PropertyFileError(std::vector<PropertySyntaxError> errors);
  std::vector<PropertySyntaxError> const& errors() const { return errors_; }

 private:
  std::vector<PropertySyntaxError> errors_;
};

/// Parses exactly one `SPEC AG (...)` property.
Property ParseProperty(std::string_view text);

/// Parses a file of SPEC properties. `#` starts a comment running to end of
/// line; a `# name: <label>` comment names the property that follows it.
/// Unnamed properties get "spec <n>". Throws PropertyFileError.
std::vector<Property> ParsePropertyFile(std::string_view text);

/// Canonical single-line rendering, accepted by ParseProperty.
std::string ToString(Property const& property);

/// True iff every predicate in the antecedent holds for `request`.
bool Matches(Property const& property, Request const& request);

}  // namespace iamcheck

#endif  // IAMCHECK_PROPERTY_H_
