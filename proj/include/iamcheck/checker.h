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

#ifndef IAMCHECK_CHECKER_H_
#define IAMCHECK_CHECKER_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iamcheck/model.h"
#include "iamcheck/property.h"
#include "iamcheck/rules.h"

namespace iamcheck {

/// States {Grant, Deny}, initial state Deny, one action per access rule.
/// Every request has a successor: the matching rule's decision, or Deny.
class TransitionSystem {
 public:
  explicit TransitionSystem(std::span<AccessRule const> rules)
      : rules_(rules) {}

  static constexpr Decision Initial() { return Decision::kDeny; }

  /// The state reached from any state by performing `request`.
  Decision Step(Decision /*from*/, Request const& request) const {
    return Decide(rules_, request);
  }

  std::span<AccessRule const> rules() const { return rules_; }

 private:
  std::span<AccessRule const> rules_;
};

/// Finite value sets for every condition attribute referenced by the rules
/// or the property. For each attribute: "absent", every mentioned literal,
/// v-1 and v+1 for each integer literal v, and one string that no
/// condition mentions.
class ContextDomain {
 public:
  static constexpr std::string_view kOtherValue = "__other__";

  using Values = std::vector<std::optional<Literal>>;

  static ContextDomain Build(std::span<AccessRule const> rules,
                             std::span<Property const> properties);

  std::vector<std::pair<std::string, Values>> const& attributes() const {
    return attributes_;
  }
  /// 1 when no attribute is referenced.
  std::uint64_t size() const;
  /// Contexts in enumeration order: attributes by name, values absent
  /// first, then integers ascending, then strings ascending; the last
  /// attribute varies fastest.
  std::vector<RequestContext> Enumerate() const;

 private:
  std::vector<std::pair<std::string, Values>> attributes_;
};

enum class VerdictResult { kTrue, kFalse, kVacuous, kError };

std::string_view VerdictResultName(VerdictResult r);
std::optional<VerdictResult> ParseVerdictResult(std::string_view name);

/// One reason the counterexample went the way it did.
struct Finding {
  enum class Kind {
    kGrantedBy,             // the rule that granted a request expected Deny
    kRoleLacksPermission,   // binding in force at the resource, wrong PA
    kConditionFalse,        // binding in force, condition not satisfied
    kOtherRoleRequested,    // binding would grant, but the request names
                            // a different role
    kBoundBelow,            // binding attached beneath the resource
    kOtherBranch,           // binding attached in an unrelated subtree
  };
  Kind kind;
  std::string member;
  std::string role;
  std::string origin;  // where the binding is attached
  std::string detail;

  bool operator==(Finding const&) const = default;
};

std::string_view FindingKindName(Finding::Kind kind);
std::optional<Finding::Kind> ParseFindingKind(std::string_view name);

struct Counterexample {
  Request request;
  Decision decision = Decision::kDeny;
  std::vector<Finding> findings;
};

struct Verdict {
  std::string label;
  std::string property;  // canonical text
  std::set<Decision> consequent;
  VerdictResult result = VerdictResult::kTrue;
  std::optional<Counterexample> counterexample;
  std::uint64_t tuples_enumerated = 0;
  std::uint64_t tuples_matching = 0;
  std::vector<std::string> warnings;
  std::string error;  // set iff result == kError
};

/// A property literal that is not in its sort's domain.
class BindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks every literal in the property against the universe domains.
/// Throws BindError naming all unresolved literals.
void BindProperty(PolicyUniverse const& universe, Property const& property);

/// Decides AG(antecedent -> AF consequent) over the transition system built
/// from `rules`. Every request in members x roles x permissions x resources
/// x contexts is a one-step path from the initial state, so the formula
/// holds iff every request matching the antecedent is decided inside the
/// consequent. The first violating request in enumeration order is the
/// counterexample. Throws BindError.
Verdict Verify(PolicyUniverse const& universe,
               std::span<AccessRule const> rules, Property const& property);

/// One verdict per property, in input order. Bind errors become kError
/// verdicts. Properties are checked on up to `max_threads` threads
/// (0 = hardware concurrency); output does not depend on the thread count.
std::vector<Verdict> VerifyAll(PolicyUniverse const& universe,
                               std::span<AccessRule const> rules,
                               std::span<Property const> properties,
                               unsigned max_threads = 0);

/// Multi-line human-readable report. Stable text.
std::string Explain(Verdict const& verdict);

}  // namespace iamcheck

#endif  // IAMCHECK_CHECKER_H_
