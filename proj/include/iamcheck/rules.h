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

#ifndef IAMCHECK_RULES_H_
#define IAMCHECK_RULES_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iamcheck/condition.h"
#include "iamcheck/inheritance.h"
#include "iamcheck/model.h"

namespace iamcheck {

enum class Decision { kGrant, kDeny };

std::string_view DecisionName(Decision d);
std::optional<Decision> ParseDecision(std::string_view name);

/// One concrete access attempt: a value for each sort plus the context the
/// binding conditions are evaluated against.
struct Request {
  std::string member;
  std::string role;
  Permission permission;
  std::string resource;
  RequestContext context;
};

std::string RequestToString(Request const& request);

/// `(member in members) & role & (permission in permissions) & resource
/// [& condition] -> decision`, compiled from one effective binding at one
/// resource.
struct AccessRule {
  std::set<std::string> members;  // group-expanded
  std::string role;
  std::set<Permission> permissions;
  std::string resource;
  std::optional<Condition> condition;
  /// Always kGrant for compiled rules; Decide rejects anything else.
  Decision decision = Decision::kGrant;
  EffectiveBinding provenance;

  bool Matches(Request const& request) const;
};

/// One rule per (resource, effective binding), ordered by resource id, then
/// origin, then role id, then member ids.
std::vector<AccessRule> Compile(PolicyUniverse const& universe,
                                EffectivePolicySet const& effective);

/// Grant iff some rule matches; otherwise the default, Deny.
Decision Decide(std::span<AccessRule const> rules, Request const& request);

/// As above, after checking every id in `request` against the universe.
/// Throws UnknownIdError.
Decision Decide(PolicyUniverse const& universe,
                std::span<AccessRule const> rules, Request const& request);

/// First rule matching `request`, or nullptr.
AccessRule const* FindGrantingRule(std::span<AccessRule const> rules,
                                   Request const& request);

void ValidateRequest(PolicyUniverse const& universe, Request const& request);

}  // namespace iamcheck

#endif  // IAMCHECK_RULES_H_
