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

#include "iamcheck/rules.h"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace iamcheck {

std::string_view DecisionName(Decision d) {
  return d == Decision::kGrant ? "Grant" : "Deny";
}

std::optional<Decision> ParseDecision(std::string_view name) {
  if (name == "Grant") return Decision::kGrant;
  if (name == "Deny") return Decision::kDeny;
  return std::nullopt;
}

std::string RequestToString(Request const& request) {
  std::string out = "(" + request.member + ", " + request.role + ", " +
                    request.permission.ToString() + ", " + request.resource;
  for (auto const& [attribute, value] : request.context) {
    out += ", " + attribute + "=" + LiteralToString(value);
  }
  return out + ")";
}

bool AccessRule::Matches(Request const& request) const {
  return request.role == role && request.resource == resource &&
         members.contains(request.member) &&
         permissions.contains(request.permission) &&
         (!condition || condition->Evaluate(request.context));
}

std::vector<AccessRule> Compile(PolicyUniverse const& universe,
                                EffectivePolicySet const& effective) {
  std::vector<AccessRule> rules;
  for (auto const& [resource, bindings] : effective) {
    for (auto const& eb : bindings) {
      AccessRule rule;
      for (auto const& m : eb.binding.members) {
        rule.members.merge(ExpandGroup(universe, m));
      }
      rule.role = eb.binding.role;
      rule.permissions = universe.FindRole(rule.role)->permissions;
      rule.resource = resource;
      rule.condition = eb.binding.condition;
      rule.provenance = eb;
      rules.push_back(std::move(rule));
    }
  }
  auto key = [](AccessRule const& r) {
    return std::tie(r.resource, r.provenance.origin, r.role, r.members,
                    r.provenance);
  };
  std::stable_sort(rules.begin(), rules.end(),
                   [&](AccessRule const& a, AccessRule const& b) {
                     return key(a) < key(b);
                   });
  return rules;
}

AccessRule const* FindGrantingRule(std::span<AccessRule const> rules,
                                   Request const& request) {
  for (auto const& rule : rules) {
    if (rule.decision != Decision::kGrant) {
      throw std::invalid_argument(
          "deny rules are not supported (rule on " + rule.resource + ")");
    }
    if (rule.Matches(request)) return &rule;
  }
  return nullptr;
}

Decision Decide(std::span<AccessRule const> rules, Request const& request) {
  return FindGrantingRule(rules, request) != nullptr ? Decision::kGrant
                                                     : Decision::kDeny;
}

void ValidateRequest(PolicyUniverse const& universe, Request const& request) {
  if (universe.FindMember(request.member) == nullptr) {
    throw UnknownIdError("request: unknown member '" + request.member + "'");
  }
  if (universe.FindRole(request.role) == nullptr) {
    throw UnknownIdError("request: unknown role '" + request.role + "'");
  }
  if (!universe.HasPermission(request.permission)) {
    throw UnknownIdError("request: unknown permission '" +
                         request.permission.ToString() + "'");
  }
  if (universe.FindResource(request.resource) == nullptr) {
    throw UnknownIdError("request: unknown resource '" + request.resource +
                         "'");
  }
}

Decision Decide(PolicyUniverse const& universe,
                std::span<AccessRule const> rules, Request const& request) {
  ValidateRequest(universe, request);
  return Decide(rules, request);
}

}  // namespace iamcheck
