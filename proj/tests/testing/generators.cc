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

#include "testing/generators.h"

#include <algorithm>
#include <string>
#include <vector>

namespace iamcheck::testing {

namespace {

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Chance(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

template <typename T>
T const& Pick(std::mt19937_64& rng, std::vector<T> const& v) {
  return v[static_cast<std::size_t>(Uniform(rng, 0, int(v.size()) - 1))];
}

Condition RandomCondition(std::mt19937_64& rng) {
  if (Chance(rng, 0.5)) {
    static constexpr CompareOp kOps[] = {CompareOp::kEq, CompareOp::kNeq,
                                         CompareOp::kLt, CompareOp::kGeq};
    auto c = Condition::Compare("request.hour", kOps[Uniform(rng, 0, 3)],
                                std::int64_t{Uniform(rng, 8, 18)});
    if (Chance(rng, 0.2)) return Condition::Not(std::move(c));
    return c;
  }
  auto tag = Condition::Compare(
      "resource.tag", Chance(rng, 0.8) ? CompareOp::kEq : CompareOp::kNeq,
      std::string(Chance(rng, 0.5) ? "prod" : "dev"));
  if (Chance(rng, 0.3)) {
    return Condition::And(
        {tag, Condition::Compare("request.hour", CompareOp::kLt,
                                 std::int64_t{17})});
  }
  return tag;
}

}  // namespace

Binding RandomBinding(std::mt19937_64& rng, PolicyUniverse const& universe,
                      double condition_rate) {
  Binding b;
  b.role = Pick(rng, universe.role_domain());
  int n = Uniform(rng, 1, 2);
  for (int i = 0; i < n; ++i) {
    b.members.insert(Pick(rng, universe.member_domain()));
  }
  if (Chance(rng, condition_rate)) b.condition = RandomCondition(rng);
  return b;
}

PolicyUniverse RandomUniverse(std::mt19937_64& rng,
                              UniverseLimits const& limits) {
  std::vector<Member> members;
  int member_count = Uniform(rng, 1, limits.max_members);
  for (int i = 0; i < member_count; ++i) {
    Member m;
    m.id = "m" + std::to_string(i) + "@example.com";
    m.kind = i > 0 && Chance(rng, 0.3) ? MemberKind::kGroup
                                       : MemberKind::kAccount;
    members.push_back(std::move(m));
  }
  for (auto& m : members) {
    if (m.kind != MemberKind::kGroup) continue;
    for (auto const& other : members) {
      if (other.id != m.id && Chance(rng, 0.4)) {
        m.constituents.push_back(other.id);
      }
    }
  }

  std::vector<Permission> pool;
  int permission_count = Uniform(rng, 1, limits.max_permissions);
  static constexpr char const* kVerbs[] = {"get", "list", "create", "delete"};
  for (int i = 0; i < permission_count; ++i) {
    pool.push_back({"svc" + std::to_string(i % 2), "type" + std::to_string(i / 4),
                    kVerbs[i % 4]});
  }
  std::vector<Role> roles;
  int role_count = Uniform(rng, 1, limits.max_roles);
  for (int i = 0; i < role_count; ++i) {
    Role r{"roles/r" + std::to_string(i), {}};
    for (auto const& p : pool) {
      if (Chance(rng, 0.5)) r.permissions.insert(p);
    }
    roles.push_back(std::move(r));
  }
  roles.front().permissions.insert(pool.front());

  std::vector<ResourceNode> nodes;
  nodes.push_back({"org", ResourceLevel::kOrganization, std::nullopt});
  int resource_count = Uniform(rng, 1, limits.max_resources);
  for (int i = 1; i < resource_count; ++i) {
    ResourceNode n;
    n.id = "n" + std::to_string(i);
    if (Chance(rng, 0.1)) {
      n.level = ResourceLevel::kProject;
      nodes.push_back(std::move(n));
      continue;
    }
    std::vector<ResourceNode const*> parents;
    for (auto const& p : nodes) {
      if (p.level != ResourceLevel::kResource) parents.push_back(&p);
    }
    auto const& parent = *Pick(rng, parents);
    n.parent = parent.id;
    int lo = static_cast<int>(parent.level) + 1;
    if (parent.level == ResourceLevel::kFolder) lo = 1;
    n.level = static_cast<ResourceLevel>(Uniform(rng, lo, 3));
    nodes.push_back(std::move(n));
  }

  // Build once without policies so RandomBinding can draw from the domains.
  auto bare = BuildUniverse(members, roles, nodes, {});
  std::vector<Policy> policies;
  int binding_count = Uniform(rng, 0, limits.max_bindings);
  for (int i = 0; i < binding_count; ++i) {
    policies.push_back({Pick(rng, bare.resource_domain()),
                        {RandomBinding(rng, bare, limits.condition_rate)}});
  }
  return BuildUniverse(std::move(members), std::move(roles), std::move(nodes),
                       std::move(policies));
}

namespace {

SortPredicate RandomPredicate(std::mt19937_64& rng, Sort sort,
                              std::vector<std::string> const& domain) {
  int kind = Uniform(rng, 0, 99);
  if (kind < 35) return SortPredicate::Any(sort);
  if (kind < 50) return SortPredicate::NotEqual(sort, Pick(rng, domain));
  std::vector<std::string> values{Pick(rng, domain)};
  if (Chance(rng, 0.3)) {
    auto extra = Pick(rng, domain);
    if (extra != values.front()) values.push_back(extra);
  }
  return SortPredicate::OneOf(sort, std::move(values));
}

}  // namespace

Property RandomProperty(std::mt19937_64& rng, PolicyUniverse const& universe,
                        bool allow_both_decisions) {
  Property p;
  p.label = "random";
  std::vector<std::string> permissions;
  for (auto const& perm : universe.permission_domain()) {
    permissions.push_back(perm.ToString());
  }
  p.member = RandomPredicate(rng, Sort::kMember, universe.member_domain());
  p.role = RandomPredicate(rng, Sort::kRole, universe.role_domain());
  p.permission = RandomPredicate(rng, Sort::kPermission, permissions);
  p.resource = RandomPredicate(rng, Sort::kResource, universe.resource_domain());
  if (Chance(rng, 0.15)) {
    SortPredicate c = Chance(rng, 0.5)
                          ? SortPredicate::OneOf(Sort::kCondition, {"prod"})
                          : SortPredicate::NotEqual(Sort::kCondition, "12");
    c.attribute = c.values.front() == "prod" ? "resource.tag" : "request.hour";
    p.conditions.push_back(std::move(c));
  }
  int consequent = Uniform(rng, 0, allow_both_decisions ? 9 : 7);
  if (consequent < 4) {
    p.consequent = {Decision::kGrant};
  } else if (consequent < 8) {
    p.consequent = {Decision::kDeny};
  } else {
    p.consequent = {Decision::kGrant, Decision::kDeny};
  }
  return p;
}

}  // namespace iamcheck::testing
