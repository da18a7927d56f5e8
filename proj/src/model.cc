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

#include "iamcheck/model.h"

#include <algorithm>
#include <utility>

namespace iamcheck {

std::string_view MemberKindName(MemberKind kind) {
  switch (kind) {
    case MemberKind::kAccount:
      return "user";
    case MemberKind::kServiceAccount:
      return "serviceAccount";
    case MemberKind::kGroup:
      return "group";
    case MemberKind::kDomain:
      return "domain";
  }
  return "?";
}

std::optional<Permission> Permission::Parse(std::string_view text) {
  auto first = text.find('.');
  if (first == std::string_view::npos) return std::nullopt;
  auto second = text.find('.', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  if (text.find('.', second + 1) != std::string_view::npos) return std::nullopt;
  Permission p{std::string(text.substr(0, first)),
               std::string(text.substr(first + 1, second - first - 1)),
               std::string(text.substr(second + 1))};
  if (p.service.empty() || p.resource_type.empty() || p.verb.empty()) {
    return std::nullopt;
  }
  return p;
}

std::string Permission::ToString() const {
  return service + '.' + resource_type + '.' + verb;
}

std::string_view ResourceLevelName(ResourceLevel level) {
  switch (level) {
    case ResourceLevel::kOrganization:
      return "organization";
    case ResourceLevel::kFolder:
      return "folder";
    case ResourceLevel::kProject:
      return "project";
    case ResourceLevel::kResource:
      return "resource";
  }
  return "?";
}

std::optional<ResourceLevel> ParseResourceLevel(std::string_view name) {
  for (auto level : {ResourceLevel::kOrganization, ResourceLevel::kFolder,
                     ResourceLevel::kProject, ResourceLevel::kResource}) {
    if (ResourceLevelName(level) == name) return level;
  }
  return std::nullopt;
}

namespace {

std::string JoinViolations(std::vector<std::string> const& violations) {
  std::string out = "policy universe has " +
                    std::to_string(violations.size()) + " violation(s)";
  for (auto const& v : violations) out += "\n  " + v;
  return out;
}

std::string Quote(std::string_view s) {
  return "'" + std::string(s) + "'";
}

// Folders may nest; otherwise a parent must sit strictly higher.
bool LevelMayParent(ResourceLevel parent, ResourceLevel child) {
  if (parent == ResourceLevel::kFolder && child == ResourceLevel::kFolder) {
    return true;
  }
  return static_cast<int>(parent) < static_cast<int>(child);
}

void ValidateHierarchy(std::map<std::string, ResourceNode> const& nodes,
                       std::vector<std::string>& violations) {
  for (auto const& [id, node] : nodes) {
    if (!node.parent) {
      if (node.level == ResourceLevel::kResource) {
        violations.push_back("resource " + Quote(id) +
                             ": resource-level node has no parent");
      }
      continue;
    }
    if (node.level == ResourceLevel::kOrganization) {
      violations.push_back("resource " + Quote(id) +
                           ": organization node must not have a parent");
    }
    auto parent = nodes.find(*node.parent);
    if (parent == nodes.end()) {
      violations.push_back("resource " + Quote(id) + ": unknown parent " +
                           Quote(*node.parent));
      continue;
    }
    if (*node.parent != id &&
        !LevelMayParent(parent->second.level, node.level)) {
      violations.push_back(
          "resource " + Quote(id) + ": level violation, " +
          std::string(ResourceLevelName(node.level)) + " cannot be a child of " +
          std::string(ResourceLevelName(parent->second.level)) + " " +
          Quote(*node.parent));
    }
  }

  // 0 = unvisited, 1 = on current walk, 2 = known acyclic or reported.
  std::map<std::string, int> state;
  for (auto const& [start, unused] : nodes) {
    if (state[start] != 0) continue;
    std::vector<std::string> walk;
    std::string current = start;
    while (true) {
      auto& s = state[current];
      if (s == 2) break;
      if (s == 1) {
        auto pos = std::find(walk.begin(), walk.end(), current);
        std::string cycle;
        for (auto it = pos; it != walk.end(); ++it) cycle += *it + " -> ";
        violations.push_back("hierarchy cycle: " + cycle + current);
        break;
      }
      s = 1;
      walk.push_back(current);
      auto node = nodes.find(current);
      if (node == nodes.end() || !node->second.parent ||
          !nodes.contains(*node->second.parent)) {
        break;
      }
      current = *node->second.parent;
    }
    for (auto const& id : walk) state[id] = 2;
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(JoinViolations(violations)),
      violations_(std::move(violations)) {}

Member const* PolicyUniverse::FindMember(std::string_view id) const {
  auto it = members_.find(std::string(id));
  return it == members_.end() ? nullptr : &it->second;
}

Role const* PolicyUniverse::FindRole(std::string_view id) const {
  auto it = roles_.find(std::string(id));
  return it == roles_.end() ? nullptr : &it->second;
}

ResourceNode const* PolicyUniverse::FindResource(std::string_view id) const {
  auto it = resources_.find(std::string(id));
  return it == resources_.end() ? nullptr : &it->second;
}

bool PolicyUniverse::HasPermission(Permission const& permission) const {
  return std::find(permission_domain_.begin(), permission_domain_.end(),
                   permission) != permission_domain_.end();
}

std::vector<std::string> PolicyUniverse::Ancestors(
    std::string_view resource_id) const {
  auto const* node = FindResource(resource_id);
  if (node == nullptr) {
    throw UnknownIdError("unknown resource " + Quote(resource_id));
  }
  std::vector<std::string> chain;
  while (node->parent) {
    chain.push_back(*node->parent);
    node = &resources_.at(*node->parent);
  }
  return chain;
}

bool PolicyUniverse::IsAncestor(std::string_view ancestor,
                                std::string_view node) const {
  auto chain = Ancestors(node);
  return std::find(chain.begin(), chain.end(), ancestor) != chain.end();
}

std::vector<Member> PolicyUniverse::MemberList() const {
  std::vector<Member> out;
  for (auto const& [id, m] : members_) out.push_back(m);
  return out;
}

std::vector<Role> PolicyUniverse::RoleList() const {
  std::vector<Role> out;
  for (auto const& [id, r] : roles_) out.push_back(r);
  return out;
}

std::vector<ResourceNode> PolicyUniverse::ResourceList() const {
  std::vector<ResourceNode> out;
  for (auto const& [id, r] : resources_) out.push_back(r);
  return out;
}

std::vector<Policy> PolicyUniverse::PolicyList() const {
  std::vector<Policy> out;
  for (auto const& [id, bindings] : policies_) out.push_back({id, bindings});
  return out;
}

PolicyUniverse BuildUniverse(std::vector<Member> members,
                             std::vector<Role> roles,
                             std::vector<ResourceNode> hierarchy,
                             std::vector<Policy> policies) {
  std::vector<std::string> violations;
  PolicyUniverse u;

  for (auto& m : members) {
    if (m.id.empty()) {
      violations.push_back("member with empty id");
      continue;
    }
    if (u.members_.contains(m.id)) {
      violations.push_back("duplicate member " + Quote(m.id));
      continue;
    }
    std::string id = m.id;
    u.members_.emplace(std::move(id), std::move(m));
  }
  for (auto const& [id, m] : u.members_) {
    if (m.kind != MemberKind::kGroup && !m.constituents.empty()) {
      violations.push_back("member " + Quote(id) +
                           ": only groups may have constituents");
    }
    for (auto const& c : m.constituents) {
      if (!u.members_.contains(c)) {
        violations.push_back("group " + Quote(id) + ": unknown constituent " +
                             Quote(c));
      }
    }
  }

  for (auto& r : roles) {
    if (r.id.empty()) {
      violations.push_back("role with empty id");
      continue;
    }
    if (u.roles_.contains(r.id)) {
      violations.push_back("duplicate role " + Quote(r.id));
      continue;
    }
    std::string id = r.id;
    u.roles_.emplace(std::move(id), std::move(r));
  }

  for (auto& n : hierarchy) {
    if (n.id.empty()) {
      violations.push_back("resource with empty id");
      continue;
    }
    if (u.resources_.contains(n.id)) {
      violations.push_back("duplicate resource " + Quote(n.id));
      continue;
    }
    std::string id = n.id;
    u.resources_.emplace(std::move(id), std::move(n));
  }
  ValidateHierarchy(u.resources_, violations);

  for (auto& p : policies) {
    if (!u.resources_.contains(p.resource)) {
      violations.push_back("policy on unknown resource " + Quote(p.resource));
    }
    for (std::size_t i = 0; i < p.bindings.size(); ++i) {
      auto const& b = p.bindings[i];
      std::string where = "policy " + Quote(p.resource) + " binding #" +
                          std::to_string(i) + " (" + b.role + ")";
      if (b.members.empty()) violations.push_back(where + ": no members");
      if (!u.roles_.contains(b.role)) {
        violations.push_back(where + ": unknown role " + Quote(b.role));
      }
      for (auto const& m : b.members) {
        if (!u.members_.contains(m)) {
          violations.push_back(where + ": unknown member " + Quote(m));
        }
      }
    }
    auto& merged = u.policies_[p.resource];
    for (auto& b : p.bindings) merged.push_back(std::move(b));
  }

  std::set<std::string> permission_text;
  for (auto const& [id, r] : u.roles_) {
    for (auto const& p : r.permissions) permission_text.insert(p.ToString());
  }
  for (auto const& [id, m] : u.members_) u.member_domain_.push_back(id);
  for (auto const& [id, r] : u.roles_) u.role_domain_.push_back(id);
  for (auto const& text : permission_text) {
    u.permission_domain_.push_back(*Permission::Parse(text));
  }
  for (auto const& [id, n] : u.resources_) u.resource_domain_.push_back(id);

  if (u.member_domain_.empty()) violations.push_back("empty member domain");
  if (u.role_domain_.empty()) violations.push_back("empty role domain");
  if (u.permission_domain_.empty()) {
    violations.push_back("empty permission domain");
  }
  if (u.resource_domain_.empty()) violations.push_back("empty resource domain");

  if (!violations.empty()) throw ValidationError(std::move(violations));
  return u;
}

std::set<std::string> ExpandGroup(PolicyUniverse const& universe,
                                  std::string_view member_id) {
  if (universe.FindMember(member_id) == nullptr) {
    throw UnknownIdError("unknown member " + Quote(member_id));
  }
  std::set<std::string> out;
  std::vector<std::string> pending{std::string(member_id)};
  while (!pending.empty()) {
    auto id = std::move(pending.back());
    pending.pop_back();
    if (!out.insert(id).second) continue;
    auto const& m = *universe.FindMember(id);
    if (m.kind != MemberKind::kGroup) continue;
    for (auto const& c : m.constituents) pending.push_back(c);
  }
  return out;
}

bool RoleHasPermission(PolicyUniverse const& universe,
                       std::string_view role_id,
                       Permission const& permission) {
  auto const* role = universe.FindRole(role_id);
  if (role == nullptr) {
    throw UnknownIdError("unknown role " + Quote(role_id));
  }
  return role->permissions.contains(permission);
}

}  // namespace iamcheck
