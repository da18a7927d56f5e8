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

#ifndef IAMCHECK_MODEL_H_
#define IAMCHECK_MODEL_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iamcheck/condition.h"

namespace iamcheck {

enum class MemberKind { kAccount, kServiceAccount, kGroup, kDomain };

std::string_view MemberKindName(MemberKind kind);

struct Member {
  std::string id;
  MemberKind kind = MemberKind::kAccount;
  /// Direct constituents; only meaningful for groups.
  std::vector<std::string> constituents;
};

/// A `service.resource_type.verb` triple, e.g. `pubsub.topics.publish`.
struct Permission {
  std::string service;
  std::string resource_type;
  std::string verb;

  /// Returns nullopt unless `text` has exactly three non-empty dot-separated
  /// components.
  static std::optional<Permission> Parse(std::string_view text);
  std::string ToString() const;

  auto operator<=>(Permission const&) const = default;
};

struct Role {
  std::string id;
  std::set<Permission> permissions;
};

enum class ResourceLevel { kOrganization, kFolder, kProject, kResource };

std::string_view ResourceLevelName(ResourceLevel level);
std::optional<ResourceLevel> ParseResourceLevel(std::string_view name);

struct ResourceNode {
  std::string id;
  ResourceLevel level = ResourceLevel::kResource;
  std::optional<std::string> parent;
};

struct Binding {
  std::set<std::string> members;
  std::string role;
  std::optional<Condition> condition;

  auto operator<=>(Binding const&) const = default;
  bool operator==(Binding const&) const = default;
};

struct Policy {
  std::string resource;
  std::vector<Binding> bindings;
};

/// Thrown by BuildUniverse with every integrity violation found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  std::vector<std::string> const& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A lookup named an id that the universe does not contain.
class UnknownIdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The validated, immutable set of members, roles, resources and policies.
///
/// The four value domains (member ids, role ids, permissions, resource ids)
/// are sorted by their string rendering; that order is the enumeration order
/// used everywhere downstream.
class PolicyUniverse {
 public:
  std::map<std::string, Member> const& members() const { return members_; }
  std::map<std::string, Role> const& roles() const { return roles_; }
  std::map<std::string, ResourceNode> const& resources() const {
    return resources_;
  }
  /// Attached (not inherited) bindings per resource id. Resources without
  /// a policy have no entry.
  std::map<std::string, std::vector<Binding>> const& policies() const {
    return policies_;
  }

  std::vector<std::string> const& member_domain() const {
    return member_domain_;
  }
  std::vector<std::string> const& role_domain() const { return role_domain_; }
  std::vector<Permission> const& permission_domain() const {
    return permission_domain_;
  }
  std::vector<std::string> const& resource_domain() const {
    return resource_domain_;
  }

  Member const* FindMember(std::string_view id) const;
  Role const* FindRole(std::string_view id) const;
  ResourceNode const* FindResource(std::string_view id) const;
  bool HasPermission(Permission const& permission) const;

  /// Parent first, root last. Throws UnknownIdError.
  std::vector<std::string> Ancestors(std::string_view resource_id) const;
  /// True iff `ancestor` is a strict ancestor of `node`.
  bool IsAncestor(std::string_view ancestor, std::string_view node) const;

  /// The inputs this universe was built from, for rebuilding edited copies.
  std::vector<Member> MemberList() const;
  std::vector<Role> RoleList() const;
  std::vector<ResourceNode> ResourceList() const;
  std::vector<Policy> PolicyList() const;

 private:
  friend PolicyUniverse BuildUniverse(std::vector<Member>, std::vector<Role>,
                                      std::vector<ResourceNode>,
                                      std::vector<Policy>);

  std::map<std::string, Member> members_;
  std::map<std::string, Role> roles_;
  std::map<std::string, ResourceNode> resources_;
  std::map<std::string, std::vector<Binding>> policies_;
  std::vector<std::string> member_domain_;
  std::vector<std::string> role_domain_;
  std::vector<Permission> permission_domain_;
  std::vector<std::string> resource_domain_;
};

/// Validates and aggregates the raw collections. Policies naming the same
/// resource are merged. Throws ValidationError listing every violation.
PolicyUniverse BuildUniverse(std::vector<Member> members,
                             std::vector<Role> roles,
                             std::vector<ResourceNode> hierarchy,
                             std::vector<Policy> policies);

/// For a group: the group id, its constituents, and (transitively) the
/// constituents of nested groups. For any other member: just its id.
std::set<std::string> ExpandGroup(PolicyUniverse const& universe,
                                  std::string_view member_id);

bool RoleHasPermission(PolicyUniverse const& universe,
                       std::string_view role_id, Permission const& permission);

}  // namespace iamcheck

#endif  // IAMCHECK_MODEL_H_
