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

#include "iamcheck/inheritance.h"

namespace iamcheck {

EffectivePolicySet Materialize(PolicyUniverse const& universe) {
  EffectivePolicySet effective;
  for (auto const& id : universe.resource_domain()) {
    auto& entry = effective[id];
    std::vector<std::string> chain{id};
    auto ancestors = universe.Ancestors(id);
    chain.insert(chain.end(), ancestors.begin(), ancestors.end());
    for (auto const& origin : chain) {
      auto attached = universe.policies().find(origin);
      if (attached == universe.policies().end()) continue;
      for (auto const& b : attached->second) entry.insert({b, origin});
    }
  }
  return effective;
}

PolicyUniverse Reparent(PolicyUniverse const& universe,
                        std::string_view node_id,
                        std::string_view new_parent_id) {
  if (universe.FindResource(node_id) == nullptr) {
    throw UnknownIdError("unknown resource '" + std::string(node_id) + "'");
  }
  if (universe.FindResource(new_parent_id) == nullptr) {
    throw UnknownIdError("unknown resource '" + std::string(new_parent_id) +
                         "'");
  }
  auto hierarchy = universe.ResourceList();
  for (auto& node : hierarchy) {
    if (node.id == node_id) node.parent = std::string(new_parent_id);
  }
  return BuildUniverse(universe.MemberList(), universe.RoleList(),
                       std::move(hierarchy), universe.PolicyList());
}

}  // namespace iamcheck
