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

#ifndef IAMCHECK_INHERITANCE_H_
#define IAMCHECK_INHERITANCE_H_

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "iamcheck/model.h"

namespace iamcheck {

/// A binding in force at some node, and the node it is attached to.
struct EffectiveBinding {
  Binding binding;
  std::string origin;

  auto operator<=>(EffectiveBinding const&) const = default;
  bool operator==(EffectiveBinding const&) const = default;
};

/// Resource id to the bindings in force there. Every resource in the
/// universe has an entry, possibly empty.
using EffectivePolicySet = std::map<std::string, std::set<EffectiveBinding>>;

/// Pushes every attached binding down to the node itself and all of its
/// descendants, recording where it was attached.
EffectivePolicySet Materialize(PolicyUniverse const& universe);

/// Returns a copy of `universe` with `node_id` moved under `new_parent_id`.
/// Throws UnknownIdError for unknown ids and ValidationError when the move
/// creates a cycle or breaks the level order.
PolicyUniverse Reparent(PolicyUniverse const& universe,
                        std::string_view node_id,
                        std::string_view new_parent_id);

}  // namespace iamcheck

#endif  // IAMCHECK_INHERITANCE_H_
