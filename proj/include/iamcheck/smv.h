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

#ifndef IAMCHECK_SMV_H_
#define IAMCHECK_SMV_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iamcheck/model.h"
#include "iamcheck/property.h"
#include "iamcheck/rules.h"

namespace iamcheck {

/// Maps each id to `prefix` + the id with every character outside
/// [A-Za-z0-9_] replaced by '_'. Ids are assigned in sorted order; a
/// collision gets the smallest free "_<n>" suffix (n >= 2). Injective.
std::map<std::string, std::string> MangleIds(std::vector<std::string> ids,
                                             std::string_view prefix);

/// Renders a self-contained SMV model.
///
/// MEMBER, ROLE, PERMISSION, RESOURCE and one CTX_* variable per condition
/// attribute are unconstrained, so they take a fresh value every step.
/// `decision` starts at Deny and its next value is Grant iff a compiled rule
/// matches the current values. Every state has a successor. Each property
/// becomes one SPEC line, preceded by a comment carrying the built-in
/// checker's verdict. A trailing comment block maps generated identifiers
/// back to the original ids.
std::string EmitSmv(PolicyUniverse const& universe,
                    std::span<AccessRule const> rules,
                    std::span<Property const> properties);

}  // namespace iamcheck

#endif  // IAMCHECK_SMV_H_
