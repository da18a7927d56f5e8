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

#ifndef IAMCHECK_REPORT_H_
#define IAMCHECK_REPORT_H_

#include <span>
#include <string>
#include <vector>

#include "iamcheck/checker.h"
#include "json.hpp"

namespace iamcheck {

inline constexpr char kVerdictSchema[] = "iamcheck.verdicts/v1";

/// One row per verdict plus a totals line.
std::string RenderVerdictTable(std::span<Verdict const> verdicts, bool color);

nlohmann::json VerdictsToJson(std::span<Verdict const> verdicts);

/// Inverse of VerdictsToJson. Throws std::invalid_argument on schema errors.
std::vector<Verdict> VerdictsFromJson(nlohmann::json const& doc);

/// 2 if any verdict is ERROR; else 1 if any is FALSE, or VACUOUS when
/// `strict`; else 0.
int ExitCode(std::span<Verdict const> verdicts, bool strict);

}  // namespace iamcheck

#endif  // IAMCHECK_REPORT_H_
