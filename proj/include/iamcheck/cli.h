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

#ifndef IAMCHECK_CLI_H_
#define IAMCHECK_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>

namespace iamcheck {

enum class RunMode { kVerify, kEmitSmv, kExplain };
enum class OutputFormat { kText, kJson };

struct RunConfig {
  RunMode mode = RunMode::kVerify;
  std::string roles_path;
  std::string hierarchy_path;
  std::string policies_path;
  std::optional<std::string> members_path;
  std::string properties_path;
  /// emit-smv only.
  std::string out_path;
  OutputFormat format = OutputFormat::kText;
  /// Treat VACUOUS verdicts as failures.
  bool strict = false;
  bool color = false;
};

/// Loads every input, then verifies, explains, or emits SMV. The report
/// goes to `out`, diagnostics to `err`.
///
/// Exit codes: 0 all properties hold; 1 a property is FALSE (or VACUOUS
/// under strict); 2 an input, bind, or I/O error.
int Run(RunConfig const& config, std::ostream& out, std::ostream& err);

}  // namespace iamcheck

#endif  // IAMCHECK_CLI_H_
