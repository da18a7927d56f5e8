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

#include "iamcheck/cli.h"

#include <fstream>
#include <ostream>

#include "iamcheck/checker.h"
#include "iamcheck/inheritance.h"
#include "iamcheck/loader.h"
#include "iamcheck/report.h"
#include "iamcheck/rules.h"
#include "iamcheck/smv.h"

namespace iamcheck {

int Run(RunConfig const& config, std::ostream& out, std::ostream& err) {
  std::optional<LoadedInputs> inputs;
  try {
    InputDocuments docs;
    std::vector<std::string> missing;
    auto read = [&](std::string const& path) -> Document {
      try {
        return ReadDocument(path);
      } catch (LoadError const& e) {
        missing.push_back(e.diagnostics().front());
        return {path, {}};
      }
    };
    docs.roles = read(config.roles_path);
    docs.hierarchy = read(config.hierarchy_path);
    docs.policies = read(config.policies_path);
    if (config.members_path) docs.members = read(*config.members_path);
    docs.properties = read(config.properties_path);
    if (!missing.empty()) throw LoadError(missing);
    inputs.emplace(LoadInputs(docs));
  } catch (LoadError const& e) {
    for (auto const& d : e.diagnostics()) err << "error: " << d << "\n";
    return 2;
  }

  auto const& universe = inputs->universe;
  auto const rules = Compile(universe, Materialize(universe));

  if (config.mode == RunMode::kEmitSmv) {
    auto text = EmitSmv(universe, rules, inputs->properties);
    std::ofstream file(config.out_path, std::ios::binary);
    file << text;
    file.close();
    if (!file) {
      err << "error: cannot write " << config.out_path << "\n";
      return 2;
    }
    out << "wrote " << config.out_path << " (" << inputs->properties.size()
        << " specs, " << rules.size() << " rules)\n";
    return 0;
  }

  auto verdicts = VerifyAll(universe, rules, inputs->properties);
  for (auto const& v : verdicts) {
    if (v.result == VerdictResult::kError) err << "error: " << v.error << "\n";
    for (auto const& w : v.warnings) {
      err << "warning: " << v.label << ": " << w << "\n";
    }
  }

  if (config.format == OutputFormat::kJson) {
    out << VerdictsToJson(verdicts).dump(2) << "\n";
  } else if (config.mode == RunMode::kExplain) {
    for (auto const& v : verdicts) {
      if (v.result == VerdictResult::kFalse) {
        out << Explain(v) << "\n";
      } else {
        out << v.label << ": " << VerdictResultName(v.result) << "\n\n";
      }
    }
  } else {
    out << RenderVerdictTable(verdicts, config.color);
  }
  return ExitCode(verdicts, config.strict);
}

}  // namespace iamcheck
