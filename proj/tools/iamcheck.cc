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

#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "iamcheck/cli.h"

namespace {

void AddInputOptions(CLI::App& cmd, iamcheck::RunConfig& config) {
  cmd.add_option("--roles", config.roles_path, "Role catalog (JSON)")
      ->required();
  cmd.add_option("--hierarchy", config.hierarchy_path,
                 "Resource hierarchy (JSON)")
      ->required();
  cmd.add_option("--policies", config.policies_path,
                 "Policies keyed by resource id (JSON)")
      ->required();
  cmd.add_option("--members", config.members_path,
                 "Group membership (JSON, optional)");
  cmd.add_option("--properties", config.properties_path,
                 "Property file (SPEC lines)")
      ->required();
}

void AddReportOptions(CLI::App& cmd, iamcheck::RunConfig& config) {
  cmd.add_option("--format", config.format, "Report format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, iamcheck::OutputFormat>{
              {"text", iamcheck::OutputFormat::kText},
              {"json", iamcheck::OutputFormat::kJson}}));
  cmd.add_flag("--strict", config.strict, "Treat VACUOUS verdicts as failures");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify IAM role bindings against access properties"};
  app.require_subcommand(1);
  iamcheck::RunConfig config;

  auto* verify = app.add_subcommand("verify", "Check every property");
  AddInputOptions(*verify, config);
  AddReportOptions(*verify, config);

  auto* explain =
      app.add_subcommand("explain", "Check and explain every FALSE verdict");
  AddInputOptions(*explain, config);
  AddReportOptions(*explain, config);

  auto* emit = app.add_subcommand("emit-smv", "Write an SMV model");
  AddInputOptions(*emit, config);
  emit->add_option("--out", config.out_path, "Output .smv file")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (explain->parsed()) config.mode = iamcheck::RunMode::kExplain;
  if (emit->parsed()) config.mode = iamcheck::RunMode::kEmitSmv;
  config.color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
  return iamcheck::Run(config, std::cout, std::cerr);
}
