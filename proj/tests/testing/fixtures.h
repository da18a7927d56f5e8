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

#ifndef IAMCHECK_TESTS_TESTING_FIXTURES_H_
#define IAMCHECK_TESTS_TESTING_FIXTURES_H_

#include <filesystem>
#include <string>

#include "iamcheck/cli.h"
#include "iamcheck/loader.h"

namespace iamcheck::testing {

inline std::filesystem::path FixtureDir(std::string const& name) {
  return std::filesystem::path(IAMCHECK_FIXTURE_DIR) / name;
}

inline InputDocuments FixtureDocuments(std::string const& name) {
  auto dir = FixtureDir(name);
  InputDocuments docs;
  docs.roles = ReadDocument((dir / "roles.json").string());
  docs.hierarchy = ReadDocument((dir / "hierarchy.json").string());
  docs.policies = ReadDocument((dir / "policies.json").string());
  if (std::filesystem::exists(dir / "members.json")) {
    docs.members = ReadDocument((dir / "members.json").string());
  }
  docs.properties = ReadDocument((dir / "properties.spec").string());
  return docs;
}

inline LoadedInputs LoadFixture(std::string const& name) {
  return LoadInputs(FixtureDocuments(name));
}

inline RunConfig FixtureConfig(std::string const& name) {
  auto dir = FixtureDir(name);
  RunConfig config;
  config.roles_path = (dir / "roles.json").string();
  config.hierarchy_path = (dir / "hierarchy.json").string();
  config.policies_path = (dir / "policies.json").string();
  if (std::filesystem::exists(dir / "members.json")) {
    config.members_path = (dir / "members.json").string();
  }
  config.properties_path = (dir / "properties.spec").string();
  return config;
}

}  // namespace iamcheck::testing

#endif  // IAMCHECK_TESTS_TESTING_FIXTURES_H_
