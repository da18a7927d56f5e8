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

#ifndef IAMCHECK_LOADER_H_
#define IAMCHECK_LOADER_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iamcheck/model.h"
#include "iamcheck/property.h"

namespace iamcheck {

/// One input document: a name for diagnostics and its contents.
struct Document {
  std::string name;
  std::string text;
};

/// The input documents. Formats:
///   roles:      {"roles/x": ["service.type.verb", ...], ...}
///   hierarchy:  [{"id": "...", "level": "project", "parent": "..."}, ...]
///   policies:   {"<resource id>": {"bindings": [{"role": "...",
///                 "members": ["user:..."], "condition": {"expression":
///                 "..."}}]}, ...}  (a bare binding list is also accepted)
///   members:    optional; {"group:g@x.com": ["user:a@x.com", ...], ...}
///               declares group membership and extra members
///   properties: SPEC lines
/// Member strings carry a kind prefix: user:, serviceAccount:, group:,
/// domain:.
struct InputDocuments {
  Document roles;
  Document hierarchy;
  Document policies;
  std::optional<Document> members;
  Document properties;
};

struct LoadedInputs {
  PolicyUniverse universe;
  std::vector<Property> properties;
};

/// Every problem found across all inputs, each prefixed with its document
/// name and, where known, line and column.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(std::vector<std::string> diagnostics);
  std::vector<std::string> const& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Parses a prefixed member string such as "group:admins@example.com".
std::optional<Member> ParseMemberString(std::string const& text);

LoadedInputs LoadInputs(InputDocuments const& documents);

/// Reads a file into a Document. Throws LoadError when it cannot be read.
Document ReadDocument(std::string const& path);

}  // namespace iamcheck

#endif  // IAMCHECK_LOADER_H_
