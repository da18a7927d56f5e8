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

#include "iamcheck/loader.h"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace iamcheck {

namespace {

using nlohmann::json;

std::string Join(std::vector<std::string> const& lines) {
  std::string out = "failed to load inputs:";
  for (auto const& l : lines) out += "\n  " + l;
  return out;
}

std::string LineColumn(std::string const& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

class Loader {
 public:
  explicit Loader(InputDocuments const& docs) : docs_(docs) {}

  LoadedInputs Load() {
    auto roles = Parse(docs_.roles);
    auto hierarchy = Parse(docs_.hierarchy);
    auto policies = Parse(docs_.policies);
    std::optional<json> members;
    if (docs_.members) members = Parse(*docs_.members);

    std::vector<Role> role_list;
    std::vector<ResourceNode> node_list;
    std::vector<Policy> policy_list;
    if (roles) role_list = ReadRoles(*roles);
    if (hierarchy) node_list = ReadHierarchy(*hierarchy);
    if (members) ReadMembers(*members);
    if (policies) policy_list = ReadPolicies(*policies);

    std::vector<Property> properties;
    try {
      properties = ParsePropertyFile(docs_.properties.text);
    } catch (PropertyFileError const& e) {
      for (auto const& err : e.errors()) {
        std::string message = err.what();
        // Drop the "line L, column C: " prefix in favour of name:L:C.
        auto colon = message.find(": ");
        if (colon != std::string::npos) message = message.substr(colon + 2);
        Report(docs_.properties.name + ":" + std::to_string(err.line()) +
               ":" + std::to_string(err.column()) + ": " + message);
      }
    }

    if (!diagnostics_.empty()) throw LoadError(std::move(diagnostics_));

    std::vector<Member> member_list;
    for (auto& [id, m] : members_) member_list.push_back(std::move(m));
    try {
      auto universe =
          BuildUniverse(std::move(member_list), std::move(role_list),
                        std::move(node_list), std::move(policy_list));
      return {std::move(universe), std::move(properties)};
    } catch (ValidationError const& e) {
      for (auto const& v : e.violations()) {
        Report(DocumentFor(v) + ": " + v);
      }
    }
    throw LoadError(std::move(diagnostics_));
  }

 private:
  void Report(std::string message) {
    diagnostics_.push_back(std::move(message));
  }

  std::optional<json> Parse(Document const& doc) {
    try {
      return json::parse(doc.text);
    } catch (json::parse_error const& e) {
      std::string what = e.what();
      auto pos = what.find("] ");
      Report(doc.name + ":" + LineColumn(doc.text, e.byte == 0 ? 0 : e.byte - 1) +
             ": malformed JSON: " +
             (pos == std::string::npos ? what : what.substr(pos + 2)));
      return std::nullopt;
    }
  }

  std::string DocumentFor(std::string const& violation) const {
    auto starts = [&](std::string_view p) {
      return violation.rfind(p, 0) == 0;
    };
    if (starts("resource") || starts("hierarchy") || starts("duplicate resource") ||
        starts("empty resource")) {
      return docs_.hierarchy.name;
    }
    if (starts("policy")) return docs_.policies.name;
    if (starts("role") || starts("duplicate role") || starts("empty role") ||
        starts("empty permission")) {
      return docs_.roles.name;
    }
    if (docs_.members) return docs_.members->name;
    return docs_.policies.name;
  }

  std::vector<Role> ReadRoles(json const& doc) {
    std::vector<Role> out;
    auto const& name = docs_.roles.name;
    if (!doc.is_object()) {
      Report(name + ": expected an object mapping role id to permissions");
      return out;
    }
    for (auto const& [id, perms] : doc.items()) {
      Role role{id, {}};
      if (!perms.is_array()) {
        Report(name + ": /" + id + ": expected a list of permissions");
        continue;
      }
      for (std::size_t i = 0; i < perms.size(); ++i) {
        auto const& p = perms[i];
        auto parsed = p.is_string() ? Permission::Parse(p.get<std::string>())
                                    : std::nullopt;
        if (!parsed) {
          Report(name + ": /" + id + "/" + std::to_string(i) +
                 ": not a service.resource_type.verb permission: " + p.dump());
          continue;
        }
        role.permissions.insert(*parsed);
      }
      out.push_back(std::move(role));
    }
    return out;
  }

  std::vector<ResourceNode> ReadHierarchy(json const& doc) {
    std::vector<ResourceNode> out;
    auto const& name = docs_.hierarchy.name;
    if (!doc.is_array()) {
      Report(name + ": expected a list of {id, level, parent} nodes");
      return out;
    }
    for (std::size_t i = 0; i < doc.size(); ++i) {
      auto const& n = doc[i];
      auto where = name + ": /" + std::to_string(i);
      if (!n.is_object() || !n.contains("id") || !n["id"].is_string()) {
        Report(where + ": node needs a string \"id\"");
        continue;
      }
      ResourceNode node;
      node.id = n["id"].get<std::string>();
      auto level = n.contains("level") && n["level"].is_string()
                       ? ParseResourceLevel(n["level"].get<std::string>())
                       : std::nullopt;
      if (!level) {
        Report(where + ": \"level\" must be one of organization, folder, "
                       "project, resource");
        continue;
      }
      node.level = *level;
      if (n.contains("parent") && !n["parent"].is_null()) {
        if (!n["parent"].is_string()) {
          Report(where + ": \"parent\" must be a string");
          continue;
        }
        node.parent = n["parent"].get<std::string>();
      }
      out.push_back(std::move(node));
    }
    return out;
  }

  // Records a member; returns its id, or nullopt after reporting.
  std::optional<std::string> Declare(std::string const& where,
                                     json const& value) {
    auto m = value.is_string() ? ParseMemberString(value.get<std::string>())
                               : std::nullopt;
    if (!m) {
      Report(where + ": member must be \"user:\", \"serviceAccount:\", "
                     "\"group:\" or \"domain:\" followed by an id, got " +
             value.dump());
      return std::nullopt;
    }
    auto [it, inserted] = members_.emplace(m->id, *m);
    if (!inserted && it->second.kind != m->kind) {
      Report(where + ": member '" + m->id + "' declared as both " +
             std::string(MemberKindName(it->second.kind)) + " and " +
             std::string(MemberKindName(m->kind)));
      return std::nullopt;
    }
    return m->id;
  }

  void ReadMembers(json const& doc) {
    auto const& name = docs_.members->name;
    if (!doc.is_object()) {
      Report(name + ": expected an object mapping member to constituents");
      return;
    }
    for (auto const& [key, constituents] : doc.items()) {
      auto id = Declare(name + ": /" + key, json(key));
      if (!id) continue;
      if (!constituents.is_array()) {
        Report(name + ": /" + key + ": expected a list of members");
        continue;
      }
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < constituents.size(); ++i) {
        auto c = Declare(name + ": /" + key + "/" + std::to_string(i),
                         constituents[i]);
        if (c) ids.push_back(*c);
      }
      auto& group = members_.at(*id);
      if (!ids.empty() && group.kind != MemberKind::kGroup) {
        Report(name + ": /" + key + ": only group members have constituents");
        continue;
      }
      for (auto& c : ids) group.constituents.push_back(std::move(c));
    }
  }

  std::vector<Policy> ReadPolicies(json const& doc) {
    std::vector<Policy> out;
    auto const& name = docs_.policies.name;
    if (!doc.is_object()) {
      Report(name + ": expected an object mapping resource id to a policy");
      return out;
    }
    for (auto const& [resource, body] : doc.items()) {
      auto where = name + ": /" + resource;
      json const* bindings = &body;
      if (body.is_object()) {
        if (!body.contains("bindings")) {
          Report(where + ": policy object needs \"bindings\"");
          continue;
        }
        bindings = &body["bindings"];
        where += "/bindings";
      }
      if (!bindings->is_array()) {
        Report(where + ": expected a list of bindings");
        continue;
      }
      Policy policy{resource, {}};
      for (std::size_t i = 0; i < bindings->size(); ++i) {
        auto const& b = (*bindings)[i];
        auto at = where + "/" + std::to_string(i);
        if (!b.is_object() || !b.contains("role") || !b["role"].is_string()) {
          Report(at + ": binding needs a string \"role\"");
          continue;
        }
        Binding binding;
        binding.role = b["role"].get<std::string>();
        if (!b.contains("members") || !b["members"].is_array()) {
          Report(at + ": binding needs a \"members\" list");
          continue;
        }
        for (std::size_t k = 0; k < b["members"].size(); ++k) {
          auto id = Declare(at + "/members/" + std::to_string(k),
                            b["members"][k]);
          if (id) binding.members.insert(*id);
        }
        if (b.contains("condition") && !b["condition"].is_null()) {
          auto const& c = b["condition"];
          if (!c.is_object() || !c.contains("expression") ||
              !c["expression"].is_string()) {
            Report(at + "/condition: needs a string \"expression\"");
            continue;
          }
          try {
            binding.condition =
                ParseCondition(c["expression"].get<std::string>());
          } catch (ConditionSyntaxError const& e) {
            Report(at + "/condition: " + e.what());
            continue;
          }
        }
        policy.bindings.push_back(std::move(binding));
      }
      out.push_back(std::move(policy));
    }
    return out;
  }

  InputDocuments const& docs_;
  std::map<std::string, Member> members_;
  std::vector<std::string> diagnostics_;
};

}  // namespace

LoadError::LoadError(std::vector<std::string> diagnostics)
    : std::runtime_error(Join(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

std::optional<Member> ParseMemberString(std::string const& text) {
  static constexpr std::pair<std::string_view, MemberKind> kPrefixes[] = {
      {"user:", MemberKind::kAccount},
      {"serviceAccount:", MemberKind::kServiceAccount},
      {"group:", MemberKind::kGroup},
      {"domain:", MemberKind::kDomain},
  };
  for (auto const& [prefix, kind] : kPrefixes) {
    if (text.size() > prefix.size() && text.rfind(prefix, 0) == 0) {
      return Member{text.substr(prefix.size()), kind, {}};
    }
  }
  return std::nullopt;
}

LoadedInputs LoadInputs(InputDocuments const& documents) {
  return Loader(documents).Load();
}

Document ReadDocument(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError({path + ": cannot open file"});
  std::ostringstream text;
  text << in.rdbuf();
  return {path, text.str()};
}

}  // namespace iamcheck
