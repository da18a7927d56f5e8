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

#include "iamcheck/smv.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "iamcheck/checker.h"

namespace iamcheck {

std::map<std::string, std::string> MangleIds(std::vector<std::string> ids,
                                             std::string_view prefix) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::map<std::string, std::string> out;
  std::set<std::string> used;
  for (auto const& id : ids) {
    std::string base(prefix);
    for (char ch : id) {
      bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                (ch >= '0' && ch <= '9') || ch == '_';
      base += ok ? ch : '_';
    }
    auto name = base;
    for (int n = 2; used.contains(name); ++n) {
      name = base + "_" + std::to_string(n);
    }
    used.insert(name);
    out.emplace(id, std::move(name));
  }
  return out;
}

namespace {

struct ContextVar {
  std::string name;
  // Parallel to the domain's values.
  std::vector<std::string> symbols;
  ContextDomain::Values values;
};

class Emitter {
 public:
  Emitter(PolicyUniverse const& universe, std::span<AccessRule const> rules,
          std::span<Property const> properties)
      : universe_(universe), rules_(rules), properties_(properties) {
    members_ = MangleIds(universe.member_domain(), "m_");
    roles_ = MangleIds(universe.role_domain(), "r_");
    std::vector<std::string> permissions;
    for (auto const& p : universe.permission_domain()) {
      permissions.push_back(p.ToString());
    }
    permissions_ = MangleIds(permissions, "p_");
    resources_ = MangleIds(universe.resource_domain(), "res_");

    auto domain = ContextDomain::Build(rules, properties);
    std::vector<std::string> attributes;
    for (auto const& [attribute, values] : domain.attributes()) {
      attributes.push_back(attribute);
    }
    auto names = MangleIds(attributes, "CTX_");
    for (auto const& [attribute, values] : domain.attributes()) {
      ContextVar var{names.at(attribute), {}, values};
      std::vector<std::string> strings;
      for (auto const& v : values) {
        if (v && std::holds_alternative<std::string>(*v)) {
          strings.push_back(std::get<std::string>(*v));
        }
      }
      auto string_symbols = MangleIds(strings, "s_");
      for (auto const& v : values) {
        if (!v) {
          var.symbols.push_back("NONE");
        } else if (auto const* i = std::get_if<std::int64_t>(&*v)) {
          var.symbols.push_back(*i < 0 ? "v_m" + std::to_string(-*i)
                                       : "v_" + std::to_string(*i));
        } else {
          var.symbols.push_back(string_symbols.at(std::get<std::string>(*v)));
        }
      }
      context_.emplace(attribute, std::move(var));
    }
  }

  std::string Emit() {
    std::ostringstream out;
    out << "-- Generated by iamcheck. One request per step; decision is the\n"
        << "-- access decision for the previous step's request.\n"
        << "-- ANY in a property is rendered as TRUE.\n"
        << "-- members: " << members_.size() << ", roles: " << roles_.size()
        << ", permissions: " << permissions_.size()
        << ", resources: " << resources_.size()
        << ", rules: " << rules_.size()
        << ", specs: " << properties_.size() << "\n\n";
    out << "MODULE main\n";
    out << "VAR\n";
    EmitEnum(out, "MEMBER", members_);
    EmitEnum(out, "ROLE", roles_);
    EmitEnum(out, "PERMISSION", permissions_);
    EmitEnum(out, "RESOURCE", resources_);
    for (auto const& [attribute, var] : context_) {
      out << "  " << var.name << " : {";
      for (std::size_t i = 0; i < var.symbols.size(); ++i) {
        out << (i ? ", " : "") << var.symbols[i];
      }
      out << "};\n";
    }
    out << "  decision : {Grant, Deny};\n\n";

    out << "ASSIGN\n";
    out << "  init(decision) := Deny;\n";
    out << "  next(decision) :=\n";
    out << "    case\n";
    for (std::size_t i = 0; i < rules_.size(); ++i) EmitRule(out, i);
    out << "      TRUE : Deny;\n";
    out << "    esac;\n";

    for (auto const& p : properties_) EmitSpec(out, p);

    out << "\n-- identifier mapping\n";
    EmitMapping(out, "MEMBER", members_);
    EmitMapping(out, "ROLE", roles_);
    EmitMapping(out, "PERMISSION", permissions_);
    EmitMapping(out, "RESOURCE", resources_);
    for (auto const& [attribute, var] : context_) {
      out << "--   " << var.name << " = CONDITION." << attribute << "\n";
      for (std::size_t i = 0; i < var.symbols.size(); ++i) {
        out << "--     " << var.symbols[i] << " = "
            << (var.values[i] ? "\"" + LiteralToString(*var.values[i]) + "\""
                              : std::string("<absent>"))
            << "\n";
      }
    }
    return out.str();
  }

 private:
  static void EmitEnum(std::ostream& out, std::string_view var,
                       std::map<std::string, std::string> const& names) {
    out << "  " << var << " : {";
    bool first = true;
    for (auto const& [id, name] : names) {
      out << (first ? "" : ", ") << name;
      first = false;
    }
    out << "};\n";
  }

  static void EmitMapping(std::ostream& out, std::string_view var,
                          std::map<std::string, std::string> const& names) {
    for (auto const& [id, name] : names) {
      out << "--   " << var << " " << name << " = \"" << id << "\"\n";
    }
  }

  template <typename Range, typename Name>
  static std::string Disjunction(std::string_view var, Range const& values,
                                 Name name) {
    std::string out = "(";
    bool first = true;
    for (auto const& v : values) {
      if (!first) out += " | ";
      out += std::string(var) + " = " + name(v);
      first = false;
    }
    return out + ")";
  }

  std::string RenderCondition(Condition const& c) const {
    switch (c.kind()) {
      case Condition::Kind::kNot:
        return "!" + RenderCondition(c.operands().front());
      case Condition::Kind::kAnd:
      case Condition::Kind::kOr: {
        std::string out = "(";
        for (std::size_t i = 0; i < c.operands().size(); ++i) {
          if (i > 0) out += c.kind() == Condition::Kind::kAnd ? " & " : " | ";
          out += RenderCondition(c.operands()[i]);
        }
        return out + ")";
      }
      case Condition::Kind::kCompare:
        break;
    }
    auto const& var = context_.at(c.attribute());
    std::vector<std::string> satisfied;
    for (std::size_t i = 0; i < var.values.size(); ++i) {
      RequestContext ctx;
      if (var.values[i]) ctx.emplace(c.attribute(), *var.values[i]);
      if (c.Evaluate(ctx)) satisfied.push_back(var.symbols[i]);
    }
    if (satisfied.empty()) return "FALSE";
    return Disjunction(var.name, satisfied,
                       [](std::string const& s) { return s; });
  }

  void EmitRule(std::ostream& out, std::size_t index) const {
    auto const& rule = rules_[index];
    out << "      -- rule " << index + 1 << ": " << rule.role << " on "
        << rule.resource << " (attached at " << rule.provenance.origin
        << ")\n";
    if (rule.permissions.empty()) {
      out << "      -- role has no permissions; never fires\n";
      return;
    }
    out << "      "
        << Disjunction("MEMBER", rule.members,
                       [&](auto const& m) { return members_.at(m); })
        << " & (ROLE = " << roles_.at(rule.role) << ") & "
        << Disjunction(
               "PERMISSION", rule.permissions,
               [&](auto const& p) { return permissions_.at(p.ToString()); })
        << " & (RESOURCE = " << resources_.at(rule.resource) << ")";
    if (rule.condition) out << " & " << RenderCondition(*rule.condition);
    out << " : Grant;\n";
  }

  std::string RenderClause(SortPredicate const& pred,
                           std::map<std::string, std::string> const& names,
                           std::string const& var) const {
    if (pred.any) return "(TRUE)";
    if (pred.negated) {
      return "(" + var + " != " + names.at(pred.values.front()) + ")";
    }
    return Disjunction(var, pred.values,
                       [&](std::string const& v) { return names.at(v); });
  }

  std::string RenderConditionClause(SortPredicate const& pred) const {
    if (pred.any) return "(TRUE)";
    auto const& var = context_.at(pred.attribute);
    std::vector<std::string> satisfied;
    for (std::size_t i = 0; i < var.values.size(); ++i) {
      RequestContext ctx;
      if (var.values[i]) ctx.emplace(pred.attribute, *var.values[i]);
      if (pred.MatchesContext(ctx)) satisfied.push_back(var.symbols[i]);
    }
    if (satisfied.empty()) return "(FALSE)";
    return Disjunction(var.name, satisfied,
                       [](std::string const& s) { return s; });
  }

  void EmitSpec(std::ostream& out, Property const& p) const {
    out << "\n-- " << p.label << "\n";
    Verdict verdict;
    try {
      verdict = Verify(universe_, rules_, p);
    } catch (BindError const& e) {
      out << "-- skipped: " << e.what() << "\n";
      return;
    }
    out << "-- expected: "
        << (verdict.result == VerdictResult::kFalse ? "FALSE" : "TRUE");
    if (verdict.result == VerdictResult::kVacuous) out << " (vacuous)";
    out << "\n";
    out << "SPEC AG (" << RenderClause(p.member, members_, "MEMBER") << " & "
        << RenderClause(p.role, roles_, "ROLE") << " & "
        << RenderClause(p.permission, permissions_, "PERMISSION") << " & "
        << RenderClause(p.resource, resources_, "RESOURCE");
    for (auto const& c : p.conditions) out << " & " << RenderConditionClause(c);
    out << " -> AF ";
    if (p.consequent.size() == 2) {
      out << "(decision = Grant | decision = Deny)";
    } else {
      out << "decision = " << DecisionName(*p.consequent.begin());
    }
    out << ")\n";
  }

  PolicyUniverse const& universe_;
  std::span<AccessRule const> rules_;
  std::span<Property const> properties_;
  std::map<std::string, std::string> members_;
  std::map<std::string, std::string> roles_;
  std::map<std::string, std::string> permissions_;
  std::map<std::string, std::string> resources_;
  std::map<std::string, ContextVar> context_;
};

}  // namespace

std::string EmitSmv(PolicyUniverse const& universe,
                    std::span<AccessRule const> rules,
                    std::span<Property const> properties) {
  return Emitter(universe, rules, properties).Emit();
}

}  // namespace iamcheck
