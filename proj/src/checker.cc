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

#include "iamcheck/checker.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <tuple>

namespace iamcheck {

std::string_view VerdictResultName(VerdictResult r) {
  switch (r) {
    case VerdictResult::kTrue:
      return "TRUE";
    case VerdictResult::kFalse:
      return "FALSE";
    case VerdictResult::kVacuous:
      return "VACUOUS";
    case VerdictResult::kError:
      return "ERROR";
  }
  return "?";
}

std::optional<VerdictResult> ParseVerdictResult(std::string_view name) {
  for (auto r : {VerdictResult::kTrue, VerdictResult::kFalse,
                 VerdictResult::kVacuous, VerdictResult::kError}) {
    if (VerdictResultName(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view FindingKindName(Finding::Kind kind) {
  switch (kind) {
    case Finding::Kind::kGrantedBy:
      return "granted_by";
    case Finding::Kind::kRoleLacksPermission:
      return "role_lacks_permission";
    case Finding::Kind::kConditionFalse:
      return "condition_false";
    case Finding::Kind::kOtherRoleRequested:
      return "other_role_requested";
    case Finding::Kind::kBoundBelow:
      return "bound_below";
    case Finding::Kind::kOtherBranch:
      return "other_branch";
  }
  return "?";
}

std::optional<Finding::Kind> ParseFindingKind(std::string_view name) {
  for (auto k :
       {Finding::Kind::kGrantedBy, Finding::Kind::kRoleLacksPermission,
        Finding::Kind::kConditionFalse, Finding::Kind::kOtherRoleRequested,
        Finding::Kind::kBoundBelow, Finding::Kind::kOtherBranch}) {
    if (FindingKindName(k) == name) return k;
  }
  return std::nullopt;
}

ContextDomain ContextDomain::Build(std::span<AccessRule const> rules,
                                   std::span<Property const> properties) {
  struct Mentioned {
    std::set<std::int64_t> ints;
    std::set<std::string> strings;
  };
  std::map<std::string, Mentioned> mentioned;
  std::vector<std::pair<std::string, Literal>> atoms;
  for (auto const& r : rules) {
    if (r.condition) r.condition->CollectAtoms(atoms);
  }
  for (auto const& [attribute, value] : atoms) {
    auto& m = mentioned[attribute];
    if (auto const* i = std::get_if<std::int64_t>(&value)) {
      m.ints.insert(*i);
    } else {
      m.strings.insert(std::get<std::string>(value));
    }
  }
  for (auto const& p : properties) {
    for (auto const& c : p.conditions) {
      auto& m = mentioned[c.attribute];
      for (auto const& v : c.values) {
        auto literal = LiteralFromText(v);
        if (auto const* i = std::get_if<std::int64_t>(&literal)) {
          m.ints.insert(*i);
        } else {
          m.strings.insert(v);
        }
      }
    }
  }

  ContextDomain domain;
  for (auto& [attribute, m] : mentioned) {
    std::set<std::int64_t> ints;
    for (auto v : m.ints) {
      ints.insert(v);
      if (v > INT64_MIN) ints.insert(v - 1);
      if (v < INT64_MAX) ints.insert(v + 1);
    }
    m.strings.insert(std::string(kOtherValue));
    Values values{std::nullopt};
    for (auto v : ints) values.emplace_back(Literal(v));
    for (auto const& s : m.strings) values.emplace_back(Literal(s));
    domain.attributes_.emplace_back(attribute, std::move(values));
  }
  return domain;
}

std::uint64_t ContextDomain::size() const {
  std::uint64_t n = 1;
  for (auto const& [attribute, values] : attributes_) n *= values.size();
  return n;
}

std::vector<RequestContext> ContextDomain::Enumerate() const {
  std::vector<RequestContext> out{RequestContext{}};
  for (auto const& [attribute, values] : attributes_) {
    std::vector<RequestContext> next;
    next.reserve(out.size() * values.size());
    for (auto const& partial : out) {
      for (auto const& v : values) {
        auto ctx = partial;
        if (v) ctx.emplace(attribute, *v);
        next.push_back(std::move(ctx));
      }
    }
    out = std::move(next);
  }
  return out;
}

void BindProperty(PolicyUniverse const& universe, Property const& property) {
  std::vector<std::string> problems;
  auto check = [&](SortPredicate const& pred, auto&& known) {
    if (pred.any) return;
    for (auto const& v : pred.values) {
      if (!known(v)) {
        problems.push_back(std::string(SortKeyword(pred.sort)) + " \"" + v +
                           "\" is not in the " +
                           std::string(SortKeyword(pred.sort)) + " domain");
      }
    }
  };
  check(property.member,
        [&](auto const& v) { return universe.FindMember(v) != nullptr; });
  check(property.role,
        [&](auto const& v) { return universe.FindRole(v) != nullptr; });
  check(property.permission, [&](auto const& v) {
    auto p = Permission::Parse(v);
    return p && universe.HasPermission(*p);
  });
  check(property.resource,
        [&](auto const& v) { return universe.FindResource(v) != nullptr; });
  if (property.consequent.empty()) problems.push_back("empty consequent");
  if (problems.empty()) return;
  std::string message = property.label + ": ";
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i > 0) message += "; ";
    message += problems[i];
  }
  throw BindError(message);
}

namespace {

template <typename T, typename Key>
std::vector<T> Filter(std::vector<T> const& domain, SortPredicate const& pred,
                      Key key) {
  std::vector<T> out;
  for (auto const& v : domain) {
    if (pred.Matches(key(v))) out.push_back(v);
  }
  return out;
}

std::vector<Finding> DiagnoseDeny(PolicyUniverse const& universe,
                                  Property const& property,
                                  Request const& request) {
  auto const permission = request.permission.ToString();
  std::vector<Finding> findings;
  for (auto const& [origin, bindings] : universe.policies()) {
    bool in_force = origin == request.resource ||
                    universe.IsAncestor(origin, request.resource);
    bool below = !in_force && universe.IsAncestor(request.resource, origin);
    for (auto const& b : bindings) {
      if (!property.role.Matches(b.role)) continue;
      bool has_permission =
          RoleHasPermission(universe, b.role, request.permission);
      std::set<std::string> members;
      for (auto const& m : b.members) members.merge(ExpandGroup(universe, m));
      for (auto const& m : members) {
        if (!property.member.Matches(m)) continue;
        Finding f{Finding::Kind::kRoleLacksPermission, m, b.role, origin, {}};
        std::string held = m + " holds " + b.role;
        std::string attached = origin == request.resource
                                   ? " (attached there)"
                                   : " (inherited from " + origin + ")";
        if (in_force) {
          if (!has_permission) {
            f.kind = Finding::Kind::kRoleLacksPermission;
            f.detail = held + " on " + request.resource + attached +
                       ", but " + b.role + " lacks " + permission;
          } else if (b.condition &&
                     !b.condition->Evaluate(request.context)) {
            f.kind = Finding::Kind::kConditionFalse;
            f.detail = held + " on " + request.resource + attached +
                       ", but its condition " + b.condition->ToString() +
                       " is false for this request";
          } else if (b.role != request.role) {
            f.kind = Finding::Kind::kOtherRoleRequested;
            f.detail = held + " on " + request.resource + attached +
                       ", which grants " + permission +
                       ", but the request names " + request.role;
          } else {
            // The member in the request differs; nothing to report.
            continue;
          }
        } else {
          std::string grants =
              has_permission ? " (which grants " + permission + ")"
                             : " (which lacks " + permission + " anyway)";
          if (below) {
            f.kind = Finding::Kind::kBoundBelow;
            f.detail = held + grants + " only on " + origin +
                       ", which is below " + request.resource +
                       "; policies are inherited downward, never upward";
          } else {
            f.kind = Finding::Kind::kOtherBranch;
            f.detail = held + grants + " only on " + origin +
                       ", which is in a different branch of the hierarchy "
                       "than " +
                       request.resource;
          }
        }
        findings.push_back(std::move(f));
      }
    }
  }
  auto key = [](Finding const& f) {
    return std::tie(f.member, f.origin, f.role, f.kind, f.detail);
  };
  std::sort(findings.begin(), findings.end(),
            [&](Finding const& a, Finding const& b) { return key(a) < key(b); });
  findings.erase(std::unique(findings.begin(), findings.end()),
                 findings.end());
  return findings;
}

Finding DescribeGrant(AccessRule const& rule, Request const& request) {
  std::string members;
  for (auto const& m : rule.provenance.binding.members) {
    if (!members.empty()) members += ", ";
    members += m;
  }
  std::string detail = "binding of " + rule.role + " to {" + members +
                       "} attached at " + rule.provenance.origin;
  if (rule.provenance.origin != rule.resource) {
    detail += " is inherited by " + rule.resource;
  } else {
    detail += " is in force there";
  }
  if (!rule.provenance.binding.members.contains(request.member)) {
    detail += "; " + request.member + " is a member through group expansion";
  }
  return {Finding::Kind::kGrantedBy, request.member, rule.role,
          rule.provenance.origin, std::move(detail)};
}

}  // namespace

Verdict Verify(PolicyUniverse const& universe,
               std::span<AccessRule const> rules, Property const& property) {
  BindProperty(universe, property);

  Verdict verdict;
  verdict.label = property.label;
  verdict.property = ToString(property);
  verdict.consequent = property.consequent;

  TransitionSystem ts(rules);
  auto contexts = ContextDomain::Build(rules, std::span(&property, 1));
  auto all_contexts = contexts.Enumerate();

  verdict.tuples_enumerated =
      static_cast<std::uint64_t>(universe.member_domain().size()) *
      universe.role_domain().size() * universe.permission_domain().size() *
      universe.resource_domain().size() * all_contexts.size();

  auto identity = [](std::string const& s) -> std::string const& { return s; };
  auto members = Filter(universe.member_domain(), property.member, identity);
  auto roles = Filter(universe.role_domain(), property.role, identity);
  auto permissions =
      Filter(universe.permission_domain(), property.permission,
             [](Permission const& p) { return p.ToString(); });
  auto resources =
      Filter(universe.resource_domain(), property.resource, identity);
  std::vector<RequestContext const*> matching_contexts;
  for (auto const& ctx : all_contexts) {
    bool ok = std::all_of(
        property.conditions.begin(), property.conditions.end(),
        [&](SortPredicate const& c) { return c.MatchesContext(ctx); });
    if (ok) matching_contexts.push_back(&ctx);
  }

  Request request;
  for (auto const& m : members) {
    request.member = m;
    for (auto const& r : roles) {
      request.role = r;
      for (auto const& p : permissions) {
        request.permission = p;
        for (auto const& res : resources) {
          request.resource = res;
          for (auto const* ctx : matching_contexts) {
            request.context = *ctx;
            ++verdict.tuples_matching;
            if (verdict.counterexample) continue;
            auto decision = ts.Step(TransitionSystem::Initial(), request);
            if (property.consequent.contains(decision)) continue;
            Counterexample cx{request, decision, {}};
            if (decision == Decision::kGrant) {
              cx.findings.push_back(
                  DescribeGrant(*FindGrantingRule(rules, request), request));
            } else {
              cx.findings = DiagnoseDeny(universe, property, request);
            }
            verdict.counterexample = std::move(cx);
          }
        }
      }
    }
  }

  if (property.consequent.size() == 2) {
    verdict.result = VerdictResult::kVacuous;
    verdict.warnings.push_back(
        "consequent admits both Grant and Deny; the property holds trivially");
  } else if (verdict.tuples_matching == 0) {
    verdict.result = VerdictResult::kVacuous;
    verdict.warnings.push_back(
        "antecedent matches no request in the given domains");
  } else {
    verdict.result = verdict.counterexample ? VerdictResult::kFalse
                                            : VerdictResult::kTrue;
  }
  return verdict;
}

std::vector<Verdict> VerifyAll(PolicyUniverse const& universe,
                               std::span<AccessRule const> rules,
                               std::span<Property const> properties,
                               unsigned max_threads) {
  std::vector<Verdict> verdicts(properties.size());
  auto check_one = [&](std::size_t i) {
    try {
      verdicts[i] = Verify(universe, rules, properties[i]);
    } catch (BindError const& e) {
      Verdict v;
      v.label = properties[i].label;
      v.property = ToString(properties[i]);
      v.consequent = properties[i].consequent;
      v.result = VerdictResult::kError;
      v.error = e.what();
      verdicts[i] = std::move(v);
    }
  };

  unsigned threads = max_threads == 0 ? std::thread::hardware_concurrency()
                                      : max_threads;
  threads = std::clamp<unsigned>(
      threads, 1, static_cast<unsigned>(std::max<std::size_t>(
                      1, properties.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < properties.size(); ++i) check_one(i);
    return verdicts;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (auto i = next++; i < properties.size(); i = next++) check_one(i);
    });
  }
  workers.clear();
  return verdicts;
}

namespace {

std::string DescribeRequest(Request const& r) {
  std::string out = "MEMBER = \"" + r.member + "\", ROLE = \"" + r.role +
                    "\", PERMISSION = \"" + r.permission.ToString() +
                    "\", RESOURCE = \"" + r.resource + "\"";
  for (auto const& [attribute, value] : r.context) {
    out += ", CONDITION." + attribute + " = \"" + LiteralToString(value) +
           "\"";
  }
  return out;
}

}  // namespace

std::string Explain(Verdict const& verdict) {
  std::string out = verdict.label + ": " +
                    std::string(VerdictResultName(verdict.result)) + "\n";
  out += "  property: " + verdict.property + "\n";
  if (verdict.result == VerdictResult::kError) {
    return out + "  error: " + verdict.error + "\n";
  }
  out += "  tuples: " + std::to_string(verdict.tuples_enumerated) +
         " enumerated, " + std::to_string(verdict.tuples_matching) +
         " matching\n";
  for (auto const& w : verdict.warnings) out += "  warning: " + w + "\n";

  switch (verdict.result) {
    case VerdictResult::kTrue: {
      bool deny = verdict.consequent.contains(Decision::kDeny);
      out += "  " + std::to_string(verdict.tuples_matching) +
             " matching tuples, all " + (deny ? "Deny" : "Grant") + "\n";
      return out;
    }
    case VerdictResult::kVacuous:
      if (verdict.tuples_matching == 0) {
        out += "  antecedent is unsatisfiable in the given domains\n";
      } else {
        out += "  consequent is satisfied by every decision\n";
      }
      return out;
    default:
      break;
  }
  auto const& cx = *verdict.counterexample;
  out += "  counterexample: " + DescribeRequest(cx.request) + "\n";
  out += "  decision: " + std::string(DecisionName(cx.decision));
  if (cx.decision == Decision::kDeny) {
    out += " (no rule matches; default deny)\n";
  } else {
    out += "\n";
  }
  if (cx.findings.empty()) {
    out += "  why: no binding for a matching member and role exists "
           "anywhere in the hierarchy\n";
    return out;
  }
  out += "  why:\n";
  for (auto const& f : cx.findings) {
    out += "    - [" + std::string(FindingKindName(f.kind)) + "] " + f.detail +
           "\n";
  }
  return out;
}

}  // namespace iamcheck
