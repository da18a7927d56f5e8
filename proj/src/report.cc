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

#include "iamcheck/report.h"

#include <algorithm>
#include <stdexcept>

namespace iamcheck {

namespace {

using nlohmann::json;

std::string Colorize(VerdictResult r, bool color) {
  std::string name(VerdictResultName(r));
  if (!color) return name;
  char const* code = "";
  switch (r) {
    case VerdictResult::kTrue:
      code = "\033[32m";
      break;
    case VerdictResult::kFalse:
      code = "\033[31m";
      break;
    case VerdictResult::kVacuous:
      code = "\033[33m";
      break;
    case VerdictResult::kError:
      code = "\033[1;31m";
      break;
  }
  return code + name + "\033[0m";
}

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

json RequestToJson(Request const& r) {
  json context = json::object();
  for (auto const& [attribute, value] : r.context) {
    if (auto const* s = std::get_if<std::string>(&value)) {
      context[attribute] = *s;
    } else {
      context[attribute] = std::get<std::int64_t>(value);
    }
  }
  return {{"member", r.member},
          {"role", r.role},
          {"permission", r.permission.ToString()},
          {"resource", r.resource},
          {"context", context}};
}

Request RequestFromJson(json const& j) {
  Request r;
  r.member = j.at("member").get<std::string>();
  r.role = j.at("role").get<std::string>();
  auto p = Permission::Parse(j.at("permission").get<std::string>());
  if (!p) throw std::invalid_argument("bad permission in counterexample");
  r.permission = *p;
  r.resource = j.at("resource").get<std::string>();
  for (auto const& [attribute, value] : j.at("context").items()) {
    if (value.is_string()) {
      r.context.emplace(attribute, value.get<std::string>());
    } else {
      r.context.emplace(attribute, value.get<std::int64_t>());
    }
  }
  return r;
}

}  // namespace

std::string RenderVerdictTable(std::span<Verdict const> verdicts, bool color) {
  std::size_t label_width = 5;
  for (auto const& v : verdicts) {
    label_width = std::max(label_width, v.label.size());
  }
  std::string out = Pad("LABEL", label_width) + "  " + Pad("RESULT", 7) +
                    "  DETAIL\n";
  int counts[4] = {0, 0, 0, 0};
  for (auto const& v : verdicts) {
    ++counts[static_cast<int>(v.result)];
    std::string detail;
    switch (v.result) {
      case VerdictResult::kFalse:
        detail = RequestToString(v.counterexample->request) + " -> " +
                 std::string(DecisionName(v.counterexample->decision));
        break;
      case VerdictResult::kTrue:
        detail = std::to_string(v.tuples_matching) + " matching tuples";
        break;
      case VerdictResult::kVacuous:
        detail = v.warnings.empty() ? "" : v.warnings.front();
        break;
      case VerdictResult::kError:
        detail = v.error;
        break;
    }
    // Pad before colouring so escape codes do not skew the columns.
    auto result = Colorize(v.result, color);
    auto plain = std::string(VerdictResultName(v.result));
    if (plain.size() < 7) result.append(7 - plain.size(), ' ');
    out += Pad(v.label, label_width) + "  " + result + "  " + detail + "\n";
  }
  out += std::to_string(verdicts.size()) + " properties: " +
         std::to_string(counts[0]) + " TRUE, " + std::to_string(counts[1]) +
         " FALSE, " + std::to_string(counts[2]) + " VACUOUS, " +
         std::to_string(counts[3]) + " ERROR\n";
  return out;
}

json VerdictsToJson(std::span<Verdict const> verdicts) {
  json list = json::array();
  for (auto const& v : verdicts) {
    json consequent = json::array();
    for (auto d : v.consequent) consequent.push_back(DecisionName(d));
    json cx = nullptr;
    if (v.counterexample) {
      json findings = json::array();
      for (auto const& f : v.counterexample->findings) {
        findings.push_back({{"kind", FindingKindName(f.kind)},
                            {"member", f.member},
                            {"role", f.role},
                            {"origin", f.origin},
                            {"detail", f.detail}});
      }
      cx = {{"request", RequestToJson(v.counterexample->request)},
            {"decision", DecisionName(v.counterexample->decision)},
            {"findings", findings}};
    }
    list.push_back({{"label", v.label},
                    {"property", v.property},
                    {"consequent", consequent},
                    {"result", VerdictResultName(v.result)},
                    {"tuples_enumerated", v.tuples_enumerated},
                    {"tuples_matching", v.tuples_matching},
                    {"counterexample", cx},
                    {"warnings", v.warnings},
                    {"error", v.result == VerdictResult::kError
                                  ? json(v.error)
                                  : json(nullptr)}});
  }
  return {{"schema", kVerdictSchema}, {"verdicts", list}};
}

std::vector<Verdict> VerdictsFromJson(json const& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kVerdictSchema) {
      throw std::invalid_argument("unsupported verdict schema");
    }
    std::vector<Verdict> out;
    for (auto const& j : doc.at("verdicts")) {
      Verdict v;
      v.label = j.at("label").get<std::string>();
      v.property = j.at("property").get<std::string>();
      for (auto const& d : j.at("consequent")) {
        auto parsed = ParseDecision(d.get<std::string>());
        if (!parsed) throw std::invalid_argument("bad consequent");
        v.consequent.insert(*parsed);
      }
      auto result = ParseVerdictResult(j.at("result").get<std::string>());
      if (!result) throw std::invalid_argument("bad verdict result");
      v.result = *result;
      v.tuples_enumerated = j.at("tuples_enumerated").get<std::uint64_t>();
      v.tuples_matching = j.at("tuples_matching").get<std::uint64_t>();
      v.warnings = j.at("warnings").get<std::vector<std::string>>();
      if (!j.at("error").is_null()) v.error = j.at("error").get<std::string>();
      auto const& cx = j.at("counterexample");
      if (!cx.is_null()) {
        Counterexample c;
        c.request = RequestFromJson(cx.at("request"));
        auto d = ParseDecision(cx.at("decision").get<std::string>());
        if (!d) throw std::invalid_argument("bad counterexample decision");
        c.decision = *d;
        for (auto const& f : cx.at("findings")) {
          auto kind = ParseFindingKind(f.at("kind").get<std::string>());
          if (!kind) throw std::invalid_argument("bad finding kind");
          c.findings.push_back({*kind, f.at("member").get<std::string>(),
                                f.at("role").get<std::string>(),
                                f.at("origin").get<std::string>(),
                                f.at("detail").get<std::string>()});
        }
        v.counterexample = std::move(c);
      }
      out.push_back(std::move(v));
    }
    return out;
  } catch (json::exception const& e) {
    throw std::invalid_argument(std::string("verdict json: ") + e.what());
  }
}

int ExitCode(std::span<Verdict const> verdicts, bool strict) {
  auto any = [&](VerdictResult r) {
    return std::any_of(verdicts.begin(), verdicts.end(),
                       [r](Verdict const& v) { return v.result == r; });
  };
  if (any(VerdictResult::kError)) return 2;
  if (any(VerdictResult::kFalse)) return 1;
  if (strict && any(VerdictResult::kVacuous)) return 1;
  return 0;
}

}  // namespace iamcheck
