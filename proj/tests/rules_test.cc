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

#include "iamcheck/rules.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <random>

#include "testing/fixtures.h"
#include "testing/generators.h"
#include "testing/oracle.h"

namespace iamcheck {
namespace {

using ::testing::SizeIs;

Permission P(std::string_view text) { return *Permission::Parse(text); }

std::vector<AccessRule> CompileAll(PolicyUniverse const& u) {
  return Compile(u, Materialize(u));
}

Request Req(std::string member, std::string role, std::string_view permission,
            std::string resource, RequestContext context = {}) {
  return {std::move(member), std::move(role), P(permission),
          std::move(resource), std::move(context)};
}

TEST(CompileTest, ExampleOneHasThreeRules) {
  auto u = testing::LoadFixture("example1").universe;
  auto rules = CompileAll(u);
  ASSERT_THAT(rules, SizeIs(3));
  for (auto const& r : rules) {
    EXPECT_EQ(r.decision, Decision::kGrant);
    EXPECT_EQ(r.permissions, u.roles().at(r.role).permissions);
  }
}

TEST(CompileTest, ExampleTwoExpandsTheGroup) {
  auto u = testing::LoadFixture("example2").universe;
  auto rules = CompileAll(u);
  ASSERT_THAT(rules, SizeIs(4));
  int group_rules = 0;
  for (auto const& r : rules) {
    if (r.role == "roles/storage.objectCreator") {
      ++group_rules;
      EXPECT_THAT(r.members, SizeIs(4));
      EXPECT_TRUE(r.members.contains("bob@example.com"));
    } else {
      EXPECT_EQ(r.members, std::set<std::string>{"alice@example.com"});
    }
  }
  EXPECT_EQ(group_rules, 2);
}

TEST(CompileTest, NoBindingsNoRules) {
  auto u = BuildUniverse({{"a", MemberKind::kAccount, {}}},
                         {{"roles/r", {P("s.t.v")}}},
                         {{"p", ResourceLevel::kProject, std::nullopt}}, {});
  EXPECT_TRUE(CompileAll(u).empty());
}

TEST(CompileTest, Deterministic) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto u = testing::RandomUniverse(rng);
    auto a = CompileAll(u);
    auto b = CompileAll(u);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      ASSERT_EQ(a[k].provenance, b[k].provenance);
      ASSERT_EQ(a[k].resource, b[k].resource);
    }
  }
}

TEST(DecideTest, ExampleOne) {
  auto u = testing::LoadFixture("example1").universe;
  auto rules = CompileAll(u);
  EXPECT_EQ(Decide(u, rules,
                   Req("alice@gmail.com", "roles/pubsub.publisher",
                       "pubsub.topics.publish", "topic_a")),
            Decision::kGrant);
  EXPECT_EQ(Decide(u, rules,
                   Req("alice@gmail.com", "roles/pubsub.publisher",
                       "pubsub.topics.publish", "project_a")),
            Decision::kDeny);
  EXPECT_EQ(Decide(u, rules,
                   Req("bob@gmail.com", "roles/pubsub.editor",
                       "pubsub.topics.delete", "topic_a")),
            Decision::kGrant);
  // bob holds editor, not publisher.
  EXPECT_EQ(Decide(u, rules,
                   Req("bob@gmail.com", "roles/pubsub.publisher",
                       "pubsub.topics.publish", "topic_a")),
            Decision::kDeny);
}

TEST(DecideTest, ExampleTwoGroupMember) {
  auto u = testing::LoadFixture("example2").universe;
  auto rules = CompileAll(u);
  EXPECT_EQ(Decide(u, rules,
                   Req("bob@example.com", "roles/storage.objectCreator",
                       "storage.objects.create", "upload_here")),
            Decision::kGrant);
  EXPECT_EQ(Decide(u, rules,
                   Req("bob@example.com", "roles/storage.objectCreator",
                       "storage.objects.delete", "upload_here")),
            Decision::kDeny);
  EXPECT_EQ(Decide(u, rules,
                   Req("bob@example.com", "roles/storage.objectCreator",
                       "storage.objects.create", "example.com")),
            Decision::kDeny);
}

TEST(DecideTest, UnknownIdsAreRejected) {
  auto u = testing::LoadFixture("example1").universe;
  auto rules = CompileAll(u);
  EXPECT_THROW(Decide(u, rules,
                      Req("eve@gmail.com", "roles/pubsub.editor",
                          "pubsub.topics.publish", "topic_a")),
               UnknownIdError);
  EXPECT_THROW(Decide(u, rules,
                      Req("bob@gmail.com", "roles/owner",
                          "pubsub.topics.publish", "topic_a")),
               UnknownIdError);
  EXPECT_THROW(Decide(u, rules,
                      Req("bob@gmail.com", "roles/pubsub.editor",
                          "storage.objects.get", "topic_a")),
               UnknownIdError);
  EXPECT_THROW(Decide(u, rules,
                      Req("bob@gmail.com", "roles/pubsub.editor",
                          "pubsub.topics.publish", "topic_z")),
               UnknownIdError);
}

TEST(DecideTest, DenyRulesAreRejected) {
  auto u = testing::LoadFixture("example1").universe;
  auto rules = CompileAll(u);
  rules.front().decision = Decision::kDeny;
  auto req = Req(*rules.front().members.begin(), rules.front().role,
                 rules.front().permissions.begin()->ToString(),
                 rules.front().resource);
  EXPECT_THROW(Decide(rules, req), std::invalid_argument);
}

TEST(DecideTest, ConditionsGateRules) {
  auto u = BuildUniverse(
      {{"a", MemberKind::kAccount, {}}}, {{"roles/r", {P("s.t.v")}}},
      {{"p", ResourceLevel::kProject, std::nullopt}},
      {{"p", {{{"a"}, "roles/r", ParseCondition("request.hour < 12")}}}});
  auto rules = CompileAll(u);
  EXPECT_EQ(Decide(rules, Req("a", "roles/r", "s.t.v", "p",
                              {{"request.hour", std::int64_t{9}}})),
            Decision::kGrant);
  EXPECT_EQ(Decide(rules, Req("a", "roles/r", "s.t.v", "p",
                              {{"request.hour", std::int64_t{12}}})),
            Decision::kDeny);
  EXPECT_EQ(Decide(rules, Req("a", "roles/r", "s.t.v", "p")), Decision::kDeny);
}

Request RandomRequest(std::mt19937_64& rng, PolicyUniverse const& u) {
  auto pick = [&](auto const& v) -> auto const& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  RequestContext ctx;
  if (rng() % 2) ctx["request.hour"] = std::int64_t(rng() % 24);
  if (rng() % 2) ctx["resource.tag"] = std::string(rng() % 2 ? "prod" : "dev");
  return {pick(u.member_domain()), pick(u.role_domain()),
          pick(u.permission_domain()), pick(u.resource_domain()), ctx};
}

TEST(DecideTest, AgreesWithOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto u = testing::RandomUniverse(rng);
    auto rules = CompileAll(u);
    for (int k = 0; k < 50; ++k) {
      auto req = RandomRequest(rng, u);
      ASSERT_EQ(Decide(u, rules, req), testing::OracleDecide(u, req))
          << RequestToString(req);
    }
  }
}

// Adding a binding never turns a Grant into a Deny.
TEST(DecideTest, MonotoneInBindings) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    auto u = testing::RandomUniverse(rng);
    auto rules = CompileAll(u);
    auto policies = u.PolicyList();
    auto extra = testing::RandomBinding(rng, u);
    auto target = u.resource_domain()[rng() % u.resource_domain().size()];
    policies.push_back({target, {extra}});
    auto bigger = BuildUniverse(u.MemberList(), u.RoleList(),
                                u.ResourceList(), policies);
    auto more_rules = CompileAll(bigger);
    for (int k = 0; k < 30; ++k) {
      auto req = RandomRequest(rng, u);
      if (Decide(rules, req) == Decision::kGrant) {
        ASSERT_EQ(Decide(more_rules, req), Decision::kGrant)
            << RequestToString(req);
      }
    }
  }
}

}  // namespace
}  // namespace iamcheck
