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

#include "iamcheck/property.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <random>

#include "testing/fixtures.h"
#include "testing/generators.h"

namespace iamcheck {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::SizeIs;

Request Req(std::string member, std::string role, std::string_view permission,
            std::string resource, RequestContext context = {}) {
  return {std::move(member), std::move(role), *Permission::Parse(permission),
          std::move(resource), std::move(context)};
}

TEST(ParsePropertyTest, ExampleOneProperty) {
  auto p = ParseProperty(R"(SPEC AG ((MEMBER = "alice@gmail.com") &
      (ROLE = "roles/pubsub.publisher") &
      (PERMISSION = ANY) & (RESOURCE = "project_a") -> AF decision = Grant))");
  EXPECT_EQ(p.label, "spec 1");
  EXPECT_EQ(p.member, SortPredicate::OneOf(Sort::kMember, {"alice@gmail.com"}));
  EXPECT_EQ(p.role,
            SortPredicate::OneOf(Sort::kRole, {"roles/pubsub.publisher"}));
  EXPECT_TRUE(p.permission.any);
  EXPECT_EQ(p.resource, SortPredicate::OneOf(Sort::kResource, {"project_a"}));
  EXPECT_EQ(p.consequent, std::set<Decision>{Decision::kGrant});
}

TEST(ParsePropertyTest, DisjunctionNegationAndDeny) {
  auto p = ParseProperty(R"(SPEC AG ((MEMBER != "alice@example.com") &
      (ROLE = ANY) &
      (PERMISSION = "storage.objects.delete" | PERMISSION = "storage.objects.update") &
      (RESOURCE = ANY) -> AF decision = Deny))");
  EXPECT_EQ(p.member, SortPredicate::NotEqual(Sort::kMember,
                                              "alice@example.com"));
  EXPECT_THAT(p.permission.values,
              ElementsAre("storage.objects.delete", "storage.objects.update"));
  EXPECT_EQ(p.consequent, std::set<Decision>{Decision::kDeny});
}

TEST(ParsePropertyTest, SymbolAliasesAndBothDecisions) {
  auto p = ParseProperty(
      "SPEC AG ((MEMBER == \"a\") ∧ (ROLE = ANY) && (PERMISSION ≠ \"s.t.v\") "
      "& (RESOURCE = \"r\") → AF (decision = Grant | decision = Deny))");
  EXPECT_TRUE(p.permission.negated);
  EXPECT_EQ(p.consequent,
            (std::set<Decision>{Decision::kGrant, Decision::kDeny}));
}

TEST(ParsePropertyTest, ConditionClause) {
  auto p = ParseProperty(
      R"(SPEC AG ((MEMBER = ANY) & (ROLE = ANY) & (PERMISSION = ANY) &
         (RESOURCE = ANY) & (CONDITION.request.region = "eu") -> AF decision = Grant))");
  ASSERT_THAT(p.conditions, SizeIs(1));
  EXPECT_EQ(p.conditions[0].attribute, "request.region");
  EXPECT_THROW(ParseProperty(R"(SPEC AG ((MEMBER = ANY) & (ROLE = ANY) &
      (PERMISSION = ANY) & (RESOURCE = ANY) & (CONDITION = "x") -> AF decision = Grant))"),
               PropertySyntaxError);
}

PropertySyntaxError ErrorOf(std::string_view text) {
  try {
    ParseProperty(text);
  } catch (PropertySyntaxError const& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return PropertySyntaxError("", 0, 0);
}

TEST(ParsePropertyTest, MissingResourceClause) {
  auto e = ErrorOf(R"(SPEC AG ((MEMBER = "a") & (ROLE = ANY) &
(PERMISSION = ANY) -> AF decision = Grant))");
  EXPECT_THAT(e.what(), HasSubstr("missing RESOURCE clause"));
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 20);
}

TEST(ParsePropertyTest, UnknownSort) {
  auto e = ErrorOf(
      R"(SPEC AG ((USER = "a") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))");
  EXPECT_THAT(e.what(), HasSubstr("unknown sort 'USER'"));
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 11);
}

TEST(ParsePropertyTest, EmptyConsequent) {
  auto e = ErrorOf(
      R"(SPEC AG ((MEMBER = "a") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = ))");
  EXPECT_THAT(e.what(), HasSubstr("empty consequent"));
}

TEST(ParsePropertyTest, OtherMalformedInputs) {
  for (auto text : {
           R"(AG ((MEMBER = "a") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))",
           R"(SPEC AG ((MEMBER = "a") & (MEMBER = "b") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))",
           R"(SPEC AG ((MEMBER = ANY | MEMBER = "b") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))",
           R"(SPEC AG ((MEMBER != ANY) & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))",
           R"(SPEC AG ((MEMBER != "a" | MEMBER = "b") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))",
           R"(SPEC AG ((MEMBER = "a" | ROLE = "b") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))",
           R"(SPEC AG ((MEMBER = "a") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Maybe))",
           R"(SPEC AG ((MEMBER = "a) & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant))",
           R"(SPEC AG ((MEMBER = "a") & (ROLE = ANY) & (PERMISSION = ANY) & (RESOURCE = ANY) -> AF decision = Grant)) extra)",
       }) {
    EXPECT_THROW(ParseProperty(text), PropertySyntaxError) << text;
  }
}

TEST(ParsePropertyFileTest, LabelsComeFromNameComments) {
  auto props = testing::LoadFixture("example1").properties;
  ASSERT_THAT(props, SizeIs(3));
  EXPECT_EQ(props[0].label, "alice-publisher-on-project_a");
  EXPECT_EQ(props[2].label, "alice-delete-on-topic_a");

  auto unnamed = ParsePropertyFile(
      "SPEC AG ((MEMBER = ANY) & (ROLE = ANY) & (PERMISSION = ANY) & "
      "(RESOURCE = ANY) -> AF decision = Grant)\n"
      "# a plain comment\n"
      "SPEC AG ((MEMBER = ANY) & (ROLE = ANY) & (PERMISSION = ANY) & "
      "(RESOURCE = ANY) -> AF decision = Deny)\n");
  ASSERT_THAT(unnamed, SizeIs(2));
  EXPECT_EQ(unnamed[0].label, "spec 1");
  EXPECT_EQ(unnamed[1].label, "spec 2");
  EXPECT_EQ(unnamed[1].line, 3);
}

TEST(ParsePropertyFileTest, AggregatesErrors) {
  std::string text =
      "SPEC AG ((MEMBER = ANY) & (ROLE = ANY) & (PERMISSION = ANY) -> AF "
      "decision = Grant)\n"
      "SPEC AG ((MEMBER = ANY) & (ROLE = ANY) & (PERMISSION = ANY) & "
      "(RESOURCE = ANY) -> AF decision = Grant)\n"
      "SPEC AG ((BOGUS = ANY) & (ROLE = ANY) & (PERMISSION = ANY) & "
      "(RESOURCE = ANY) -> AF decision = Grant)\n";
  try {
    ParsePropertyFile(text);
    FAIL() << "expected errors";
  } catch (PropertyFileError const& e) {
    ASSERT_THAT(e.errors(), SizeIs(2));
    EXPECT_EQ(e.errors()[0].line(), 1);
    EXPECT_EQ(e.errors()[1].line(), 3);
  }
}

TEST(PropertyTest, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto u = testing::RandomUniverse(rng);
    auto p = testing::RandomProperty(rng, u);
    auto text = ToString(p);
    auto back = ParseProperty(text);
    ASSERT_EQ(ToString(back), text);
    EXPECT_EQ(back.member, p.member);
    EXPECT_EQ(back.role, p.role);
    EXPECT_EQ(back.permission, p.permission);
    EXPECT_EQ(back.resource, p.resource);
    EXPECT_EQ(back.conditions, p.conditions);
    EXPECT_EQ(back.consequent, p.consequent);
  }
}

TEST(MatchesTest, Examples) {
  auto p = ParseProperty(
      R"(SPEC AG ((MEMBER != "alice@example.com") & (ROLE = ANY) &
         (PERMISSION = "storage.objects.create") & (RESOURCE = ANY) -> AF decision = Deny))");
  EXPECT_TRUE(Matches(p, Req("bob@example.com", "roles/x",
                             "storage.objects.create", "project_a")));
  EXPECT_FALSE(Matches(p, Req("alice@example.com", "roles/x",
                              "storage.objects.create", "project_a")));
  EXPECT_FALSE(Matches(p, Req("bob@example.com", "roles/x",
                              "storage.objects.get", "project_a")));

  auto c = ParseProperty(
      R"(SPEC AG ((MEMBER = ANY) & (ROLE = ANY) & (PERMISSION = ANY) &
         (RESOURCE = ANY) & (CONDITION.tag != "prod") -> AF decision = Deny))");
  EXPECT_TRUE(Matches(c, Req("a", "r", "s.t.v", "x")));
  EXPECT_TRUE(Matches(c, Req("a", "r", "s.t.v", "x",
                             {{"tag", std::string("dev")}})));
  EXPECT_FALSE(Matches(c, Req("a", "r", "s.t.v", "x",
                              {{"tag", std::string("prod")}})));
}

// A disjunctive clause matches exactly when one of its single-value
// variants does; ANY matches everything; != is the complement of =.
TEST(MatchesTest, ClauseAlgebra) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    auto u = testing::RandomUniverse(rng);
    auto const& members = u.member_domain();
    auto a = members[rng() % members.size()];
    auto b = members[rng() % members.size()];
    auto both = SortPredicate::OneOf(Sort::kMember, {a, b});
    auto eq = SortPredicate::OneOf(Sort::kMember, {a});
    auto neq = SortPredicate::NotEqual(Sort::kMember, a);
    auto any = SortPredicate::Any(Sort::kMember);
    for (auto const& m : members) {
      EXPECT_EQ(both.Matches(m), m == a || m == b);
      EXPECT_NE(eq.Matches(m), neq.Matches(m));
      EXPECT_TRUE(any.Matches(m));
    }
  }
}

}  // namespace
}  // namespace iamcheck
