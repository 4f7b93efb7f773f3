// Copyright 2026 The ilplan Authors
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

#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "ilplan/benchgen.hpp"
#include "ilplan/error.hpp"

using namespace ilplan;

namespace {

const Skill& skill(const Domain& d, const std::string& name) {
  const Skill* s = d.find_skill(name);
  REQUIRE(s != nullptr);
  return *s;
}

bool has_constraint(const Skill& s, const std::string& fluent, ConstraintRel rel) {
  return std::any_of(s.constraints.begin(), s.constraints.end(),
                     [&](const auto& c) { return c.fluent == fluent && c.rel == rel; });
}

size_t count_role(const Domain& d, FluentRole role) {
  return static_cast<size_t>(std::count_if(d.fluents.begin(), d.fluents.end(),
                                           [&](const auto& f) { return f.role == role; }));
}

}  // namespace

TEST_CASE("type I sizes and wiring") {
  for (int m = 1; m <= 5; ++m) {
    const Domain d = gen_cushing({BenchType::kI, m, std::nullopt, {}});
    CHECK(validate_domain(d).empty());
    CHECK(d.skills.size() == static_cast<size_t>(3 * m));
    CHECK(count_role(d, FluentRole::kResource) == static_cast<size_t>(2 * m));
    CHECK(d.goal.size() == static_cast<size_t>(m));
    CHECK(d.init.empty());
  }
  const Domain d = gen_cushing({BenchType::kI, 2, std::nullopt, {}});
  const Skill& a1 = skill(d, "a1_c2");
  const Skill& a2 = skill(d, "a2_c2");
  const Skill& a3 = skill(d, "a3_c2");
  CHECK(*a1.duration == 10);
  CHECK(*a2.duration == 7);
  CHECK(*a3.duration == 3);
  CHECK(has_constraint(a1, "rho1_c2", ConstraintRel::kEquals));
  CHECK(has_constraint(a2, "rho2_c2", ConstraintRel::kEquals));
  CHECK(has_constraint(a2, "rho1_c2", ConstraintRel::kOverlappedBy));
  CHECK(has_constraint(a3, "rho1_c2", ConstraintRel::kContains));
  CHECK(has_constraint(a3, "rho2_c2", ConstraintRel::kContains));
  CHECK(a3.raises == std::vector<std::string>{"done_c2"});
}

TEST_CASE("type II links levels through rho3") {
  const Domain d = gen_cushing({BenchType::kII, 2, 3, {}});
  CHECK(validate_domain(d).empty());
  CHECK(d.skills.size() == 2u * 3u * 3u);
  // Two rho per level plus one rho3 per non-innermost level.
  CHECK(count_role(d, FluentRole::kResource) == 2u * (3u * 2u + 2u));
  CHECK(d.goal.size() == 6u);
  CHECK(has_constraint(skill(d, "a3_c1_l1"), "rho3_c1_l1", ConstraintRel::kEquals));
  CHECK(has_constraint(skill(d, "a1_c1_l2"), "rho3_c1_l1", ConstraintRel::kContains));
  CHECK(has_constraint(skill(d, "a1_c2_l3"), "rho3_c2_l2", ConstraintRel::kContains));
  CHECK(d.find_fluent("rho3_c1_l3") == nullptr);
  CHECK(skill(d, "a1_c1_l1").constraints.size() == 1u);
}

TEST_CASE("level durations nest strictly") {
  for (int h = 2; h <= 8; ++h) {
    for (int j = 1; j < h; ++j) {
      const GadgetDurations outer = level_durations({}, j, h);
      const GadgetDurations inner = level_durations({}, j + 1, h);
      // The inner a1 fits strictly inside the rho3 segment of outer a3.
      CHECK(outer.a3 >= inner.a1 + 4);
      CHECK(outer.a2 >= outer.a3 + 4);
      CHECK(outer.a1 >= outer.a2 + 3);
    }
    const GadgetDurations innermost = level_durations({}, h, h);
    CHECK(innermost.a1 == 10);
  }
}

TEST_CASE("type III orders copies through gamma") {
  const Domain d = gen_cushing({BenchType::kIII, 3, 2, {}});
  CHECK(validate_domain(d).empty());
  const std::set<std::string> goal(d.goal.begin(), d.goal.end());
  CHECK(goal.count("gamma_c1") == 1);
  CHECK(goal.count("gamma_c2") == 1);
  CHECK(goal.count("gamma_c3") == 0);
  CHECK(has_constraint(skill(d, "a1_c1_l1"), "gamma_c1", ConstraintRel::kOverlaps));
  CHECK(has_constraint(skill(d, "a1_c2_l1"), "gamma_c1", ConstraintRel::kContains));
  CHECK(has_constraint(skill(d, "a1_c2_l1"), "gamma_c2", ConstraintRel::kOverlaps));
  CHECK(has_constraint(skill(d, "a1_c3_l1"), "gamma_c2", ConstraintRel::kContains));
  CHECK(skill(d, "a1_c1_l1").raises == std::vector<std::string>{"gamma_c1"});
  CHECK(skill(d, "a1_c3_l1").raises.empty());
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(gen_cushing({BenchType::kI, 0, std::nullopt, {}}), PreconditionError);
  CHECK_THROWS_AS(gen_cushing({BenchType::kI, 1, 2, {}}), PreconditionError);
  CHECK_THROWS_AS(gen_cushing({BenchType::kII, 1, std::nullopt, {}}), PreconditionError);
  CHECK_THROWS_AS(gen_cushing({BenchType::kII, 1, 1, {}}), PreconditionError);
  CHECK_THROWS_AS(gen_cushing({BenchType::kIII, 1, 9, {}}), PreconditionError);
  CHECK_THROWS_AS(gen_cushing({BenchType::kI, 1, std::nullopt, {10, 6, 3}}), PreconditionError);
  CHECK_THROWS_AS(gen_cushing({BenchType::kI, 1, std::nullopt, {9, 7, 3}}), PreconditionError);
  CHECK_NOTHROW(gen_cushing({BenchType::kI, 1, std::nullopt, {20, 9, 2}}));
}

TEST_CASE("type names") {
  for (BenchType t : {BenchType::kI, BenchType::kII, BenchType::kIII}) {
    CHECK(bench_type_from_string(to_string(t)) == t);
  }
  CHECK(bench_type_from_string("2") == BenchType::kII);
  CHECK_FALSE(bench_type_from_string("IV"));
}
