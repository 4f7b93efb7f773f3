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

#include <random>

#include "doctest.h"

#include "ilplan/encoder.hpp"
#include "ilplan/error.hpp"
#include "ilplan/plan.hpp"
#include "ilplan/solver.hpp"
#include "ilplan/theory.hpp"
#include "ilplan/validator.hpp"
#include "pin_plan.hpp"
#include "random_domains.hpp"

using namespace ilplan;

namespace {

Domain one_delay_domain() {
  Domain d;
  d.fluents = {{"g", FluentRole::kOrdinary}};
  Skill a;
  a.name = "a";
  a.duration = 3;
  a.raises = {"g"};
  d.skills = {a};
  d.goal = {"g"};
  return d;
}

// g false on [0, 2), true on [2, 3); action a on [0, 3).
Plan one_delay_plan() {
  Plan p;
  p.n = 1;
  p.boundaries = {0, 3};
  p.fluents = {{"g", 1, 0, false, 0, 2}, {"g", 1, 1, true, 2, 3}};
  p.actions = {{"a", 1, 1, 0, 3}};
  return p;
}

Domain contains_domain() {
  Domain d;
  d.fluents = {{"p", FluentRole::kOrdinary}, {"g", FluentRole::kOrdinary}};
  Skill a;
  a.name = "a";
  a.duration = 2;
  a.constraints = {{"p", ConstraintRel::kContains}};
  a.raises = {"g"};
  Skill b;
  b.name = "b";
  b.duration = 2;
  b.raises = {"p"};
  d.skills = {a, b};
  d.goal = {"g"};
  return d;
}

}  // namespace

TEST_CASE("a well-formed plan validates") {
  const auto r = validate_plan(one_delay_domain(), one_delay_plan());
  CHECK_MESSAGE(r.valid(), report_text(r));
  CHECK(report_text(r) == "valid\n");
}

TEST_CASE("rise without a covering action violates the frame rule") {
  Plan p = one_delay_plan();
  p.actions.clear();
  const auto r = validate_plan(one_delay_domain(), p);
  CHECK(r.has("frame"));
  CHECK_FALSE(frame_violations(one_delay_domain(), p).empty());
}

TEST_CASE("a rise at the action's start tick is not strictly inside") {
  Plan p;
  p.n = 2;
  p.boundaries = {0, 3, 4};
  p.fluents = {{"g", 1, 1, false, 0, 3}, {"g", 2, 1, true, 3, 4}};
  p.actions = {{"a", 1, 1, 0, 3}};
  const auto r = validate_plan(one_delay_domain(), p);
  CHECK(r.has("frame"));
}

TEST_CASE("goal and init conditions") {
  Plan p = one_delay_plan();
  p.fluents = {{"g", 1, 1, false, 0, 3}};
  CHECK(validate_plan(one_delay_domain(), p).has("goal"));
  Plan q = one_delay_plan();
  q.fluents = {{"g", 1, 1, true, 0, 3}};
  CHECK(validate_plan(one_delay_domain(), q).has("init"));
}

TEST_CASE("duration and copies") {
  Plan p = one_delay_plan();
  p.actions = {{"a", 1, 1, 0, 2}};
  CHECK(validate_plan(one_delay_domain(), p).has("duration"));
  Plan q;
  q.n = 1;
  q.boundaries = {0, 5};
  q.fluents = {{"g", 1, 0, false, 0, 2}, {"g", 1, 1, true, 2, 5}};
  q.actions = {{"a", 1, 1, 0, 3}, {"a", 1, 2, 1, 4}};
  CHECK(validate_plan(one_delay_domain(), q).has("copies"));
}

TEST_CASE("unknown symbols are reported") {
  Plan p = one_delay_plan();
  p.actions.push_back({"zz", 1, 1, 0, 1});
  p.fluents.push_back({"nope", 1, 1, true, 0, 3});
  const auto r = validate_plan(one_delay_domain(), p);
  CHECK(r.has("unknown-symbol"));
  CHECK_FALSE(r.valid());
  Plan q = one_delay_plan();
  q.actions[0].actor = 2;
  CHECK(validate_plan(one_delay_domain(), q).has("unknown-symbol"));
}

TEST_CASE("history gaps and overlaps") {
  Plan p = one_delay_plan();
  p.fluents.pop_back();
  CHECK(validate_plan(one_delay_domain(), p).has("history"));
  Plan q = one_delay_plan();
  q.fluents.push_back({"g", 1, 1, true, 1, 3});
  CHECK(validate_plan(one_delay_domain(), q).has("history"));
  Plan r = one_delay_plan();
  r.boundaries = {0, 0};
  CHECK(validate_plan(one_delay_domain(), r).has("structure"));
}

TEST_CASE("contains is strict on both sides") {
  const Domain d = contains_domain();
  // p rises at 1 inside b = [0, 2); a = [2, 4) is contained; g rises at 3.
  Plan p;
  p.n = 1;
  p.boundaries = {0, 5};
  p.fluents = {{"p", 1, 0, false, 0, 1}, {"p", 1, 1, true, 1, 5},
               {"g", 1, 0, false, 0, 3}, {"g", 1, 1, true, 3, 5}};
  p.actions = {{"a", 1, 1, 2, 4}, {"b", 1, 1, 0, 2}};
  const auto ok = validate_plan(d, p);
  CHECK_MESSAGE(ok.valid(), report_text(ok));
  // Moving a one tick earlier makes p's rise touch a's start.
  Plan q = p;
  q.actions[0] = {"a", 1, 1, 1, 3};
  q.fluents[2] = {"g", 1, 0, false, 0, 2};
  q.fluents[3] = {"g", 1, 1, true, 2, 5};
  const auto bad = validate_plan(d, q);
  CHECK(bad.has("contains"));
  CHECK_FALSE(bad.has("frame"));
}

TEST_CASE("interference") {
  Domain d;
  d.fluents = {{"p", FluentRole::kOrdinary}, {"q", FluentRole::kOrdinary}};
  Skill a;
  a.name = "a";
  a.duration = 2;
  a.raises = {"q"};
  d.skills = {a};
  d.interference = {{"p", "q"}};
  d.init = {"p"};
  d.goal = {"q"};
  Plan p;
  p.n = 1;
  p.boundaries = {0, 2};
  p.fluents = {{"p", 1, 0, true, 0, 1}, {"p", 1, 1, false, 1, 2},
               {"q", 1, 0, false, 0, 1}, {"q", 1, 1, true, 1, 2}};
  p.actions = {{"a", 1, 1, 0, 2}};
  CHECK(validate_plan(d, p).valid());
  p.fluents[1] = {"p", 1, 1, true, 1, 2};
  const auto r = validate_plan(d, p);
  CHECK(r.has("interference"));
}

TEST_CASE("report json") {
  Plan p = one_delay_plan();
  p.actions.clear();
  const std::string j = report_json(validate_plan(one_delay_domain(), p));
  CHECK(j.find("\"valid\": false") != std::string::npos);
  CHECK(j.find("\"rule\": \"frame\"") != std::string::npos);
}

TEST_CASE("enumerate_models on documented examples") {
  const auto sat = enumerate_models(one_delay_domain(), 1, 1, 3);
  CHECK(sat.sat);
  REQUIRE(sat.witness);
  CHECK(validate_plan(one_delay_domain(), *sat.witness).valid());

  Domain none = one_delay_domain();
  none.skills[0].raises.clear();
  for (int n = 1; n <= 3; ++n) CHECK_FALSE(enumerate_models(none, n, 1, 6).sat);

  // a may not end at the plan's end (p is not a goal), so a third stage is
  // needed after b = [0, 2), a = [2, 4).
  CHECK_FALSE(enumerate_models(contains_domain(), 2, 1, 6).sat);
  const auto opt = enumerate_models(contains_domain(), 3, 1, 6, ObjectiveKind::kMakespan);
  CHECK(opt.sat);
  REQUIRE(opt.optimum);
  CHECK(*opt.optimum == Rational(4));
}

TEST_CASE("enumeration guard") {
  Domain d = contains_domain();
  CHECK_THROWS_AS(enumerate_models(d, 10, 3, 60), PreconditionError);
}

// Encoder/validator agreement over random tiny domains.
TEST_CASE("encode+solve agrees with enumeration") {
  std::mt19937 rng(20261016);
  int sat_cases = 0, unsat_cases = 0;
  for (int i = 0; i < 600; ++i) {
    const Domain d = testing::random_tiny_domain(rng);
    const int n = 1 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % 2);
    const int h = n + static_cast<int>(rng() % (7 - n));
    const ObjectiveKind obj = i % 2 == 0 ? ObjectiveKind::kMakespan : ObjectiveKind::kSumOfCosts;
    CAPTURE(serialize_domain(d));
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(h);
    const TheoryShape shape = instantiate(d, n, k, h);
    Encoder enc(shape);
    enc.emit_flow();
    enc.emit_action_structure();
    enc.emit_tc_constraints();
    enc.emit_operational();
    enc.emit_frame_and_interference();
    enc.emit_objective(obj);
    const SolveResult res = solve(enc.model());
    REQUIRE(res.status != SolveStatus::kResourceLimit);
    const EnumerationResult oracle = enumerate_models(d, n, k, h, obj);
    REQUIRE((res.status == SolveStatus::kSat) == oracle.sat);
    if (!oracle.sat) {
      ++unsat_cases;
      continue;
    }
    ++sat_cases;
    // The oracle's witness is accepted by the model once pinned.
    CspModel pinned = enc.model();
    pinned.clear_objective();
    testing::pin_plan(pinned, shape, *oracle.witness);
    CHECK(solve(pinned).status == SolveStatus::kSat);
    const auto [plan, diagram] = decode(shape, *res.assignment);
    const auto report = validate_plan(d, plan);
    CHECK_MESSAGE(report.valid(), report_text(report));
    const Rational value = obj == ObjectiveKind::kSumOfCosts
                               ? Rational(*res.objective, enc.cost_scale())
                               : Rational(*res.objective);
    CHECK(value == *oracle.optimum);
    CHECK(plan_objective(d, plan, obj) == value);
  }
  MESSAGE("sat " << sat_cases << " unsat " << unsat_cases);
  CHECK(sat_cases > 20);
  CHECK(unsat_cases > 20);
}
