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
#include "random_domains.hpp"

using namespace ilplan;

namespace {

Domain one_fluent(bool goal) {
  Domain d;
  d.fluents = {{"phi", FluentRole::kOrdinary}};
  Skill s;
  s.name = "a";
  s.duration = 2;
  s.raises = {"phi"};
  d.skills = {s};
  if (goal) d.goal = {"phi"};
  return d;
}

// Assignment of encode(shape) with every flow bit set from `flows`
// (stage-major, "vw" strings) and the remaining variables from a solve.
Assignment solved_with(const TheoryShape& shape, std::vector<std::string> flows,
                       std::vector<std::pair<int, int64_t>> ints = {}) {
  CspModel m = encode(shape);
  for (int t = 1; t <= shape.n_stages(); ++t) {
    const std::string& vw = flows[t - 1];
    const int f = shape.flow(0, t, vw[0] - '0', vw[1] - '0');
    m.add_clause({Literal::pos(f)});
  }
  for (auto [var, value] : ints) m.add_linear({Term{1, int_var(var)}}, Cmp::kEq, value);
  const SolveResult r = solve(m);
  REQUIRE(r.status == SolveStatus::kSat);
  return *r.assignment;
}

}  // namespace

TEST_CASE("constant false fluent decodes to one segment") {
  const auto shape = instantiate(one_fluent(false), 2, 1, 4);
  const Assignment a = solved_with(shape, {"00", "00"});
  const auto [plan, diagram] = decode(shape, a);
  REQUIRE(plan.fluents.size() == 2);
  CHECK(plan.fluents[0].part == 1);
  const Segments* seg = diagram.segments("phi");
  REQUIRE(seg != nullptr);
  REQUIRE(seg->size() == 1);
  CHECK_FALSE((*seg)[0].first);
  CHECK((*seg)[0].second == Interval(0, plan.boundaries[2]));
}

TEST_CASE("a rise in stage 2 splits the history at s") {
  const auto shape = instantiate(one_fluent(true), 2, 1, 6);
  const Assignment a = solved_with(shape, {"00", "01"});
  const auto [plan, diagram] = decode(shape, a);
  const TimePoint s = a.ints[shape.split(0, 2)];
  CHECK(plan.boundaries[1] < s);
  CHECK(s < plan.boundaries[2]);
  const Segments* seg = diagram.segments("phi");
  REQUIRE(seg->size() == 2);
  CHECK((*seg)[0] == std::pair{false, Interval(0, s)});
  CHECK((*seg)[1] == std::pair{true, Interval(s, plan.boundaries[2])});
  REQUIRE(plan.actions.size() == 1);
  CHECK(plan.actions[0].skill == "a");
  CHECK(plan.actions[0].end - plan.actions[0].start == 2);
}

TEST_CASE("decode traps broken flow assignments") {
  const auto shape = instantiate(one_fluent(false), 1, 1, 2);
  Assignment a = solved_with(shape, {"00"});
  a.bools[shape.flow(0, 1, 1, 1)] = 1;
  CHECK_THROWS_AS(decode(shape, a), InternalError);
  a.bools[shape.flow(0, 1, 1, 1)] = 0;
  a.bools[shape.flow(0, 1, 0, 0)] = 0;
  CHECK_THROWS_AS(decode(shape, a), InternalError);
}

TEST_CASE("diagram_of rejects gaps and overlaps") {
  Plan p;
  p.n = 1;
  p.boundaries = {0, 4};
  p.fluents = {{"x", 1, 0, false, 0, 2}};
  CHECK_THROWS_AS(diagram_of(p), PreconditionError);
  p.fluents.push_back({"x", 1, 1, true, 1, 4});
  CHECK_THROWS_AS(diagram_of(p), PreconditionError);
  p.fluents.back().start = 2;
  const TimingDiagram d = diagram_of(p);
  REQUIRE(d.segments("x") != nullptr);
  CHECK(d.segments("x")->size() == 2);
  CHECK(d.segments("y") == nullptr);
}

TEST_CASE("plan json round trip and strict reading") {
  const auto shape = instantiate(one_fluent(true), 2, 1, 6);
  auto [plan, _] = decode(shape, solved_with(shape, {"00", "01"}));
  plan.objective = PlanObjective{ObjectiveKind::kSumOfCosts, Rational(3, 2)};
  const std::string text = plan_to_json(plan);
  CHECK(text.find("\"timeline\"") != std::string::npos);
  CHECK(plan_from_json(text) == plan);
  CHECK(plan_to_json(plan_from_json(text)) == text);

  CHECK_THROWS_AS(plan_from_json("{"), ParseError);
  CHECK_THROWS_AS(plan_from_json(R"({"n": 1})"), ParseError);
  try {
    plan_from_json(R"({"n": 1, "boundaries": [0, 2], "objective": null, "fluents": [
      {"fluent": "x", "stage": 1, "part": 1, "value": "yes", "start": 0, "end": 2}],
      "actions": [], "temporal_actions": []})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/fluents/0/value") != std::string::npos);
  }
}

TEST_CASE("history and segments are mutually idempotent") {
  std::mt19937 rng(5);
  int decoded = 0;
  for (int i = 0; i < 200; ++i) {
    const Domain d = testing::random_tiny_domain(rng);
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto shape = instantiate(d, n, 2, n + 3);
    const SolveResult r = solve(encode(shape));
    if (r.status != SolveStatus::kSat) continue;
    ++decoded;
    const auto [plan, diagram] = decode(shape, *r.assignment);
    TimingDiagram again = diagram_from_history(history_of(diagram), diagram.boundaries);
    again.actions = diagram.actions;
    again.temporal_actions = diagram.temporal_actions;
    CHECK(again == diagram);
    for (const auto& [name, segs] : diagram.fluents) {
      for (size_t j = 0; j + 1 < segs.size(); ++j) {
        CHECK(segs[j].first != segs[j + 1].first);
        CHECK(holds(AllenRelation::kMeets, segs[j].second, segs[j + 1].second));
      }
      CHECK(segs.front().second.l() == 0);
      CHECK(segs.back().second.r() == plan.end());
    }
    CHECK(plan_from_json(plan_to_json(plan)) == plan);
  }
  CHECK(decoded > 50);
}

TEST_CASE("render_diagram") {
  Plan p;
  p.n = 2;
  p.boundaries = {0, 2, 4};
  p.fluents = {{"x", 1, 1, false, 0, 2}, {"x", 2, 0, false, 2, 3}, {"x", 2, 1, true, 3, 4}};
  p.actions = {{"a", 1, 1, 1, 4}};
  const std::string text = render_diagram(diagram_of(p));
  CHECK(text.find("..#") != std::string::npos);
  CHECK(text.find(" ===") != std::string::npos);
}
