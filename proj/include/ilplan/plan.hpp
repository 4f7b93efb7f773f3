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

// Plans, timing diagrams and their document format.
//
// A plan lists one fluent entry per non-empty stage sub-interval (part 0 is
// [b_{t-1}, s), part 1 is [s, b_t); a constant stage has a single part-1
// entry over the whole stage) and one entry per executed action copy.
//
// Plan document (JSON):
//
//   {"n": 2, "boundaries": [0, 3, 5],
//    "objective": {"kind": "makespan", "value": 5} | null,
//    "fluents": [{"fluent": "g", "stage": 1, "part": 1, "value": false,
//                 "start": 0, "end": 3}, ...],
//    "actions": [{"skill": "a", "actor": 1, "copy": 1, "start": 0, "end": 5}],
//    "temporal_actions": [{"name": "t", "actor": 1, "copy": 1, "start": 0, "end": 5}],
//    "timeline": {"g": [{"value": false, "start": 0, "end": 4}, ...]}}
//
// "timeline" is informational and ignored when reading.

#ifndef ILPLAN_PLAN_HPP_
#define ILPLAN_PLAN_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ilplan/csp_model.hpp"
#include "ilplan/encoder.hpp"
#include "ilplan/interval.hpp"
#include "ilplan/rational.hpp"
#include "ilplan/theory.hpp"

namespace ilplan {

struct FluentEntry {
  std::string fluent;
  int stage = 1;
  int part = 1;
  bool value = false;
  TimePoint start = 0;
  TimePoint end = 1;

  friend bool operator==(const FluentEntry&, const FluentEntry&) = default;
};

struct ActionEntry {
  std::string skill;
  int actor = 1;
  int copy = 1;
  TimePoint start = 0;
  TimePoint end = 1;

  friend bool operator==(const ActionEntry&, const ActionEntry&) = default;
};

struct TemporalEntry {
  std::string name;
  int actor = 1;
  int copy = 1;
  TimePoint start = 0;
  TimePoint end = 1;

  friend bool operator==(const TemporalEntry&, const TemporalEntry&) = default;
};

struct PlanObjective {
  ObjectiveKind kind = ObjectiveKind::kNone;
  Rational value;

  friend bool operator==(const PlanObjective&, const PlanObjective&) = default;
};

struct Plan {
  int n = 0;
  std::vector<TimePoint> boundaries;  // b_0 .. b_N
  std::optional<PlanObjective> objective;
  std::vector<FluentEntry> fluents;
  std::vector<ActionEntry> actions;
  std::vector<TemporalEntry> temporal_actions;

  TimePoint end() const { return boundaries.empty() ? 0 : boundaries.back(); }

  friend bool operator==(const Plan&, const Plan&) = default;
};

using Segments = std::vector<std::pair<bool, Interval>>;

struct TimingDiagram {
  std::vector<TimePoint> boundaries;
  std::vector<std::pair<std::string, Segments>> fluents;  // maximal runs
  std::vector<ActionEntry> actions;
  std::vector<TemporalEntry> temporal_actions;

  const Segments* segments(std::string_view fluent) const;

  friend bool operator==(const TimingDiagram&, const TimingDiagram&) = default;
};

// Requires an assignment of encode(shape, ...); throws InternalError when a
// (fluent, stage) does not have exactly one flow variable set.
std::pair<Plan, TimingDiagram> decode(const TheoryShape& shape, const Assignment& a);

// Merges a plan's fluent entries into maximal segments, listing fluents in
// first-appearance order. Throws PreconditionError if entries overlap or
// leave gaps in [0, plan.end()).
TimingDiagram diagram_of(const Plan& p);

// Per-tick history over [0, b_N) for the diagram's fluents.
History history_of(const TimingDiagram& d);
// Maximal segments of a history, in atom order.
TimingDiagram diagram_from_history(const History& h, std::vector<TimePoint> boundaries);

std::string plan_to_json(const Plan& p);
// Throws ParseError with a field path.
Plan plan_from_json(std::string_view text);

// Text rendering: one row per fluent and per action, one column per tick.
std::string render_diagram(const TimingDiagram& d);

}  // namespace ilplan

#endif  // ILPLAN_PLAN_HPP_
