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

// Planning domains: fluents, skills (precondition timers and effect delays),
// interference between fluents, actors, temporal actions and the
// initial/terminal conditions.
//
// Document format (JSON, strict by default):
//
//   {
//     "fluents": ["p", {"name": "rho", "role": "resource"}],
//     "actors": 1,
//     "skills": [{"name": "a", "kind": "delay", "duration": 3, "cost": 1,
//                 "actors": [1], "raises": ["p"],
//                 "constraints": [{"fluent": "rho", "rel": "equals"}]}],
//     "interference": [["p", "q"]],
//     "temporal_actions": [{"name": "t", "skills": ["a", "b"]}],
//     "init": [], "goal": ["p"]
//   }
//
// Constraint relations, read with the skill's action interval A and the
// fluent's true segment F:
//   "contains"      F strictly contains A
//   "overlaps"      A overlaps F (F becomes true once inside A, outlasts it)
//   "overlapped-by" F overlaps A (F already true at the start, ends inside A)
//   "equals"        resource F is true exactly on A inset by one tick

#ifndef ILPLAN_DOMAIN_HPP_
#define ILPLAN_DOMAIN_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ilplan/rational.hpp"

namespace ilplan {

enum class FluentRole { kOrdinary, kResource };

struct Fluent {
  std::string name;
  FluentRole role = FluentRole::kOrdinary;

  friend bool operator==(const Fluent&, const Fluent&) = default;
};

enum class SkillKind { kTimer, kDelay };

enum class ConstraintRel { kContains, kOverlaps, kOverlappedBy, kEquals };

std::string_view to_string(ConstraintRel rel);
std::optional<ConstraintRel> constraint_rel_from_string(std::string_view name);

struct ConstraintSpec {
  std::string fluent;
  ConstraintRel rel = ConstraintRel::kContains;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

struct Skill {
  std::string name;
  SkillKind kind = SkillKind::kDelay;
  std::optional<int64_t> duration;  // delays only
  Rational cost = 1;
  std::vector<int> actors;  // empty: every actor
  std::vector<ConstraintSpec> constraints;
  std::vector<std::string> raises;

  bool runs_on(int actor) const;
  bool has_equals() const;

  friend bool operator==(const Skill&, const Skill&) = default;
};

struct TemporalAction {
  std::string name;
  std::vector<std::string> skills;

  friend bool operator==(const TemporalAction&, const TemporalAction&) = default;
};

struct Domain {
  std::vector<Fluent> fluents;
  int actors = 1;
  std::vector<Skill> skills;
  std::vector<std::pair<std::string, std::string>> interference;
  std::vector<TemporalAction> temporal_actions;
  std::vector<std::string> init;
  std::vector<std::string> goal;

  const Fluent* find_fluent(std::string_view name) const;
  const Skill* find_skill(std::string_view name) const;
  const Skill& skill(std::string_view name) const;  // throws on unknown
  bool in_init(std::string_view fluent) const;
  bool in_goal(std::string_view fluent) const;
  bool interferes(std::string_view a, std::string_view b) const;
  // The temporal action a skill belongs to, if any.
  const TemporalAction* parent_of(std::string_view skill) const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

Domain parse_domain(std::string_view text, bool strict = true);
std::string serialize_domain(const Domain& d);

struct Diagnostic {
  std::string rule;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Empty iff the domain satisfies every static requirement.
std::vector<Diagnostic> validate_domain(const Domain& d);

// Fluents a skill may falsify: interference partners of what it raises.
std::set<std::string> lowers(const Domain& d, std::string_view skill);

// Raise/lower relations used by frame reasoning. Resource-equality targets
// count as both raised and lowered.
std::set<std::string> effective_raises(const Domain& d, std::string_view skill);
std::set<std::string> effective_lowers(const Domain& d, std::string_view skill);

}  // namespace ilplan

#endif  // ILPLAN_DOMAIN_HPP_
