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

// Semantic plan checking on the per-tick history induced by a plan, and a
// bounded enumeration of candidate plans used as an oracle for the encoder.
//
// Conventions: h(t) is the truth of a fluent at tick t in [0, b_N). Outside
// that range the extended history reads the initial state before 0 and the
// goal state at b_N (closed world on both sides). An action occupies
// A = [S, E).
//
//   init          h(0) holds iff the fluent is initial
//   goal          every goal fluent holds at b_N - 1
//   frame         a change at tick p (h(p) != h(p-1)) needs an action of a
//                 skill raising (lowering) the fluent with S < p < E
//   contains      h holds on [S - 1, E] (extended history)
//   overlaps      exactly one rise in (S, E); h(E - 1) and h(E) hold
//   overlapped-by h(S - 1) holds; exactly one fall in (S, E); h(E - 1) fails
//   equals        h(S) fails, h holds on [S + 1, E - 1) (non-empty), h(E - 1)
//                 fails
//   interference  interfering fluents are never true at the same tick
//   duration      delays last exactly their duration, timers at least 1
//   copies        entries of the same skill and actor are pairwise disjoint;
//                 so are those of the same temporal action and actor
//   temporal      a temporal entry's components (same actor and copy) meet
//                 in sequence and cover it; component entries need a parent

#ifndef ILPLAN_VALIDATOR_HPP_
#define ILPLAN_VALIDATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ilplan/domain.hpp"
#include "ilplan/encoder.hpp"
#include "ilplan/plan.hpp"

namespace ilplan {

struct Violation {
  std::string rule;
  std::vector<std::string> atoms;
  std::string explanation;
};

struct ValidationReport {
  bool valid() const { return violations.empty(); }
  std::vector<Violation> violations;

  bool has(std::string_view rule) const;
};

ValidationReport validate_plan(const Domain& d, const Plan& p);

std::string report_text(const ValidationReport& r);
std::string report_json(const ValidationReport& r);

// Frame rule only: changes without a covering justifier.
std::vector<Violation> frame_violations(const Domain& d, const Plan& p);

struct EnumerationResult {
  bool sat = false;
  std::optional<Plan> witness;  // optimal one when an objective is given
  std::optional<Rational> optimum;
  uint64_t candidates = 0;
};

inline constexpr uint64_t kEnumerationGuard = uint64_t{1} << 22;

// Enumerates the plans of the bounded universe for (n, k, h): increasing
// boundaries in [0, h], per-fluent histories with at most one change inside
// each stage (never on a boundary), and up to min(k, max(1, n-1)) ordered,
// disjoint copies per action aligned to stage boundaries. Candidates are
// filtered by validate_plan. With an objective the best value is returned.
// Throws PreconditionError once more than kEnumerationGuard candidates are
// examined.
EnumerationResult enumerate_models(const Domain& d, int n, int k, int h,
                                   ObjectiveKind objective = ObjectiveKind::kNone);

// Objective value of a plan: latest action end (0 without actions) or the
// sum of action costs.
Rational plan_objective(const Domain& d, const Plan& p, ObjectiveKind kind);

}  // namespace ilplan

#endif  // ILPLAN_VALIDATOR_HPP_
