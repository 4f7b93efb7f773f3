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

// Outer loop over the number of stages N. Each probe instantiates, encodes
// and solves a fresh model; the first satisfiable N is decoded, after
// optimizing the objective at that N only.

#ifndef ILPLAN_SEARCH_HPP_
#define ILPLAN_SEARCH_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilplan/domain.hpp"
#include "ilplan/encoder.hpp"
#include "ilplan/plan.hpp"
#include "ilplan/solver.hpp"
#include "ilplan/theory.hpp"

namespace ilplan {

struct SearchLimits {
  int max_n = 20;
  std::optional<int> copy_cap;   // default: N - 1 per probe (at least 1)
  std::optional<int> horizon;    // default: default_horizon(d, N)
  double time_budget_s = 300;    // whole search
  // Probe N = 1, 2, 4, ... instead of every N; the N found may not be minimal.
  bool geometric = false;
};

enum class SearchOutcome { kFound, kExhaustedN, kResourceLimit };

std::string_view to_string(SearchOutcome o);

struct Probe {
  int n = 0;
  SolveStatus status = SolveStatus::kUnsat;
  int bool_vars = 0;
  int int_vars = 0;
  size_t constraints = 0;
  SolveStats stats;
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::kExhaustedN;
  std::optional<Plan> plan;
  std::optional<TimingDiagram> diagram;
  // Model and assignment behind the plan.
  std::optional<TheoryShape> shape;
  std::optional<Assignment> assignment;
  int n = 0;                 // N of the plan
  bool optimal = false;      // objective proven optimal at that N
  bool minimal_n = false;    // every smaller N was refuted
  std::vector<Probe> probes;
  std::string reason;        // set for kResourceLimit
  double wall_ms = 0;

  // Totals over all probes.
  int64_t nodes() const;
};

// Throws PreconditionError listing validate_domain diagnostics for an
// invalid domain, or when max_n < 1.
SearchResult find_plan(const Domain& d, ObjectiveKind objective = ObjectiveKind::kNone,
                       const SearchLimits& limits = {}, const SolverConfig& cfg = {});

}  // namespace ilplan

#endif  // ILPLAN_SEARCH_HPP_
