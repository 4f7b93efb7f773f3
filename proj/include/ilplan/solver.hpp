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

// Backtracking solver over CspModel (bounds propagation, chronological
// backtracking, branch-and-bound for the objective) and an exhaustive
// enumeration oracle for small models.

#ifndef ILPLAN_SOLVER_HPP_
#define ILPLAN_SOLVER_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "ilplan/csp_model.hpp"

namespace ilplan {

enum class BranchOrder { kDeclarationOrder, kActionsFirst };

struct SolverConfig {
  double time_budget_s = 300.0;
  int64_t node_budget = std::numeric_limits<int64_t>::max();
  BranchOrder order = BranchOrder::kActionsFirst;
  uint64_t seed = 0;
};

enum class SolveStatus { kSat, kUnsat, kResourceLimit };

std::string_view to_string(SolveStatus s);

struct SolveStats {
  int64_t nodes = 0;
  int64_t failures = 0;
  int64_t solutions = 0;
  int64_t propagations = 0;
  double wall_ms = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kUnsat;
  // Set for kSat, and for kResourceLimit when an incumbent exists.
  std::optional<Assignment> assignment;
  std::optional<int64_t> objective;
  // kSat with an objective: the optimum was proven.
  bool optimal = false;
  std::string reason;
  SolveStats stats;
};

// Throws PreconditionError on a malformed model. Every returned assignment
// has passed check_assignment.
SolveResult solve(const CspModel& m, const SolverConfig& cfg = {});

// Exhaustive enumeration in declaration order; returns the first optimal
// assignment. Throws PreconditionError if the product of domain sizes
// exceeds kBruteForceGuard.
inline constexpr uint64_t kBruteForceGuard = uint64_t{1} << 24;
SolveResult brute_force_solve(const CspModel& m);

// Product of domain sizes, saturating at UINT64_MAX.
uint64_t search_space_size(const CspModel& m);

}  // namespace ilplan

#endif  // ILPLAN_SOLVER_HPP_
