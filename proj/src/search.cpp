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

#include "ilplan/search.hpp"

#include <algorithm>
#include <chrono>

#include "ilplan/error.hpp"
#include "ilplan/theory.hpp"

namespace ilplan {

std::string_view to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::kFound: return "found";
    case SearchOutcome::kExhaustedN: return "exhausted-n";
    case SearchOutcome::kResourceLimit: return "resource-limit";
  }
  return "?";
}

int64_t SearchResult::nodes() const {
  int64_t total = 0;
  for (const auto& p : probes) total += p.stats.nodes;
  return total;
}

SearchResult find_plan(const Domain& d, ObjectiveKind objective, const SearchLimits& limits,
                       const SolverConfig& cfg) {
  if (limits.max_n < 1) throw PreconditionError("max_n must be >= 1");
  const auto diags = validate_domain(d);
  if (!diags.empty()) {
    std::string msg = "invalid domain:";
    for (const auto& g : diags) msg += " [" + g.rule + "] " + g.message + ";";
    throw PreconditionError(msg);
  }
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed_s = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  SearchResult result;
  bool all_smaller_refuted = true;
  int previous = 0;
  for (int n = 1; n <= limits.max_n; n = limits.geometric ? n * 2 : n + 1) {
    const double left = limits.time_budget_s - elapsed_s();
    if (left <= 0) {
      result.outcome = SearchOutcome::kResourceLimit;
      result.reason = "time budget exhausted before N=" + std::to_string(n);
      break;
    }
    const int k = limits.copy_cap ? *limits.copy_cap : std::max(1, n - 1);
    const int h = limits.horizon ? std::max(*limits.horizon, n) : default_horizon(d, n);
    const TheoryShape shape = instantiate(d, n, k, h);
    Encoder enc(shape);
    enc.emit_flow();
    enc.emit_action_structure();
    enc.emit_tc_constraints();
    enc.emit_operational();
    enc.emit_frame_and_interference();
    enc.emit_objective(objective);
    SolverConfig probe_cfg = cfg;
    probe_cfg.time_budget_s = std::min(cfg.time_budget_s, left);
    const SolveResult r = solve(enc.model(), probe_cfg);
    result.probes.push_back({n, r.status, enc.model().num_bools(), enc.model().num_ints(),
                             enc.model().constraints().size(), r.stats});
    if (r.assignment) {
      auto [plan, diagram] = decode(shape, *r.assignment);
      if (objective != ObjectiveKind::kNone && r.objective) {
        const Rational value = objective == ObjectiveKind::kSumOfCosts
                                   ? Rational(*r.objective, enc.cost_scale())
                                   : Rational(*r.objective);
        plan.objective = PlanObjective{objective, value};
      }
      result.outcome = SearchOutcome::kFound;
      result.plan = std::move(plan);
      result.diagram = std::move(diagram);
      result.shape = shape;
      result.assignment = *r.assignment;
      result.n = n;
      result.optimal = r.status == SolveStatus::kSat && (objective == ObjectiveKind::kNone || r.optimal);
      result.minimal_n = all_smaller_refuted && (n == 1 || previous == n - 1);
      if (r.status == SolveStatus::kResourceLimit) result.reason = r.reason;
      break;
    }
    if (r.status == SolveStatus::kResourceLimit) {
      result.outcome = SearchOutcome::kResourceLimit;
      result.reason = r.reason.empty() ? "resource limit at N=" + std::to_string(n) : r.reason;
      break;
    }
    all_smaller_refuted = all_smaller_refuted && (n == 1 || previous == n - 1);
    previous = n;
  }
  result.wall_ms = elapsed_s() * 1000.0;
  return result;
}

}  // namespace ilplan
