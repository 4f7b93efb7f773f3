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

// Translation of an instantiated theory into a CspModel.
//
// The model starts with the shape's variables under the same ids; auxiliary
// variables (stage-span indicators, overlap witnesses, makespan) follow.
// Stage t covers [b_{t-1}, b_t). A fluent with flow vw in stage t holds v on
// [b_{t-1}, s) and w on [s, b_t); transitions need b_{t-1} < s < b_t and
// constant stages pin s = b_{t-1}.

#ifndef ILPLAN_ENCODER_HPP_
#define ILPLAN_ENCODER_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "ilplan/csp_model.hpp"
#include "ilplan/rational.hpp"
#include "ilplan/theory.hpp"

namespace ilplan {

enum class ObjectiveKind { kNone, kSumOfCosts, kMakespan };

std::string_view to_string(ObjectiveKind k);
std::optional<ObjectiveKind> objective_kind_from_string(std::string_view name);

class Encoder {
 public:
  explicit Encoder(const TheoryShape& shape);

  // Exactly-one per (fluent, stage), initial and goal rows, conservation
  // between stages and split-point placement.
  void emit_flow();
  // Copy structure, symmetry breaking, timestamp channelling, durations and
  // the boundary chain.
  void emit_action_structure();
  // Stage-span reification and the contains / overlaps / overlapped-by
  // relations.
  void emit_tc_constraints();
  // Temporal-action chaining and resource equality.
  void emit_operational();
  void emit_frame_and_interference();
  void emit_objective(ObjectiveKind kind);

  const CspModel& model() const { return model_; }
  CspModel take_model() { return std::move(model_); }
  const TheoryShape& shape() const { return shape_; }

  // c_{a,k,t}: copy k of action a is used and spans stage t. Declared (with
  // its reification) on first request.
  int span(int action, int k, int t);
  std::optional<int> makespan_var() const { return makespan_; }
  // Objective values are sum-of-costs scaled by this factor.
  int64_t cost_scale() const { return cost_scale_; }

 private:
  void ensure_spans();
  // Literals whose disjunction says the fluent holds at the last tick of
  // stage t (t = 0 refers to the initial state); empty when it cannot.
  std::vector<Literal> true_at_end(int fluent, int t, bool* constant) const;
  // Same for the first tick of stage t (t = N+1 refers to the goal state).
  std::vector<Literal> true_at_start(int fluent, int t, bool* constant) const;
  // Literals of "l == t" / "r == t" for a copy, used as premises.
  std::vector<Literal> at_left(const CopyVars& v, int t) const;
  std::vector<Literal> at_right(const CopyVars& v, int t) const;
  void implies_any(std::vector<Literal> premises, const std::vector<Literal>& options, bool constant);
  void copy_structure(const CopyVars& v, const CopyVars* prev);

  const TheoryShape& shape_;
  CspModel model_;
  std::vector<int> spans_;  // (action * K + k - 1) * N + t - 1
  std::optional<int> makespan_;
  int64_t cost_scale_ = 1;
};

// Runs every emitter in a fixed order.
CspModel encode(const TheoryShape& shape, ObjectiveKind objective = ObjectiveKind::kNone);

// Scale used for sum-of-costs: lcm of the cost denominators.
int64_t cost_scale(const Domain& d);

}  // namespace ilplan

#endif  // ILPLAN_ENCODER_HPP_
