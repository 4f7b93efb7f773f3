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

// Instantiated planning theory for a fixed number of stages N, copy cap K
// and horizon H: the interval universe and the variable numbering that the
// encoder, decoder and search share.
//
// Numbering. Boolean and integer variables live in separate id spaces.
//  * Booleans: flow variables first, stage-major (stage, fluent, vw), then
//    one use flag per action copy and per temporal-action copy.
//  * Integers: b_0, then per stage t = 1..N the block [b_t, s_{f,t} for every
//    fluent f], then (l, r, S, E) per action copy and per temporal copy.
// Stage-indexed ids for stages 1..N-1 therefore coincide with those of the
// shape for N-1 stages.

#ifndef ILPLAN_THEORY_HPP_
#define ILPLAN_THEORY_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ilplan/domain.hpp"

namespace ilplan {

// An action is a skill executed by one actor.
struct ActionInst {
  int skill = 0;  // index into Domain::skills
  int actor = 1;
  std::string name;  // "<skill>#<actor>"
};

// A temporal action executed by one actor.
struct TemporalInst {
  int temporal = 0;  // index into Domain::temporal_actions
  int actor = 1;
  std::vector<int> components;  // action indices, in sequence order
  std::string name;
};

// Ids of the variables owned by one copy of an action.
struct CopyVars {
  int use = -1;  // Boolean
  int l = -1;    // first stage spanned, in [1, N+1]
  int r = -1;    // one past the last stage spanned, in [0, N+1]
  int start = -1;
  int end = -1;
};

class TheoryShape {
 public:
  const Domain& domain() const { return *domain_; }
  int n_stages() const { return n_; }
  int copies() const { return k_; }
  int horizon() const { return h_; }

  int num_fluents() const { return static_cast<int>(domain_->fluents.size()); }
  int num_actions() const { return static_cast<int>(actions_.size()); }
  int num_temporal() const { return static_cast<int>(temporal_.size()); }
  const std::vector<ActionInst>& actions() const { return actions_; }
  const std::vector<TemporalInst>& temporal() const { return temporal_; }
  // The temporal instance containing an action, if any.
  std::optional<int> parent_of(int action) const { return parent_[action]; }

  // fluent in [0, F), stage in [1, N], v, w in {0, 1}.
  int flow(int fluent, int stage, int v, int w) const;
  // Split point of a fluent within a stage; integer id.
  int split(int fluent, int stage) const;
  // Stage boundary timestamp b_t, t in [0, N]; integer id.
  int boundary(int t) const;
  // k in [1, K].
  const CopyVars& copy(int action, int k) const;
  const CopyVars& temporal_copy(int temporal, int k) const;

  int num_bools() const { return static_cast<int>(bool_names_.size()); }
  int num_ints() const { return static_cast<int>(int_names_.size()); }
  const std::vector<std::string>& bool_names() const { return bool_names_; }
  const std::vector<std::string>& int_names() const { return int_names_; }
  // Declared bounds of an integer id.
  std::pair<int64_t, int64_t> int_bounds(int id) const { return int_bounds_[id]; }

  int fluent_index(std::string_view name) const;  // throws on unknown

 private:
  friend TheoryShape instantiate(const Domain& d, int n, int k, std::optional<int> h);

  int new_bool(std::string name);
  int new_int(int64_t lo, int64_t hi, std::string name);

  std::shared_ptr<const Domain> domain_;
  int n_ = 0;
  int k_ = 0;
  int h_ = 0;
  std::vector<ActionInst> actions_;
  std::vector<TemporalInst> temporal_;
  std::vector<std::optional<int>> parent_;
  std::vector<std::string> bool_names_;
  std::vector<std::string> int_names_;
  std::vector<std::pair<int64_t, int64_t>> int_bounds_;
  std::vector<int> boundary_ids_;
  std::vector<int> split_ids_;              // (stage - 1) * F + fluent
  std::vector<CopyVars> copy_vars_;         // action * K + (k - 1)
  std::vector<CopyVars> temporal_vars_;     // temporal * K + (k - 1)
};

// N * max(1, largest delay duration).
int default_horizon(const Domain& d, int n);

// Effective copy count for a requested cap: min(cap, max(1, n - 1)).
int effective_copies(int cap, int n);

// Requires validate_domain(d) to be empty, n >= 1 and k >= 1. The copy cap
// is clamped to max(1, n - 1); h defaults to default_horizon(d, n).
TheoryShape instantiate(const Domain& d, int n, int k, std::optional<int> h = std::nullopt);

}  // namespace ilplan

#endif  // ILPLAN_THEORY_HPP_
