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

// Cushing-gadget benchmark domains.
//
// One gadget level has three delays and two resources:
//   a1  equals rho1
//   a2  equals rho2, overlapped-by rho1 (rho1 falls inside a2)
//   a3  contains rho1, contains rho2, raises done
// and every done fluent is a goal, so every level of every copy executes.
//
// Type II stacks `height` levels per copy: level j's a3 also equals rho3
// (level j), and level j+1's a1 is contained in rho3, so level j+1 runs
// inside level j's a3. Type III additionally orders the copies: a1 of the
// top level of copy i overlaps gamma_i (raising it), and a1 of the top level
// of copy i+1 is contained in gamma_i.
//
// Names: a1_c<i>, rho1_c<i>, done_c<i> (Type I); a1_c<i>_l<j>, ...,
// rho3_c<i>_l<j> (Types II/III); gamma_c<i>. Copies and levels count from 1.
//
// Durations (innermost level): a1 = 10, a2 = 7, a3 = 3. An enclosing level
// uses a3 = inner a1 + 4, a2 = a3 + 4, a1 = a2 + 3, the tightest values
// with one-tick resource insets and strict containment.

#ifndef ILPLAN_BENCHGEN_HPP_
#define ILPLAN_BENCHGEN_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "ilplan/domain.hpp"

namespace ilplan {

enum class BenchType { kI, kII, kIII };

std::string_view to_string(BenchType t);
std::optional<BenchType> bench_type_from_string(std::string_view name);

struct GadgetDurations {
  int64_t a1 = 10;
  int64_t a2 = 7;
  int64_t a3 = 3;
};

struct GadgetSpec {
  BenchType type = BenchType::kI;
  int copies = 1;
  std::optional<int> height;  // Types II/III only, in [2, 8]
  GadgetDurations durations;  // innermost level
};

// Throws PreconditionError on an invalid spec. The result passes
// validate_domain.
Domain gen_cushing(const GadgetSpec& spec);

// Durations of level `level` (1 = outermost) in a stack of `height`.
GadgetDurations level_durations(const GadgetDurations& innermost, int level, int height);

}  // namespace ilplan

#endif  // ILPLAN_BENCHGEN_HPP_
