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

#include "ilplan/benchgen.hpp"

#include <string>

#include "ilplan/error.hpp"

namespace ilplan {

std::string_view to_string(BenchType t) {
  switch (t) {
    case BenchType::kI: return "I";
    case BenchType::kII: return "II";
    case BenchType::kIII: return "III";
  }
  return "?";
}

std::optional<BenchType> bench_type_from_string(std::string_view name) {
  if (name == "I" || name == "1") return BenchType::kI;
  if (name == "II" || name == "2") return BenchType::kII;
  if (name == "III" || name == "3") return BenchType::kIII;
  return std::nullopt;
}

GadgetDurations level_durations(const GadgetDurations& innermost, int level, int height) {
  GadgetDurations d = innermost;
  for (int j = height - 1; j >= level; --j) {
    GadgetDurations outer;
    outer.a3 = d.a1 + 4;
    outer.a2 = outer.a3 + 4;
    outer.a1 = outer.a2 + 3;
    d = outer;
  }
  return d;
}

namespace {

Skill delay(std::string name, int64_t duration) {
  Skill s;
  s.name = std::move(name);
  s.kind = SkillKind::kDelay;
  s.duration = duration;
  return s;
}

}  // namespace

Domain gen_cushing(const GadgetSpec& spec) {
  if (spec.copies < 1) throw PreconditionError("invalid spec: copies must be >= 1");
  const bool stacked = spec.type != BenchType::kI;
  if (!stacked && spec.height) throw PreconditionError("invalid spec: Type I takes no height");
  if (stacked && (!spec.height || *spec.height < 2 || *spec.height > 8)) {
    throw PreconditionError("invalid spec: height must be in [2, 8]");
  }
  const auto& base = spec.durations;
  if (base.a3 < 1 || base.a2 < base.a3 + 4 || base.a1 < base.a2 + 3) {
    throw PreconditionError("invalid spec: durations need a2 >= a3 + 4 and a1 >= a2 + 3");
  }
  const int height = stacked ? *spec.height : 1;

  Domain d;
  d.actors = 1;
  for (int i = 1; i <= spec.copies; ++i) {
    const std::string copy = "_c" + std::to_string(i);
    for (int j = 1; j <= height; ++j) {
      const std::string sfx = stacked ? copy + "_l" + std::to_string(j) : copy;
      const GadgetDurations dur = level_durations(base, j, height);
      const std::string rho1 = "rho1" + sfx, rho2 = "rho2" + sfx, done = "done" + sfx;
      d.fluents.push_back({rho1, FluentRole::kResource});
      d.fluents.push_back({rho2, FluentRole::kResource});
      d.fluents.push_back({done, FluentRole::kOrdinary});

      Skill a1 = delay("a1" + sfx, dur.a1);
      a1.constraints.push_back({rho1, ConstraintRel::kEquals});
      if (j > 1) {
        a1.constraints.push_back({"rho3" + copy + "_l" + std::to_string(j - 1), ConstraintRel::kContains});
      }
      if (spec.type == BenchType::kIII && j == 1) {
        if (i > 1) a1.constraints.push_back({"gamma_c" + std::to_string(i - 1), ConstraintRel::kContains});
        if (i < spec.copies) {
          const std::string gamma = "gamma_c" + std::to_string(i);
          a1.constraints.push_back({gamma, ConstraintRel::kOverlaps});
          a1.raises.push_back(gamma);
        }
      }
      Skill a2 = delay("a2" + sfx, dur.a2);
      a2.constraints.push_back({rho2, ConstraintRel::kEquals});
      a2.constraints.push_back({rho1, ConstraintRel::kOverlappedBy});
      Skill a3 = delay("a3" + sfx, dur.a3);
      a3.constraints.push_back({rho1, ConstraintRel::kContains});
      a3.constraints.push_back({rho2, ConstraintRel::kContains});
      if (j < height) {
        const std::string rho3 = "rho3" + sfx;
        d.fluents.push_back({rho3, FluentRole::kResource});
        a3.constraints.push_back({rho3, ConstraintRel::kEquals});
      }
      a3.raises.push_back(done);
      d.skills.push_back(std::move(a1));
      d.skills.push_back(std::move(a2));
      d.skills.push_back(std::move(a3));
      d.goal.push_back(done);
    }
    if (spec.type == BenchType::kIII && i < spec.copies) {
      const std::string gamma = "gamma_c" + std::to_string(i);
      d.fluents.push_back({gamma, FluentRole::kOrdinary});
      d.goal.push_back(gamma);
    }
  }
  const auto diags = validate_domain(d);
  if (!diags.empty()) throw InternalError("generated domain is invalid: " + diags.front().message);
  return d;
}

}  // namespace ilplan
