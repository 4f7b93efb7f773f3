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

// Tiny random domains (<= 2 fluents, <= 2 skills) that pass validate_domain.

#ifndef ILPLAN_TESTS_SUPPORT_RANDOM_DOMAINS_HPP_
#define ILPLAN_TESTS_SUPPORT_RANDOM_DOMAINS_HPP_

#include <random>
#include <string>

#include "ilplan/domain.hpp"

namespace ilplan::testing {

inline Domain random_tiny_domain(std::mt19937& rng) {
  auto coin = [&](int percent) { return static_cast<int>(rng() % 100) < percent; };
  for (;;) {
    Domain d;
    const int nf = 1 + static_cast<int>(rng() % 2);
    for (int f = 0; f < nf; ++f) {
      const bool resource = coin(20);
      d.fluents.push_back({std::string(1, static_cast<char>('p' + f)),
                           resource ? FluentRole::kResource : FluentRole::kOrdinary});
    }
    const int ns = 1 + static_cast<int>(rng() % 2);
    for (int s = 0; s < ns; ++s) {
      Skill sk;
      sk.name = std::string(1, static_cast<char>('a' + s));
      if (coin(70)) {
        sk.kind = SkillKind::kDelay;
        sk.duration = 1 + static_cast<int64_t>(rng() % 3);
      } else {
        sk.kind = SkillKind::kTimer;
      }
      sk.cost = 1 + static_cast<int64_t>(rng() % 3);
      for (const auto& f : d.fluents) {
        if (coin(35)) {
          const ConstraintRel rel = f.role == FluentRole::kResource && coin(60)
                                        ? ConstraintRel::kEquals
                                        : static_cast<ConstraintRel>(rng() % 3);
          sk.constraints.push_back({f.name, rel});
        }
        if (f.role == FluentRole::kOrdinary && coin(45)) sk.raises.push_back(f.name);
      }
      d.skills.push_back(std::move(sk));
    }
    if (nf == 2 && coin(30)) d.interference.push_back({"p", "q"});
    if (ns == 2 && coin(15)) d.temporal_actions.push_back({"t", {"a", "b"}});
    for (const auto& f : d.fluents) {
      if (f.role != FluentRole::kOrdinary) continue;
      if (coin(30)) d.init.push_back(f.name);
      if (coin(50)) d.goal.push_back(f.name);
    }
    if (validate_domain(d).empty()) return d;
  }
}

}  // namespace ilplan::testing

#endif  // ILPLAN_TESTS_SUPPORT_RANDOM_DOMAINS_HPP_
