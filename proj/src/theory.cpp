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

#include "ilplan/theory.hpp"

#include <algorithm>

#include "ilplan/error.hpp"

namespace ilplan {

int TheoryShape::flow(int fluent, int stage, int v, int w) const {
  if (fluent < 0 || fluent >= num_fluents() || stage < 1 || stage > n_ || (v | w) > 1 || v < 0 ||
      w < 0) {
    throw PreconditionError("flow index out of range");
  }
  return ((stage - 1) * num_fluents() + fluent) * 4 + v * 2 + w;
}

int TheoryShape::split(int fluent, int stage) const {
  if (fluent < 0 || fluent >= num_fluents() || stage < 1 || stage > n_) {
    throw PreconditionError("split index out of range");
  }
  return split_ids_[(stage - 1) * num_fluents() + fluent];
}

int TheoryShape::boundary(int t) const {
  if (t < 0 || t > n_) throw PreconditionError("boundary index out of range");
  return boundary_ids_[t];
}

const CopyVars& TheoryShape::copy(int action, int k) const {
  if (action < 0 || action >= num_actions() || k < 1 || k > k_) {
    throw PreconditionError("copy index out of range");
  }
  return copy_vars_[action * k_ + (k - 1)];
}

const CopyVars& TheoryShape::temporal_copy(int temporal, int k) const {
  if (temporal < 0 || temporal >= num_temporal() || k < 1 || k > k_) {
    throw PreconditionError("temporal copy index out of range");
  }
  return temporal_vars_[temporal * k_ + (k - 1)];
}

int TheoryShape::fluent_index(std::string_view name) const {
  const auto& fl = domain_->fluents;
  for (size_t i = 0; i < fl.size(); ++i) {
    if (fl[i].name == name) return static_cast<int>(i);
  }
  throw PreconditionError("unknown fluent '" + std::string(name) + "'");
}

int TheoryShape::new_bool(std::string name) {
  bool_names_.push_back(std::move(name));
  return num_bools() - 1;
}

int TheoryShape::new_int(int64_t lo, int64_t hi, std::string name) {
  int_names_.push_back(std::move(name));
  int_bounds_.emplace_back(lo, hi);
  return num_ints() - 1;
}

int default_horizon(const Domain& d, int n) {
  int64_t widest = 1;
  for (const auto& s : d.skills) {
    if (s.kind == SkillKind::kDelay && s.duration) widest = std::max(widest, *s.duration);
  }
  return static_cast<int>(n * widest);
}

int effective_copies(int cap, int n) { return std::min(cap, std::max(1, n - 1)); }

TheoryShape instantiate(const Domain& d, int n, int k, std::optional<int> h) {
  if (n < 1) throw PreconditionError("number of stages must be at least 1");
  if (k < 1) throw PreconditionError("copy cap must be at least 1");
  if (auto diags = validate_domain(d); !diags.empty()) {
    throw PreconditionError("invalid domain: " + diags.front().message);
  }
  const int horizon = h.value_or(default_horizon(d, n));
  if (horizon < n) throw PreconditionError("horizon too small");

  TheoryShape s;
  s.domain_ = std::make_shared<const Domain>(d);
  s.n_ = n;
  s.k_ = effective_copies(k, n);
  s.h_ = horizon;
  const int nf = s.num_fluents();

  for (size_t i = 0; i < d.skills.size(); ++i) {
    for (int a = 1; a <= d.actors; ++a) {
      if (!d.skills[i].runs_on(a)) continue;
      s.actions_.push_back({static_cast<int>(i), a, d.skills[i].name + "#" + std::to_string(a)});
    }
  }
  s.parent_.assign(s.actions_.size(), std::nullopt);
  for (size_t i = 0; i < d.temporal_actions.size(); ++i) {
    const auto& ta = d.temporal_actions[i];
    for (int a = 1; a <= d.actors; ++a) {
      TemporalInst inst{static_cast<int>(i), a, {}, ta.name + "#" + std::to_string(a)};
      for (const auto& skill : ta.skills) {
        auto it = std::find_if(s.actions_.begin(), s.actions_.end(), [&](const ActionInst& x) {
          return d.skills[x.skill].name == skill && x.actor == a;
        });
        if (it == s.actions_.end()) {
          inst.components.clear();
          break;
        }
        inst.components.push_back(static_cast<int>(it - s.actions_.begin()));
      }
      // An actor that cannot run every component has no instance.
      if (inst.components.empty()) continue;
      for (int c : inst.components) s.parent_[c] = static_cast<int>(s.temporal_.size());
      s.temporal_.push_back(std::move(inst));
    }
  }

  static constexpr const char* kVw[4] = {"00", "01", "10", "11"};
  for (int t = 1; t <= n; ++t) {
    for (int f = 0; f < nf; ++f) {
      for (int vw = 0; vw < 4; ++vw) {
        s.new_bool("flow:" + d.fluents[f].name + ":" + std::to_string(t) + ":" + kVw[vw]);
      }
    }
  }
  s.boundary_ids_.push_back(s.new_int(0, 0, "b:0"));
  for (int t = 1; t <= n; ++t) {
    s.boundary_ids_.push_back(s.new_int(t, horizon - (n - t), "b:" + std::to_string(t)));
    for (int f = 0; f < nf; ++f) {
      s.split_ids_.push_back(s.new_int(t - 1, horizon - (n - t),
                                       "split:" + d.fluents[f].name + ":" + std::to_string(t)));
    }
  }
  auto make_copies = [&](const std::string& prefix, const std::string& name,
                         std::vector<CopyVars>& out) {
    for (int c = 1; c <= s.k_; ++c) {
      const std::string tag = name + ":" + std::to_string(c);
      CopyVars v;
      v.use = s.new_bool(prefix + "use:" + tag);
      v.l = s.new_int(1, n + 1, prefix + "l:" + tag);
      v.r = s.new_int(0, n + 1, prefix + "r:" + tag);
      v.start = s.new_int(0, horizon, prefix + "S:" + tag);
      v.end = s.new_int(0, horizon, prefix + "E:" + tag);
      out.push_back(v);
    }
  };
  for (const auto& a : s.actions_) make_copies("", a.name, s.copy_vars_);
  for (const auto& t : s.temporal_) make_copies("ta-", t.name, s.temporal_vars_);
  return s;
}

}  // namespace ilplan
