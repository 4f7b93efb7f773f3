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

#include "ilplan/encoder.hpp"

#include <numeric>

#include "ilplan/error.hpp"

namespace ilplan {

std::string_view to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::kNone: return "none";
    case ObjectiveKind::kSumOfCosts: return "costs";
    case ObjectiveKind::kMakespan: return "makespan";
  }
  return "?";
}

std::optional<ObjectiveKind> objective_kind_from_string(std::string_view name) {
  if (name == "none") return ObjectiveKind::kNone;
  if (name == "costs") return ObjectiveKind::kSumOfCosts;
  if (name == "makespan") return ObjectiveKind::kMakespan;
  return std::nullopt;
}

int64_t cost_scale(const Domain& d) {
  int64_t scale = 1;
  for (const auto& s : d.skills) scale = std::lcm(scale, s.cost.den());
  return scale;
}

namespace {

Literal pos(int b) { return Literal::pos(b); }
Literal neg(int b) { return Literal::neg(b); }
Term bterm(int64_t c, int b) { return {c, bool_var(b)}; }
Term iterm(int64_t c, int x) { return {c, int_var(x)}; }

}  // namespace

Encoder::Encoder(const TheoryShape& shape) : shape_(shape) {
  for (const auto& name : shape.bool_names()) model_.add_bool(name);
  for (int i = 0; i < shape.num_ints(); ++i) {
    const auto [lo, hi] = shape.int_bounds(i);
    model_.add_int(lo, hi, shape.int_names()[i]);
  }
  std::vector<VarRef> order;
  auto copies = [&](const CopyVars& v) {
    order.push_back(bool_var(v.use));
    order.push_back(int_var(v.l));
    order.push_back(int_var(v.r));
  };
  for (int a = 0; a < shape.num_actions(); ++a) {
    for (int k = 1; k <= shape.copies(); ++k) copies(shape.copy(a, k));
  }
  for (int a = 0; a < shape.num_temporal(); ++a) {
    for (int k = 1; k <= shape.copies(); ++k) copies(shape.temporal_copy(a, k));
  }
  for (int t = 1; t <= shape.n_stages(); ++t) {
    for (int f = 0; f < shape.num_fluents(); ++f) {
      for (int vw = 0; vw < 4; ++vw) order.push_back(bool_var(shape.flow(f, t, vw >> 1, vw & 1)));
    }
  }
  model_.set_branching(std::move(order));
}

std::vector<Literal> Encoder::at_left(const CopyVars& v, int t) const {
  return {pos(v.use), Literal::ge(v.l, t), Literal::le(v.l, t)};
}

std::vector<Literal> Encoder::at_right(const CopyVars& v, int t) const {
  return {pos(v.use), Literal::ge(v.r, t), Literal::le(v.r, t)};
}

std::vector<Literal> Encoder::true_at_end(int f, int t, bool* constant) const {
  if (t == 0) {
    *constant = shape_.domain().in_init(shape_.domain().fluents[f].name);
    return {};
  }
  return {pos(shape_.flow(f, t, 0, 1)), pos(shape_.flow(f, t, 1, 1))};
}

std::vector<Literal> Encoder::true_at_start(int f, int t, bool* constant) const {
  if (t == shape_.n_stages() + 1) {
    *constant = shape_.domain().in_goal(shape_.domain().fluents[f].name);
    return {};
  }
  return {pos(shape_.flow(f, t, 1, 0)), pos(shape_.flow(f, t, 1, 1))};
}

void Encoder::implies_any(std::vector<Literal> premises, const std::vector<Literal>& options,
                          bool constant) {
  if (options.empty()) {
    if (constant) return;
    std::vector<Literal> clause;
    for (const auto& p : premises) clause.push_back(p.negated());
    model_.add_clause(std::move(clause));
    return;
  }
  std::vector<Literal> clause;
  for (const auto& p : premises) clause.push_back(p.negated());
  clause.insert(clause.end(), options.begin(), options.end());
  model_.add_clause(std::move(clause));
}

int Encoder::span(int action, int k, int t) {
  ensure_spans();
  const int n = shape_.n_stages();
  return spans_[(action * shape_.copies() + k - 1) * n + t - 1];
}

void Encoder::ensure_spans() {
  if (!spans_.empty() || shape_.num_actions() == 0) return;
  const int n = shape_.n_stages();
  for (int a = 0; a < shape_.num_actions(); ++a) {
    for (int k = 1; k <= shape_.copies(); ++k) {
      const CopyVars& v = shape_.copy(a, k);
      for (int t = 1; t <= n; ++t) {
        const int c = model_.add_bool("span:" + shape_.actions()[a].name + ":" + std::to_string(k) +
                                      ":" + std::to_string(t));
        model_.add_iff(pos(c), {pos(v.use), Literal::le(v.l, t), Literal::ge(v.r, t + 1)});
        spans_.push_back(c);
      }
    }
  }
}

void Encoder::emit_flow() {
  const Domain& d = shape_.domain();
  const int n = shape_.n_stages();
  for (int f = 0; f < shape_.num_fluents(); ++f) {
    auto fl = [&](int t, int v, int w) { return shape_.flow(f, t, v, w); };
    for (int t = 1; t <= n; ++t) {
      model_.add_exactly_one({pos(fl(t, 0, 0)), pos(fl(t, 0, 1)), pos(fl(t, 1, 0)), pos(fl(t, 1, 1))});
    }
    if (d.in_init(d.fluents[f].name)) {
      model_.add_linear({bterm(1, fl(1, 1, 0)), bterm(1, fl(1, 1, 1))}, Cmp::kEq, 1);
    } else {
      model_.add_linear({bterm(1, fl(1, 0, 0)), bterm(1, fl(1, 0, 1))}, Cmp::kEq, 1);
    }
    if (d.in_goal(d.fluents[f].name)) {
      model_.add_linear({bterm(1, fl(n, 0, 1)), bterm(1, fl(n, 1, 1))}, Cmp::kEq, 1);
    }
    for (int t = 1; t < n; ++t) {
      for (int w = 0; w <= 1; ++w) {
        model_.add_linear({bterm(1, fl(t, 0, w)), bterm(1, fl(t, 1, w)), bterm(-1, fl(t + 1, w, 0)),
                           bterm(-1, fl(t + 1, w, 1))},
                          Cmp::kEq, 0);
      }
    }
    for (int t = 1; t <= n; ++t) {
      const int s = shape_.split(f, t);
      const int lo = shape_.boundary(t - 1);
      const int hi = shape_.boundary(t);
      for (int v = 0; v <= 1; ++v) {
        model_.add_linear({iterm(1, s), iterm(-1, lo)}, Cmp::kEq, 0, {pos(fl(t, v, v))});
        model_.add_linear({iterm(1, s), iterm(-1, lo)}, Cmp::kGe, 1, {pos(fl(t, v, 1 - v))});
        model_.add_linear({iterm(1, hi), iterm(-1, s)}, Cmp::kGe, 1, {pos(fl(t, v, 1 - v))});
      }
    }
  }
}

void Encoder::copy_structure(const CopyVars& v, const CopyVars* prev) {
  const int n = shape_.n_stages();
  model_.add_linear({iterm(1, v.l), iterm(-1, v.r)}, Cmp::kLe, -1, {pos(v.use)});
  model_.add_linear({iterm(1, v.l)}, Cmp::kEq, n + 1, {neg(v.use)});
  model_.add_linear({iterm(1, v.r)}, Cmp::kEq, 0, {neg(v.use)});
  model_.add_linear({iterm(1, v.start)}, Cmp::kEq, 0, {neg(v.use)});
  model_.add_linear({iterm(1, v.end)}, Cmp::kEq, 0, {neg(v.use)});
  if (prev != nullptr) {
    model_.add_implication({pos(v.use)}, pos(prev->use));
    model_.add_linear({iterm(1, prev->r), iterm(-1, v.l)}, Cmp::kLe, 0, {pos(v.use)});
  }
  for (int t = 1; t <= n; ++t) {
    model_.add_linear({iterm(1, v.start), iterm(-1, shape_.boundary(t - 1))}, Cmp::kEq, 0,
                      at_left(v, t));
  }
  for (int t = 2; t <= n + 1; ++t) {
    model_.add_linear({iterm(1, v.end), iterm(-1, shape_.boundary(t - 1))}, Cmp::kEq, 0,
                      at_right(v, t));
  }
  // Every stage lasts at least one tick.
  model_.add_linear({iterm(1, v.end), iterm(-1, v.start), iterm(-1, v.r), iterm(1, v.l)}, Cmp::kGe, 0,
                    {pos(v.use)});
}

void Encoder::emit_action_structure() {
  const Domain& d = shape_.domain();
  const int n = shape_.n_stages();
  for (int t = 1; t <= n; ++t) {
    model_.add_linear({iterm(1, shape_.boundary(t)), iterm(-1, shape_.boundary(t - 1))}, Cmp::kGe, 1);
  }
  for (int a = 0; a < shape_.num_actions(); ++a) {
    const Skill& skill = d.skills[shape_.actions()[a].skill];
    for (int k = 1; k <= shape_.copies(); ++k) {
      const CopyVars& v = shape_.copy(a, k);
      copy_structure(v, k > 1 ? &shape_.copy(a, k - 1) : nullptr);
      const std::vector<Term> width{iterm(1, v.end), iterm(-1, v.start)};
      if (skill.kind == SkillKind::kDelay) {
        model_.add_linear(width, Cmp::kEq, *skill.duration, {pos(v.use)});
      } else {
        model_.add_linear(width, Cmp::kGe, 1, {pos(v.use)});
      }
      if (skill.has_equals()) {
        model_.add_linear(width, Cmp::kGe, 2, {pos(v.use)});
        model_.add_linear({iterm(1, v.r), iterm(-1, v.l)}, Cmp::kGe, 2, {pos(v.use)});
      }
    }
  }
  for (int a = 0; a < shape_.num_temporal(); ++a) {
    for (int k = 1; k <= shape_.copies(); ++k) {
      const CopyVars& v = shape_.temporal_copy(a, k);
      copy_structure(v, k > 1 ? &shape_.temporal_copy(a, k - 1) : nullptr);
      model_.add_linear({iterm(1, v.end), iterm(-1, v.start)}, Cmp::kGe, 1, {pos(v.use)});
    }
  }
}

void Encoder::emit_tc_constraints() {
  ensure_spans();
  const Domain& d = shape_.domain();
  const int n = shape_.n_stages();
  for (int a = 0; a < shape_.num_actions(); ++a) {
    const Skill& skill = d.skills[shape_.actions()[a].skill];
    for (int k = 1; k <= shape_.copies(); ++k) {
      const CopyVars& v = shape_.copy(a, k);
      for (const auto& spec : skill.constraints) {
        const int f = shape_.fluent_index(spec.fluent);
        bool constant = false;
        switch (spec.rel) {
          case ConstraintRel::kContains: {
            for (int t = 1; t <= n; ++t) {
              auto opts = true_at_end(f, t - 1, &constant);
              implies_any(at_left(v, t), opts, constant);
            }
            for (int t = 2; t <= n + 1; ++t) {
              auto opts = true_at_start(f, t, &constant);
              implies_any(at_right(v, t), opts, constant);
            }
            for (int t = 1; t <= n; ++t) {
              model_.add_implication({pos(span(a, k, t))}, pos(shape_.flow(f, t, 1, 1)));
            }
            break;
          }
          case ConstraintRel::kOverlaps:
          case ConstraintRel::kOverlappedBy: {
            const bool rising = spec.rel == ConstraintRel::kOverlaps;
            std::vector<Term> witnesses;
            for (int t = 1; t <= n; ++t) {
              const int g = model_.add_bool(std::string(rising ? "rise:" : "fall:") +
                                            shape_.actions()[a].name + ":" + std::to_string(k) +
                                            ":" + spec.fluent + ":" + std::to_string(t));
              const int flow = rising ? shape_.flow(f, t, 0, 1) : shape_.flow(f, t, 1, 0);
              model_.add_iff(pos(g), {pos(flow), pos(span(a, k, t))});
              witnesses.push_back(bterm(1, g));
            }
            witnesses.push_back(bterm(-1, v.use));
            model_.add_linear(std::move(witnesses), Cmp::kEq, 0);
            if (rising) {
              // True through the end of the action and beyond it.
              for (int t = 2; t <= n + 1; ++t) {
                const auto last = true_at_end(f, t - 1, &constant);
                implies_any(at_right(v, t), last, constant);
                const auto after = true_at_start(f, t, &constant);
                implies_any(at_right(v, t), after, constant);
              }
            } else {
              // True just before the action, false at its last tick.
              for (int t = 1; t <= n; ++t) {
                const auto before = true_at_end(f, t - 1, &constant);
                implies_any(at_left(v, t), before, constant);
              }
              for (int t = 2; t <= n + 1; ++t) {
                implies_any(at_right(v, t),
                            {pos(shape_.flow(f, t - 1, 0, 0)), pos(shape_.flow(f, t - 1, 1, 0))}, false);
              }
            }
            break;
          }
          case ConstraintRel::kEquals: break;  // emit_operational
        }
      }
    }
  }
}

void Encoder::emit_operational() {
  const Domain& d = shape_.domain();
  const int n = shape_.n_stages();
  for (int ti = 0; ti < shape_.num_temporal(); ++ti) {
    const auto& comps = shape_.temporal()[ti].components;
    for (int k = 1; k <= shape_.copies(); ++k) {
      const CopyVars& tv = shape_.temporal_copy(ti, k);
      for (size_t i = 0; i < comps.size(); ++i) {
        const CopyVars& cv = shape_.copy(comps[i], k);
        model_.add_implication({pos(tv.use)}, pos(cv.use));
        model_.add_implication({pos(cv.use)}, pos(tv.use));
        if (i == 0) model_.add_linear({iterm(1, cv.l), iterm(-1, tv.l)}, Cmp::kEq, 0, {pos(tv.use)});
        if (i + 1 == comps.size()) {
          model_.add_linear({iterm(1, cv.r), iterm(-1, tv.r)}, Cmp::kEq, 0, {pos(tv.use)});
        } else {
          const CopyVars& next = shape_.copy(comps[i + 1], k);
          model_.add_linear({iterm(1, cv.r), iterm(-1, next.l)}, Cmp::kEq, 0, {pos(tv.use)});
        }
      }
    }
  }
  for (int a = 0; a < shape_.num_actions(); ++a) {
    const Skill& skill = d.skills[shape_.actions()[a].skill];
    for (const auto& spec : skill.constraints) {
      if (spec.rel != ConstraintRel::kEquals) continue;
      const int f = shape_.fluent_index(spec.fluent);
      for (int k = 1; k <= shape_.copies(); ++k) {
        const CopyVars& v = shape_.copy(a, k);
        for (int t = 1; t <= n; ++t) {
          implies_any(at_left(v, t), {pos(shape_.flow(f, t, 0, 1))}, false);
          model_.add_linear({iterm(1, shape_.split(f, t)), iterm(-1, shape_.boundary(t - 1))}, Cmp::kEq,
                            1, at_left(v, t));
        }
        for (int t = 2; t <= n + 1; ++t) {
          implies_any(at_right(v, t), {pos(shape_.flow(f, t - 1, 1, 0))}, false);
          model_.add_linear({iterm(1, shape_.split(f, t - 1)), iterm(-1, shape_.boundary(t - 1))},
                            Cmp::kEq, -1, at_right(v, t));
        }
        for (int t = 2; t < n; ++t) {
          model_.add_clause({neg(span(a, k, t)), Literal::ge(v.l, t), Literal::le(v.r, t + 1),
                             pos(shape_.flow(f, t, 1, 1))});
        }
      }
    }
  }
}

void Encoder::emit_frame_and_interference() {
  const Domain& d = shape_.domain();
  const int n = shape_.n_stages();
  std::vector<std::set<std::string>> raises, lowers;
  for (const auto& act : shape_.actions()) {
    raises.push_back(effective_raises(d, d.skills[act.skill].name));
    lowers.push_back(effective_lowers(d, d.skills[act.skill].name));
  }
  for (int f = 0; f < shape_.num_fluents(); ++f) {
    const std::string& name = d.fluents[f].name;
    for (int t = 1; t <= n; ++t) {
      for (int dir = 0; dir <= 1; ++dir) {
        const auto& table = dir == 0 ? raises : lowers;
        std::vector<Literal> clause{neg(shape_.flow(f, t, dir, 1 - dir))};
        for (int a = 0; a < shape_.num_actions(); ++a) {
          if (!table[a].count(name)) continue;
          for (int k = 1; k <= shape_.copies(); ++k) clause.push_back(pos(span(a, k, t)));
        }
        model_.add_clause(std::move(clause));
      }
    }
  }
  for (const auto& [pn, qn] : d.interference) {
    const int p = shape_.fluent_index(pn);
    const int q = shape_.fluent_index(qn);
    for (int t = 1; t <= n; ++t) {
      for (int v = 0; v <= 1; ++v) {
        for (int w = 0; w <= 1; ++w) {
          model_.add_clause({neg(shape_.flow(p, t, v, 1)), neg(shape_.flow(q, t, w, 1))});
          model_.add_clause({neg(shape_.flow(p, t, 1, v)), neg(shape_.flow(q, t, 1, w))});
        }
      }
      model_.add_linear({iterm(1, shape_.split(q, t)), iterm(-1, shape_.split(p, t))}, Cmp::kLe, 0,
                        {pos(shape_.flow(p, t, 0, 1)), pos(shape_.flow(q, t, 1, 0))});
      model_.add_linear({iterm(1, shape_.split(p, t)), iterm(-1, shape_.split(q, t))}, Cmp::kLe, 0,
                        {pos(shape_.flow(q, t, 0, 1)), pos(shape_.flow(p, t, 1, 0))});
    }
  }
}

void Encoder::emit_objective(ObjectiveKind kind) {
  const Domain& d = shape_.domain();
  switch (kind) {
    case ObjectiveKind::kNone: model_.clear_objective(); return;
    case ObjectiveKind::kSumOfCosts: {
      cost_scale_ = ilplan::cost_scale(d);
      Objective o;
      for (int a = 0; a < shape_.num_actions(); ++a) {
        const Rational c = d.skills[shape_.actions()[a].skill].cost;
        const int64_t coef = c.num() * (cost_scale_ / c.den());
        if (coef == 0) continue;
        for (int k = 1; k <= shape_.copies(); ++k) o.terms.push_back(bterm(coef, shape_.copy(a, k).use));
      }
      model_.set_objective(std::move(o));
      return;
    }
    case ObjectiveKind::kMakespan: {
      if (!makespan_) makespan_ = model_.add_int(0, shape_.horizon(), "makespan");
      for (int a = 0; a < shape_.num_actions(); ++a) {
        for (int k = 1; k <= shape_.copies(); ++k) {
          const CopyVars& v = shape_.copy(a, k);
          model_.add_linear({iterm(1, *makespan_), iterm(-1, v.end)}, Cmp::kGe, 0, {pos(v.use)});
        }
      }
      model_.set_objective(Objective{{iterm(1, *makespan_)}, 0});
      return;
    }
  }
}

CspModel encode(const TheoryShape& shape, ObjectiveKind objective) {
  Encoder e(shape);
  e.emit_flow();
  e.emit_action_structure();
  e.emit_tc_constraints();
  e.emit_operational();
  e.emit_frame_and_interference();
  e.emit_objective(objective);
  return e.take_model();
}

}  // namespace ilplan
