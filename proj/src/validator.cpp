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

#include "ilplan/validator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "ilplan/error.hpp"
#include "ilplan/theory.hpp"

namespace ilplan {
namespace {

std::string action_label(const ActionEntry& a) {
  return a.skill + "#" + std::to_string(a.actor) + "/" + std::to_string(a.copy);
}

std::string temporal_label(const TemporalEntry& a) {
  return a.name + "#" + std::to_string(a.actor) + "/" + std::to_string(a.copy);
}

std::optional<size_t> fluent_index(const Domain& d, std::string_view name) {
  const Fluent* f = d.find_fluent(name);
  if (f == nullptr) return std::nullopt;
  return static_cast<size_t>(f - d.fluents.data());
}

std::string span_text(TimePoint s, TimePoint e) {
  return "[" + std::to_string(s) + ", " + std::to_string(e) + ")";
}

// Checks a plan restricted to the fluents in `scope` (indices into
// d.fluents). Rules that do not involve fluents are always checked.
class Checker {
 public:
  Checker(const Domain& d, const Plan& p, std::vector<bool> scope)
      : d_(d), p_(p), scope_(std::move(scope)) {}

  std::vector<Violation> run() {
    if (!check_boundaries()) return std::move(out_);
    const bool history_ok = build_history();
    check_actions();
    check_temporal();
    check_copies();
    if (history_ok) {
      check_init_goal();
      check_frame();
      check_relations();
      check_interference();
    }
    return std::move(out_);
  }

  std::vector<Violation> run_frame_only() {
    if (!check_boundaries() || !build_history()) return std::move(out_);
    check_actions();
    out_.clear();
    check_frame();
    return std::move(out_);
  }

 private:
  void add(std::string rule, std::vector<std::string> atoms, std::string why) {
    out_.push_back({std::move(rule), std::move(atoms), std::move(why)});
  }

  bool check_boundaries() {
    const auto& b = p_.boundaries;
    if (p_.n < 1 || b.size() != static_cast<size_t>(p_.n) + 1) {
      add("structure", {}, "expected n >= 1 and n + 1 boundaries");
      return false;
    }
    if (b[0] != 0) {
      add("structure", {}, "first boundary must be 0");
      return false;
    }
    for (size_t i = 1; i < b.size(); ++i) {
      if (b[i] <= b[i - 1]) {
        add("structure", {}, "boundaries must increase strictly");
        return false;
      }
    }
    end_ = b.back();
    return true;
  }

  bool build_history() {
    const size_t nf = d_.fluents.size();
    h_.assign(nf, std::vector<int8_t>(static_cast<size_t>(end_), -1));
    bool ok = true;
    for (const auto& e : p_.fluents) {
      const auto idx = fluent_index(d_, e.fluent);
      if (!idx) {
        add("unknown-symbol", {e.fluent}, "undeclared fluent '" + e.fluent + "'");
        continue;
      }
      if (!scope_[*idx]) continue;
      if (e.start < 0 || e.end > end_ || e.start >= e.end) {
        add("history", {e.fluent}, "entry " + span_text(e.start, e.end) + " outside the plan");
        ok = false;
        continue;
      }
      auto& row = h_[*idx];
      for (TimePoint t = e.start; t < e.end; ++t) {
        if (row[t] != -1) {
          add("history", {e.fluent}, "two entries cover tick " + std::to_string(t));
          ok = false;
          break;
        }
        row[t] = e.value ? 1 : 0;
      }
    }
    for (size_t f = 0; f < nf; ++f) {
      if (!scope_[f]) continue;
      for (TimePoint t = 0; t < end_; ++t) {
        if (h_[f][t] == -1) {
          add("history", {d_.fluents[f].name}, "no entry covers tick " + std::to_string(t));
          ok = false;
          break;
        }
      }
    }
    return ok;
  }

  bool at(size_t f, TimePoint t) const { return h_[f][t] == 1; }

  // Extended history: initial state before 0, goal state from b_N on.
  bool at_ext(size_t f, TimePoint t) const {
    if (t < 0) return d_.in_init(d_.fluents[f].name);
    if (t >= end_) return d_.in_goal(d_.fluents[f].name);
    return at(f, t);
  }

  void check_actions() {
    for (const auto& a : p_.actions) {
      const Skill* found = d_.find_skill(a.skill);
      if (found == nullptr) {
        add("unknown-symbol", {a.skill}, "undeclared skill '" + a.skill + "'");
        continue;
      }
      const Skill& s = *found;
      if (a.actor < 1 || a.actor > d_.actors || !s.runs_on(a.actor)) {
        add("unknown-symbol", {action_label(a)}, "actor " + std::to_string(a.actor) +
                                                     " cannot run '" + a.skill + "'");
        continue;
      }
      if (a.start < 0 || a.end > end_ || a.start >= a.end) {
        add("range", {action_label(a)}, span_text(a.start, a.end) + " outside " +
                                            span_text(0, end_));
        continue;
      }
      const TimePoint len = a.end - a.start;
      if (s.kind == SkillKind::kDelay && s.duration && len != *s.duration) {
        add("duration", {action_label(a)},
            "lasts " + std::to_string(len) + ", expected " + std::to_string(*s.duration));
      }
      actions_.push_back({&a, &s});
    }
  }

  void check_temporal() {
    std::set<std::tuple<std::string, int, int>> parented;
    for (const auto& ta : p_.temporal_actions) {
      const TemporalAction* def = nullptr;
      for (const auto& t : d_.temporal_actions) {
        if (t.name == ta.name) def = &t;
      }
      if (def == nullptr) {
        add("unknown-symbol", {ta.name}, "undeclared temporal action '" + ta.name + "'");
        continue;
      }
      if (ta.start < 0 || ta.end > end_ || ta.start >= ta.end) {
        add("range", {temporal_label(ta)}, span_text(ta.start, ta.end) + " outside " +
                                               span_text(0, end_));
        continue;
      }
      temporal_.push_back(&ta);
      std::vector<const ActionEntry*> parts;
      for (const auto& skill : def->skills) {
        const ActionEntry* found = nullptr;
        for (const auto& [a, _] : actions_) {
          if (a->skill == skill && a->actor == ta.actor && a->copy == ta.copy) found = a;
        }
        if (found == nullptr) {
          add("temporal", {temporal_label(ta), skill}, "missing component '" + skill + "'");
          parts.clear();
          break;
        }
        parts.push_back(found);
        parented.insert({skill, ta.actor, ta.copy});
      }
      if (parts.empty()) continue;
      if (parts.front()->start != ta.start || parts.back()->end != ta.end) {
        add("temporal", {temporal_label(ta)}, "components do not cover " +
                                                  span_text(ta.start, ta.end));
      }
      for (size_t i = 0; i + 1 < parts.size(); ++i) {
        if (parts[i]->end != parts[i + 1]->start) {
          add("temporal", {action_label(*parts[i]), action_label(*parts[i + 1])},
              "consecutive components do not meet");
        }
      }
    }
    for (const auto& [a, _] : actions_) {
      if (d_.parent_of(a->skill) != nullptr && !parented.count({a->skill, a->actor, a->copy})) {
        add("temporal", {action_label(*a)}, "component without its temporal action");
      }
    }
  }

  void check_copies() {
    const size_t na = actions_.size();
    for (size_t i = 0; i < na; ++i) {
      for (size_t j = i + 1; j < na; ++j) {
        const ActionEntry& x = *actions_[i].first;
        const ActionEntry& y = *actions_[j].first;
        if (x.skill != y.skill || x.actor != y.actor) continue;
        if (!holds_composite(CompositeRelation::kDisjoint, Interval(x.start, x.end),
                             Interval(y.start, y.end))) {
          add("copies", {action_label(x), action_label(y)}, "copies overlap");
        }
      }
    }
    for (size_t i = 0; i < temporal_.size(); ++i) {
      for (size_t j = i + 1; j < temporal_.size(); ++j) {
        const TemporalEntry& x = *temporal_[i];
        const TemporalEntry& y = *temporal_[j];
        if (x.name != y.name || x.actor != y.actor) continue;
        if (!holds_composite(CompositeRelation::kDisjoint, Interval(x.start, x.end),
                             Interval(y.start, y.end))) {
          add("copies", {temporal_label(x), temporal_label(y)}, "copies overlap");
        }
      }
    }
  }

  void check_init_goal() {
    for (size_t f = 0; f < d_.fluents.size(); ++f) {
      if (!scope_[f]) continue;
      const std::string& name = d_.fluents[f].name;
      const bool init = d_.in_init(name);
      if (at(f, 0) != init) {
        add("init", {name}, init ? "initial fluent false at 0" : "non-initial fluent true at 0");
      }
      if (d_.in_goal(name) && !at(f, end_ - 1)) {
        add("goal", {name}, "goal fluent false at " + std::to_string(end_ - 1));
      }
    }
  }

  void check_frame() {
    for (size_t f = 0; f < d_.fluents.size(); ++f) {
      if (!scope_[f]) continue;
      const std::string& name = d_.fluents[f].name;
      for (TimePoint t = 1; t < end_; ++t) {
        if (at(f, t) == at(f, t - 1)) continue;
        const bool rise = at(f, t);
        bool justified = false;
        for (const auto& [a, s] : actions_) {
          if (!(a->start < t && t < a->end)) continue;
          const auto eff = rise ? effective_raises(d_, s->name) : effective_lowers(d_, s->name);
          if (eff.count(name)) {
            justified = true;
            break;
          }
        }
        if (!justified) {
          add("frame", {name}, std::string(rise ? "rise" : "fall") + " at " + std::to_string(t) +
                                   " has no justifying action");
        }
      }
    }
  }

  int changes_inside(size_t f, TimePoint s, TimePoint e, bool rise) const {
    int count = 0;
    for (TimePoint t = s + 1; t < e; ++t) {
      if (at(f, t) == rise && at(f, t - 1) != rise) ++count;
    }
    return count;
  }

  void check_relations() {
    for (const auto& [a, s] : actions_) {
      const TimePoint S = a->start, E = a->end;
      for (const auto& c : s->constraints) {
        const auto idx = fluent_index(d_, c.fluent);
        if (!idx || !scope_[*idx]) continue;
        const size_t f = *idx;
        const std::vector<std::string> atoms = {action_label(*a), c.fluent};
        const std::string rel(to_string(c.rel));
        auto fail = [&](const std::string& why) { add(rel, atoms, why); };
        switch (c.rel) {
          case ConstraintRel::kContains:
            for (TimePoint t = S - 1; t <= E; ++t) {
              if (!at_ext(f, t)) {
                fail("fluent false at " + std::to_string(t));
                break;
              }
            }
            break;
          case ConstraintRel::kOverlaps: {
            const int rises = changes_inside(f, S, E, true);
            if (rises != 1) fail(std::to_string(rises) + " rises inside the action");
            if (!at(f, E - 1) || !at_ext(f, E)) fail("fluent not true at the action's end");
            break;
          }
          case ConstraintRel::kOverlappedBy: {
            if (!at_ext(f, S - 1)) fail("fluent not true before the action starts");
            const int falls = changes_inside(f, S, E, false);
            if (falls != 1) fail(std::to_string(falls) + " falls inside the action");
            if (at(f, E - 1)) fail("fluent still true at the action's last tick");
            break;
          }
          case ConstraintRel::kEquals: {
            if (E - S < 3) {
              fail("action too short for a non-empty resource segment");
              break;
            }
            if (at(f, S) || at(f, E - 1)) fail("fluent true on the action's first or last tick");
            for (TimePoint t = S + 1; t < E - 1; ++t) {
              if (!at(f, t)) {
                fail("fluent false at " + std::to_string(t));
                break;
              }
            }
            break;
          }
        }
      }
    }
  }

  void check_interference() {
    for (const auto& [x, y] : d_.interference) {
      const auto fx = fluent_index(d_, x), fy = fluent_index(d_, y);
      if (!fx || !fy || !scope_[*fx] || !scope_[*fy]) continue;
      for (TimePoint t = 0; t < end_; ++t) {
        if (at(*fx, t) && at(*fy, t)) {
          add("interference", {x, y}, "both true at " + std::to_string(t));
          break;
        }
      }
    }
  }

  const Domain& d_;
  const Plan& p_;
  std::vector<bool> scope_;
  TimePoint end_ = 0;
  std::vector<std::vector<int8_t>> h_;
  std::vector<std::pair<const ActionEntry*, const Skill*>> actions_;
  std::vector<const TemporalEntry*> temporal_;
  std::vector<Violation> out_;
};

}  // namespace

bool ValidationReport::has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

ValidationReport validate_plan(const Domain& d, const Plan& p) {
  return {Checker(d, p, std::vector<bool>(d.fluents.size(), true)).run()};
}

std::vector<Violation> frame_violations(const Domain& d, const Plan& p) {
  return Checker(d, p, std::vector<bool>(d.fluents.size(), true)).run_frame_only();
}

std::string report_text(const ValidationReport& r) {
  if (r.valid()) return "valid\n";
  std::ostringstream os;
  os << "invalid: " << r.violations.size() << " violation(s)\n";
  for (const auto& v : r.violations) {
    os << "  [" << v.rule << "]";
    for (const auto& a : v.atoms) os << ' ' << a;
    os << ": " << v.explanation << '\n';
  }
  return os.str();
}

std::string report_json(const ValidationReport& r) {
  nlohmann::ordered_json j;
  j["valid"] = r.valid();
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"rule", v.rule}, {"atoms", v.atoms}, {"explanation", v.explanation}});
  }
  return j.dump(2) + "\n";
}

Rational plan_objective(const Domain& d, const Plan& p, ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kNone: return Rational(0);
    case ObjectiveKind::kMakespan: {
      TimePoint m = 0;
      for (const auto& a : p.actions) m = std::max(m, a.end);
      return Rational(m);
    }
    case ObjectiveKind::kSumOfCosts: {
      Rational sum(0);
      for (const auto& a : p.actions) sum = sum + d.skill(a.skill).cost;
      return sum;
    }
  }
  return Rational(0);
}

namespace {

using CopyPlacement = std::vector<std::pair<int, int>>;  // (l, r) per copy

// Odometer over a list of option counts; false once exhausted.
bool advance(std::vector<size_t>& idx, const std::vector<size_t>& sizes) {
  for (size_t i = 0; i < idx.size(); ++i) {
    if (++idx[i] < sizes[i]) return true;
    idx[i] = 0;
  }
  return false;
}

class Enumerator {
 public:
  Enumerator(const Domain& d, int n, int k, int h, ObjectiveKind obj)
      : d_(d), n_(n), obj_(obj), shape_(instantiate(d, n, k, h)), h_(h) {}

  EnumerationResult run() {
    // Boundary choices alone: C(h, n).
    double combos = 1;
    for (int i = 0; i < n_; ++i) combos = combos * (h_ - i) / (i + 1);
    if (combos > static_cast<double>(kEnumerationGuard)) {
      throw PreconditionError("enumeration exceeds " + std::to_string(kEnumerationGuard) +
                              " candidates");
    }
    std::vector<TimePoint> b(n_ + 1, 0);
    boundaries(b, 1);
    return std::move(result_);
  }

 private:
  void count() {
    if (++result_.candidates > kEnumerationGuard) {
      throw PreconditionError("enumeration exceeds " + std::to_string(kEnumerationGuard) +
                              " candidates");
    }
  }

  bool done() const { return result_.sat && obj_ == ObjectiveKind::kNone; }

  void boundaries(std::vector<TimePoint>& b, int t) {
    if (done()) return;
    if (t > n_) {
      with_boundaries(b);
      return;
    }
    for (TimePoint v = b[t - 1] + 1; v <= h_ - (n_ - t); ++v) {
      b[t] = v;
      boundaries(b, t + 1);
      if (done()) return;
    }
  }

  void placements(const Skill& s, const std::vector<TimePoint>& b, CopyPlacement& cur,
                  int from, std::vector<CopyPlacement>& out) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == shape_.copies()) return;
    for (int l = from; l <= n_; ++l) {
      for (int r = l + 1; r <= n_ + 1; ++r) {
        const TimePoint len = b[r - 1] - b[l - 1];
        if (s.kind == SkillKind::kDelay && s.duration && len != *s.duration) continue;
        cur.emplace_back(l, r);
        placements(s, b, cur, r, out);
        cur.pop_back();
      }
    }
  }

  void with_boundaries(const std::vector<TimePoint>& b) {
    const int na = shape_.num_actions();
    std::vector<std::vector<CopyPlacement>> options(na);
    std::vector<size_t> sizes(na);
    for (int a = 0; a < na; ++a) {
      CopyPlacement cur;
      placements(d_.skills[shape_.actions()[a].skill], b, cur, 1, options[a]);
      sizes[a] = options[a].size();
    }
    std::vector<size_t> idx(na, 0);
    do {
      Plan base;
      base.n = n_;
      base.boundaries = b;
      for (int a = 0; a < na; ++a) {
        const ActionInst& inst = shape_.actions()[a];
        const auto& pl = options[a][idx[a]];
        for (size_t c = 0; c < pl.size(); ++c) {
          base.actions.push_back({d_.skills[inst.skill].name, inst.actor, static_cast<int>(c) + 1,
                                  b[pl[c].first - 1], b[pl[c].second - 1]});
        }
      }
      add_temporal(base, options, idx);
      with_actions(base);
      if (done()) return;
    } while (advance(idx, sizes));
  }

  void add_temporal(Plan& p, const std::vector<std::vector<CopyPlacement>>& options,
                    const std::vector<size_t>& idx) {
    for (const TemporalInst& ti : shape_.temporal()) {
      size_t copies = SIZE_MAX;
      for (int comp : ti.components) copies = std::min(copies, options[comp][idx[comp]].size());
      for (size_t c = 0; c < copies; ++c) {
        const auto& first = options[ti.components.front()][idx[ti.components.front()]][c];
        const auto& last = options[ti.components.back()][idx[ti.components.back()]][c];
        p.temporal_actions.push_back({d_.temporal_actions[ti.temporal].name, ti.actor,
                                      static_cast<int>(c) + 1, p.boundaries[first.first - 1],
                                      p.boundaries[last.second - 1]});
      }
    }
  }

  // Histories of one fluent with at most one change strictly inside each
  // stage, starting from its initial value.
  void histories(const std::vector<TimePoint>& b, const std::string& name, bool value, int t,
                 std::vector<FluentEntry>& cur, std::vector<std::vector<FluentEntry>>& out) {
    if (t > n_) {
      out.push_back(cur);
      return;
    }
    const TimePoint lo = b[t - 1], hi = b[t];
    cur.push_back({name, t, 1, value, lo, hi});
    histories(b, name, value, t + 1, cur, out);
    cur.pop_back();
    for (TimePoint s = lo + 1; s < hi; ++s) {
      cur.push_back({name, t, 0, value, lo, s});
      cur.push_back({name, t, 1, !value, s, hi});
      histories(b, name, !value, t + 1, cur, out);
      cur.pop_back();
      cur.pop_back();
    }
  }

  void with_actions(const Plan& base) {
    const size_t nf = d_.fluents.size();
    count();
    if (!Checker(d_, base, std::vector<bool>(nf, false)).run().empty()) return;
    std::vector<std::vector<std::vector<FluentEntry>>> survivors(nf);
    std::vector<size_t> sizes(nf);
    for (size_t f = 0; f < nf; ++f) {
      std::vector<std::vector<FluentEntry>> all;
      std::vector<FluentEntry> cur;
      const std::string& name = d_.fluents[f].name;
      histories(base.boundaries, name, d_.in_init(name), 1, cur, all);
      std::vector<bool> scope(nf, false);
      scope[f] = true;
      for (auto& hist : all) {
        count();
        Plan p = base;
        p.fluents = hist;
        if (Checker(d_, p, scope).run().empty()) survivors[f].push_back(std::move(hist));
      }
      if (survivors[f].empty()) return;
      sizes[f] = survivors[f].size();
    }
    std::vector<size_t> idx(nf, 0);
    do {
      count();
      Plan p = base;
      for (size_t f = 0; f < nf; ++f) {
        const auto& hist = survivors[f][idx[f]];
        p.fluents.insert(p.fluents.end(), hist.begin(), hist.end());
      }
      if (!validate_plan(d_, p).valid()) continue;
      accept(std::move(p));
      if (done()) return;
    } while (advance(idx, sizes));
  }

  void accept(Plan p) {
    result_.sat = true;
    if (obj_ == ObjectiveKind::kNone) {
      result_.witness = std::move(p);
      return;
    }
    const Rational v = plan_objective(d_, p, obj_);
    if (!result_.optimum || v < *result_.optimum) {
      result_.optimum = v;
      p.objective = PlanObjective{obj_, v};
      result_.witness = std::move(p);
    }
  }

  const Domain& d_;
  int n_;
  ObjectiveKind obj_;
  TheoryShape shape_;
  int h_;
  EnumerationResult result_;
};

}  // namespace

EnumerationResult enumerate_models(const Domain& d, int n, int k, int h, ObjectiveKind objective) {
  return Enumerator(d, n, k, h, objective).run();
}

}  // namespace ilplan
