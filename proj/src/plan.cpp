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

#include "ilplan/plan.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ilplan/error.hpp"
#include "json.hpp"

namespace ilplan {

using nlohmann::json;

const Segments* TimingDiagram::segments(std::string_view fluent) const {
  for (const auto& [name, segs] : fluents) {
    if (name == fluent) return &segs;
  }
  return nullptr;
}

std::pair<Plan, TimingDiagram> decode(const TheoryShape& shape, const Assignment& a) {
  const Domain& d = shape.domain();
  const int n = shape.n_stages();
  Plan p;
  p.n = n;
  for (int t = 0; t <= n; ++t) p.boundaries.push_back(a.ints[shape.boundary(t)]);
  for (int f = 0; f < shape.num_fluents(); ++f) {
    const std::string& name = d.fluents[f].name;
    for (int t = 1; t <= n; ++t) {
      int chosen = -1;
      for (int vw = 0; vw < 4; ++vw) {
        if (a.bools[shape.flow(f, t, vw >> 1, vw & 1)] == 0) continue;
        if (chosen >= 0) throw InternalError("two flow variables set for " + name);
        chosen = vw;
      }
      if (chosen < 0) throw InternalError("no flow variable set for " + name);
      const bool v = (chosen >> 1) != 0, w = (chosen & 1) != 0;
      const TimePoint lo = p.boundaries[t - 1], hi = p.boundaries[t];
      if (v == w) {
        p.fluents.push_back({name, t, 1, v, lo, hi});
        continue;
      }
      const TimePoint s = a.ints[shape.split(f, t)];
      if (s <= lo || s >= hi) throw InternalError("transition split outside its stage for " + name);
      p.fluents.push_back({name, t, 0, v, lo, s});
      p.fluents.push_back({name, t, 1, w, s, hi});
    }
  }
  for (int i = 0; i < shape.num_actions(); ++i) {
    const ActionInst& act = shape.actions()[i];
    for (int k = 1; k <= shape.copies(); ++k) {
      const CopyVars& v = shape.copy(i, k);
      if (a.bools[v.use] == 0) continue;
      p.actions.push_back({d.skills[act.skill].name, act.actor, k, a.ints[v.start], a.ints[v.end]});
    }
  }
  for (int i = 0; i < shape.num_temporal(); ++i) {
    const TemporalInst& ti = shape.temporal()[i];
    for (int k = 1; k <= shape.copies(); ++k) {
      const CopyVars& v = shape.temporal_copy(i, k);
      if (a.bools[v.use] == 0) continue;
      p.temporal_actions.push_back(
          {d.temporal_actions[ti.temporal].name, ti.actor, k, a.ints[v.start], a.ints[v.end]});
    }
  }
  TimingDiagram diagram = diagram_of(p);
  return {std::move(p), std::move(diagram)};
}

TimingDiagram diagram_of(const Plan& p) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<int8_t>> ticks;
  const TimePoint end = p.end();
  for (const auto& e : p.fluents) {
    auto [it, fresh] = ticks.try_emplace(e.fluent);
    if (fresh) {
      order.push_back(e.fluent);
      it->second.assign(static_cast<size_t>(end), -1);
    }
    if (e.start < 0 || e.end > end || e.start >= e.end) {
      throw PreconditionError("fluent entry for '" + e.fluent + "' outside [0, " +
                              std::to_string(end) + ")");
    }
    for (TimePoint t = e.start; t < e.end; ++t) {
      if (it->second[t] != -1) {
        throw PreconditionError("overlapping entries for '" + e.fluent + "' at " + std::to_string(t));
      }
      it->second[t] = e.value ? 1 : 0;
    }
  }
  History h(order, end);
  for (size_t i = 0; i < order.size(); ++i) {
    const auto& row = ticks[order[i]];
    for (TimePoint t = 0; t < end; ++t) {
      if (row[t] == -1) {
        throw PreconditionError("no entry covers '" + order[i] + "' at " + std::to_string(t));
      }
      h.set(t, i, row[t] == 1);
    }
  }
  TimingDiagram d = diagram_from_history(h, p.boundaries);
  d.actions = p.actions;
  d.temporal_actions = p.temporal_actions;
  return d;
}

History history_of(const TimingDiagram& d) {
  std::vector<std::string> atoms;
  for (const auto& [name, _] : d.fluents) atoms.push_back(name);
  const TimePoint end = d.boundaries.empty() ? 0 : d.boundaries.back();
  History h(atoms, end);
  for (size_t i = 0; i < d.fluents.size(); ++i) {
    for (const auto& [value, iv] : d.fluents[i].second) {
      for (TimePoint t = iv.l(); t < iv.r(); ++t) h.set(t, i, value);
    }
  }
  return h;
}

TimingDiagram diagram_from_history(const History& h, std::vector<TimePoint> boundaries) {
  TimingDiagram d;
  d.boundaries = std::move(boundaries);
  for (size_t i = 0; i < h.atoms().size(); ++i) d.fluents.emplace_back(h.atoms()[i], h.segments(i));
  return d;
}

// ---------------------------------------------------------------------------
// Document format

namespace {

json rational_json(const Rational& r) {
  if (r.den() == 1) return r.num();
  return r.str();
}

json entry_json(const std::string& key, const std::string& name, int actor, int copy, TimePoint s,
                TimePoint e) {
  return {{key, name}, {"actor", actor}, {"copy", copy}, {"start", s}, {"end", e}};
}

class PlanReader {
 public:
  Plan read(const json& j) {
    object(j, "");
    keys(j, "", {"n", "boundaries", "objective", "fluents", "actions", "temporal_actions", "timeline"});
    Plan p;
    p.n = static_cast<int>(integer(need(j, "", "n"), "/n"));
    const json& b = need(j, "", "boundaries");
    array(b, "/boundaries");
    for (size_t i = 0; i < b.size(); ++i) p.boundaries.push_back(integer(b[i], at("/boundaries", i)));
    if (static_cast<int>(p.boundaries.size()) != p.n + 1) {
      throw ParseError("/boundaries", "expected n + 1 boundaries");
    }
    if (j.contains("objective") && !j["objective"].is_null()) {
      const json& o = j["objective"];
      object(o, "/objective");
      keys(o, "/objective", {"kind", "value"});
      const std::string kind = string(need(o, "/objective", "kind"), "/objective/kind");
      auto k = objective_kind_from_string(kind);
      if (!k) throw ParseError("/objective/kind", "unknown objective '" + kind + "'");
      const json& v = need(o, "/objective", "value");
      Rational value;
      if (v.is_number_integer()) {
        value = Rational(v.get<int64_t>());
      } else if (v.is_string()) {
        try {
          value = Rational::parse(v.get<std::string>());
        } catch (const Error& e) {
          throw ParseError("/objective/value", e.what());
        }
      } else {
        throw ParseError("/objective/value", "expected an integer or \"a/b\" string");
      }
      p.objective = PlanObjective{*k, value};
    }
    const json& fl = need(j, "", "fluents");
    array(fl, "/fluents");
    for (size_t i = 0; i < fl.size(); ++i) {
      const std::string path = at("/fluents", i);
      object(fl[i], path);
      keys(fl[i], path, {"fluent", "stage", "part", "value", "start", "end"});
      FluentEntry e;
      e.fluent = string(need(fl[i], path, "fluent"), path + "/fluent");
      e.stage = static_cast<int>(integer(need(fl[i], path, "stage"), path + "/stage"));
      e.part = static_cast<int>(integer(need(fl[i], path, "part"), path + "/part"));
      const json& v = need(fl[i], path, "value");
      if (!v.is_boolean()) throw ParseError(path + "/value", "expected a boolean");
      e.value = v.get<bool>();
      e.start = integer(need(fl[i], path, "start"), path + "/start");
      e.end = integer(need(fl[i], path, "end"), path + "/end");
      p.fluents.push_back(std::move(e));
    }
    const json& ac = need(j, "", "actions");
    array(ac, "/actions");
    for (size_t i = 0; i < ac.size(); ++i) {
      const std::string path = at("/actions", i);
      ActionEntry e;
      read_entry(ac[i], path, "skill", e.skill, e.actor, e.copy, e.start, e.end);
      p.actions.push_back(std::move(e));
    }
    if (j.contains("temporal_actions")) {
      const json& ta = j["temporal_actions"];
      array(ta, "/temporal_actions");
      for (size_t i = 0; i < ta.size(); ++i) {
        TemporalEntry e;
        read_entry(ta[i], at("/temporal_actions", i), "name", e.name, e.actor, e.copy, e.start, e.end);
        p.temporal_actions.push_back(std::move(e));
      }
    }
    return p;
  }

 private:
  static std::string at(const std::string& path, size_t i) { return path + "/" + std::to_string(i); }
  static void object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
  }
  static void array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
  }
  static const json& need(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "/" + key, "missing required field");
    return *it;
  }
  static void keys(const json& j, const std::string& path, std::initializer_list<std::string_view> ok) {
    for (const auto& [k, _] : j.items()) {
      if (std::find(ok.begin(), ok.end(), k) == ok.end()) throw ParseError(path + "/" + k, "unknown key");
    }
  }
  static int64_t integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<int64_t>();
  }
  static std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
  }
  static void read_entry(const json& j, const std::string& path, const char* name_key, std::string& name,
                         int& actor, int& copy, TimePoint& start, TimePoint& end) {
    object(j, path);
    keys(j, path, {name_key, "actor", "copy", "start", "end"});
    name = string(need(j, path, name_key), path + "/" + name_key);
    actor = static_cast<int>(integer(need(j, path, "actor"), path + "/actor"));
    copy = static_cast<int>(integer(need(j, path, "copy"), path + "/copy"));
    start = integer(need(j, path, "start"), path + "/start");
    end = integer(need(j, path, "end"), path + "/end");
  }
};

}  // namespace

std::string plan_to_json(const Plan& p) {
  json j = json::object();
  j["n"] = p.n;
  j["boundaries"] = p.boundaries;
  if (p.objective) {
    j["objective"] = {{"kind", std::string(to_string(p.objective->kind))},
                      {"value", rational_json(p.objective->value)}};
  } else {
    j["objective"] = nullptr;
  }
  j["fluents"] = json::array();
  for (const auto& e : p.fluents) {
    j["fluents"].push_back({{"fluent", e.fluent},
                            {"stage", e.stage},
                            {"part", e.part},
                            {"value", e.value},
                            {"start", e.start},
                            {"end", e.end}});
  }
  j["actions"] = json::array();
  for (const auto& e : p.actions) {
    j["actions"].push_back(entry_json("skill", e.skill, e.actor, e.copy, e.start, e.end));
  }
  j["temporal_actions"] = json::array();
  for (const auto& e : p.temporal_actions) {
    j["temporal_actions"].push_back(entry_json("name", e.name, e.actor, e.copy, e.start, e.end));
  }
  json timeline = json::object();
  try {
    for (const auto& [name, segs] : diagram_of(p).fluents) {
      json rows = json::array();
      for (const auto& [value, iv] : segs) rows.push_back({{"value", value}, {"start", iv.l()}, {"end", iv.r()}});
      timeline[name] = std::move(rows);
    }
  } catch (const PreconditionError&) {
    timeline = nullptr;  // entries do not tile the plan range
  }
  j["timeline"] = std::move(timeline);
  return j.dump(2) + "\n";
}

Plan plan_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  return PlanReader().read(j);
}

std::string render_diagram(const TimingDiagram& d) {
  const TimePoint end = d.boundaries.empty() ? 0 : d.boundaries.back();
  size_t width = 0;
  for (const auto& [name, _] : d.fluents) width = std::max(width, name.size());
  std::vector<std::string> action_names;
  for (const auto& a : d.actions) {
    action_names.push_back(a.skill + "#" + std::to_string(a.actor) + "." + std::to_string(a.copy));
    width = std::max(width, action_names.back().size());
  }
  std::ostringstream os;
  auto pad = [&](const std::string& s) { os << s << std::string(width - s.size() + 1, ' ') << '|'; };
  pad("");
  std::string marks(static_cast<size_t>(end), ' ');
  for (TimePoint b : d.boundaries) {
    if (b < end) marks[b] = '^';
  }
  os << marks << "|\n";
  for (const auto& [name, segs] : d.fluents) {
    pad(name);
    for (const auto& [value, iv] : segs) os << std::string(iv.size(), value ? '#' : '.');
    os << "|\n";
  }
  for (size_t i = 0; i < d.actions.size(); ++i) {
    pad(action_names[i]);
    std::string row(static_cast<size_t>(end), ' ');
    for (TimePoint t = d.actions[i].start; t < d.actions[i].end && t < end; ++t) row[t] = '=';
    os << row << "|\n";
  }
  return os.str();
}

}  // namespace ilplan
