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

#include "ilplan/domain.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "ilplan/error.hpp"
#include "json.hpp"

namespace ilplan {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 4> kRelNames = {"contains", "overlaps", "overlapped-by",
                                                       "equals"};

}  // namespace

std::string_view to_string(ConstraintRel rel) { return kRelNames[static_cast<int>(rel)]; }

std::optional<ConstraintRel> constraint_rel_from_string(std::string_view name) {
  for (size_t i = 0; i < kRelNames.size(); ++i) {
    if (kRelNames[i] == name) return static_cast<ConstraintRel>(i);
  }
  return std::nullopt;
}

bool Skill::runs_on(int actor) const {
  return actors.empty() || std::find(actors.begin(), actors.end(), actor) != actors.end();
}

bool Skill::has_equals() const {
  return std::any_of(constraints.begin(), constraints.end(),
                     [](const ConstraintSpec& c) { return c.rel == ConstraintRel::kEquals; });
}

const Fluent* Domain::find_fluent(std::string_view name) const {
  for (const auto& f : fluents) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const Skill* Domain::find_skill(std::string_view name) const {
  for (const auto& s : skills) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const Skill& Domain::skill(std::string_view name) const {
  const Skill* s = find_skill(name);
  if (s == nullptr) throw PreconditionError("unknown skill '" + std::string(name) + "'");
  return *s;
}

bool Domain::in_init(std::string_view fluent) const {
  return std::find(init.begin(), init.end(), fluent) != init.end();
}

bool Domain::in_goal(std::string_view fluent) const {
  return std::find(goal.begin(), goal.end(), fluent) != goal.end();
}

bool Domain::interferes(std::string_view a, std::string_view b) const {
  for (const auto& [x, y] : interference) {
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

const TemporalAction* Domain::parent_of(std::string_view skill) const {
  for (const auto& ta : temporal_actions) {
    if (std::find(ta.skills.begin(), ta.skills.end(), skill) != ta.skills.end()) return &ta;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Reader {
 public:
  explicit Reader(bool strict) : strict_(strict) {}

  Domain domain(const json& j) {
    expect_object(j, "");
    check_keys(j, "", {"fluents", "actors", "skills", "interference", "temporal_actions", "init",
                       "goal"});
    Domain d;
    const json& fl = require(j, "", "fluents");
    expect_array(fl, "/fluents");
    for (size_t i = 0; i < fl.size(); ++i) d.fluents.push_back(fluent(fl[i], at("/fluents", i)));
    if (j.contains("actors")) {
      const json& a = j["actors"];
      if (!a.is_number_integer() || a.get<int64_t>() < 1 || a.get<int64_t>() > 1'000'000) {
        throw ParseError("/actors", "expected a positive integer");
      }
      d.actors = a.get<int>();
    }
    const json& sk = require(j, "", "skills");
    expect_array(sk, "/skills");
    for (size_t i = 0; i < sk.size(); ++i) d.skills.push_back(skill(sk[i], at("/skills", i)));
    if (j.contains("interference")) {
      const json& in = j["interference"];
      expect_array(in, "/interference");
      for (size_t i = 0; i < in.size(); ++i) {
        const std::string p = at("/interference", i);
        if (!in[i].is_array() || in[i].size() != 2) throw ParseError(p, "expected a pair");
        d.interference.emplace_back(string(in[i][0], p + "/0"), string(in[i][1], p + "/1"));
      }
    }
    if (j.contains("temporal_actions")) {
      const json& ta = j["temporal_actions"];
      expect_array(ta, "/temporal_actions");
      for (size_t i = 0; i < ta.size(); ++i) {
        const std::string p = at("/temporal_actions", i);
        expect_object(ta[i], p);
        check_keys(ta[i], p, {"name", "skills"});
        TemporalAction t;
        t.name = string(require(ta[i], p, "name"), p + "/name");
        t.skills = strings(require(ta[i], p, "skills"), p + "/skills");
        d.temporal_actions.push_back(std::move(t));
      }
    }
    if (j.contains("init")) d.init = strings(j["init"], "/init");
    if (j.contains("goal")) d.goal = strings(j["goal"], "/goal");
    check_names(d);
    return d;
  }

 private:
  static std::string at(const std::string& path, size_t i) { return path + "/" + std::to_string(i); }

  static void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
  }

  static void expect_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
  }

  static const json& require(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "/" + key, "missing required field");
    return *it;
  }

  void check_keys(const json& j, const std::string& path,
                  std::initializer_list<std::string_view> allowed) const {
    if (!strict_) return;
    for (const auto& [key, _] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ParseError(path + "/" + key, "unknown key");
      }
    }
  }

  static std::string string(const json& j, const std::string& path) {
    if (!j.is_string() || j.get<std::string>().empty()) {
      throw ParseError(path, "expected a non-empty string");
    }
    return j.get<std::string>();
  }

  static std::vector<std::string> strings(const json& j, const std::string& path) {
    expect_array(j, path);
    std::vector<std::string> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(string(j[i], at(path, i)));
    return out;
  }

  Fluent fluent(const json& j, const std::string& path) const {
    if (j.is_string()) return Fluent{string(j, path), FluentRole::kOrdinary};
    expect_object(j, path);
    check_keys(j, path, {"name", "role"});
    Fluent f{string(require(j, path, "name"), path + "/name"), FluentRole::kOrdinary};
    if (j.contains("role")) {
      const std::string role = string(j["role"], path + "/role");
      if (role == "resource") {
        f.role = FluentRole::kResource;
      } else if (role != "ordinary") {
        throw ParseError(path + "/role", "expected \"ordinary\" or \"resource\"");
      }
    }
    return f;
  }

  Skill skill(const json& j, const std::string& path) const {
    expect_object(j, path);
    check_keys(j, path, {"name", "kind", "duration", "cost", "actors", "constraints", "raises"});
    Skill s;
    s.name = string(require(j, path, "name"), path + "/name");
    const std::string kind = string(require(j, path, "kind"), path + "/kind");
    if (kind == "timer") {
      s.kind = SkillKind::kTimer;
    } else if (kind == "delay") {
      s.kind = SkillKind::kDelay;
    } else {
      throw ParseError(path + "/kind", "expected \"timer\" or \"delay\"");
    }
    if (j.contains("duration")) {
      if (!j["duration"].is_number_integer()) {
        throw ParseError(path + "/duration", "expected an integer");
      }
      s.duration = j["duration"].get<int64_t>();
    } else if (s.kind == SkillKind::kDelay) {
      throw ParseError(path + "/duration", "duration required");
    }
    if (j.contains("cost")) {
      const json& c = j["cost"];
      try {
        if (c.is_number_integer()) {
          s.cost = Rational(c.get<int64_t>());
        } else if (c.is_number_float()) {
          s.cost = Rational::parse(c.dump());
        } else if (c.is_string()) {
          s.cost = Rational::parse(c.get<std::string>());
        } else {
          throw ParseError(path + "/cost", "expected a number or \"a/b\" string");
        }
      } catch (const PreconditionError& e) {
        throw ParseError(path + "/cost", e.what());
      } catch (const ParseError& e) {
        if (!e.path().empty()) throw;
        throw ParseError(path + "/cost", e.what());
      }
    }
    if (j.contains("actors")) {
      const json& a = j["actors"];
      expect_array(a, path + "/actors");
      for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number_integer()) throw ParseError(at(path + "/actors", i), "expected an integer");
        s.actors.push_back(a[i].get<int>());
      }
    }
    if (j.contains("constraints")) {
      const json& cs = j["constraints"];
      expect_array(cs, path + "/constraints");
      for (size_t i = 0; i < cs.size(); ++i) {
        const std::string p = at(path + "/constraints", i);
        expect_object(cs[i], p);
        check_keys(cs[i], p, {"fluent", "rel"});
        ConstraintSpec c;
        c.fluent = string(require(cs[i], p, "fluent"), p + "/fluent");
        const std::string rel = string(require(cs[i], p, "rel"), p + "/rel");
        auto r = constraint_rel_from_string(rel);
        if (!r) throw ParseError(p + "/rel", "unknown relation '" + rel + "'");
        c.rel = *r;
        s.constraints.push_back(std::move(c));
      }
    }
    if (j.contains("raises")) s.raises = strings(j["raises"], path + "/raises");
    return s;
  }

  // Duplicate names and dangling references are structural errors; the
  // semantic requirements are left to validate_domain.
  static void check_names(const Domain& d) {
    std::map<std::string, size_t> seen;
    for (size_t i = 0; i < d.fluents.size(); ++i) {
      if (!seen.emplace(d.fluents[i].name, i).second) {
        throw ParseError(at("/fluents", i) + "/name", "duplicate fluent '" + d.fluents[i].name + "'");
      }
    }
    seen.clear();
    for (size_t i = 0; i < d.skills.size(); ++i) {
      if (!seen.emplace(d.skills[i].name, i).second) {
        throw ParseError(at("/skills", i) + "/name", "duplicate skill '" + d.skills[i].name + "'");
      }
    }
    seen.clear();
    for (size_t i = 0; i < d.temporal_actions.size(); ++i) {
      const auto& name = d.temporal_actions[i].name;
      if (!seen.emplace(name, i).second) {
        throw ParseError(at("/temporal_actions", i) + "/name",
                         "duplicate temporal action '" + name + "'");
      }
    }
    auto fluent = [&](const std::string& name, const std::string& path) {
      if (d.find_fluent(name) == nullptr) {
        throw ParseError(path, "dangling reference to fluent '" + name + "'");
      }
    };
    for (size_t i = 0; i < d.skills.size(); ++i) {
      const Skill& s = d.skills[i];
      const std::string p = at("/skills", i);
      for (size_t k = 0; k < s.raises.size(); ++k) fluent(s.raises[k], at(p + "/raises", k));
      for (size_t k = 0; k < s.constraints.size(); ++k) {
        fluent(s.constraints[k].fluent, at(p + "/constraints", k) + "/fluent");
      }
    }
    for (size_t i = 0; i < d.interference.size(); ++i) {
      fluent(d.interference[i].first, at("/interference", i) + "/0");
      fluent(d.interference[i].second, at("/interference", i) + "/1");
    }
    for (size_t i = 0; i < d.init.size(); ++i) fluent(d.init[i], at("/init", i));
    for (size_t i = 0; i < d.goal.size(); ++i) fluent(d.goal[i], at("/goal", i));
    for (size_t i = 0; i < d.temporal_actions.size(); ++i) {
      const auto& ta = d.temporal_actions[i];
      for (size_t k = 0; k < ta.skills.size(); ++k) {
        if (d.find_skill(ta.skills[k]) == nullptr) {
          throw ParseError(at(at("/temporal_actions", i) + "/skills", k),
                           "dangling reference to skill '" + ta.skills[k] + "'");
        }
      }
    }
  }

  bool strict_;
};

}  // namespace

Domain parse_domain(std::string_view text, bool strict) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  return Reader(strict).domain(j);
}

std::string serialize_domain(const Domain& d) {
  json j = json::object();
  j["fluents"] = json::array();
  for (const auto& f : d.fluents) {
    j["fluents"].push_back(
        {{"name", f.name}, {"role", f.role == FluentRole::kResource ? "resource" : "ordinary"}});
  }
  j["actors"] = d.actors;
  j["skills"] = json::array();
  for (const auto& s : d.skills) {
    json js = {{"name", s.name}, {"kind", s.kind == SkillKind::kTimer ? "timer" : "delay"}};
    if (s.duration) js["duration"] = *s.duration;
    if (s.cost.den() == 1) {
      js["cost"] = s.cost.num();
    } else {
      js["cost"] = s.cost.str();
    }
    if (!s.actors.empty()) js["actors"] = s.actors;
    js["constraints"] = json::array();
    for (const auto& c : s.constraints) {
      js["constraints"].push_back({{"fluent", c.fluent}, {"rel", std::string(to_string(c.rel))}});
    }
    js["raises"] = s.raises;
    j["skills"].push_back(std::move(js));
  }
  j["interference"] = json::array();
  for (const auto& [a, b] : d.interference) j["interference"].push_back({a, b});
  j["temporal_actions"] = json::array();
  for (const auto& ta : d.temporal_actions) {
    j["temporal_actions"].push_back({{"name", ta.name}, {"skills", ta.skills}});
  }
  j["init"] = d.init;
  j["goal"] = d.goal;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Static validation

std::vector<Diagnostic> validate_domain(const Domain& d) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string rule, std::string message) {
    out.push_back({std::move(rule), std::move(message)});
  };
  auto unique = [&](const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) report("unique-names", std::string("duplicate ") + what + " '" + n + "'");
    }
  };
  std::vector<std::string> names;
  for (const auto& f : d.fluents) names.push_back(f.name);
  unique(names, "fluent");
  names.clear();
  for (const auto& s : d.skills) names.push_back(s.name);
  unique(names, "skill");
  names.clear();
  for (const auto& t : d.temporal_actions) names.push_back(t.name);
  unique(names, "temporal action");

  if (d.actors < 1) report("actors", "actor count must be positive");

  auto known = [&](const std::string& name, const std::string& where) {
    if (d.find_fluent(name) == nullptr) {
      report("dangling-reference", where + " references unknown fluent '" + name + "'");
      return false;
    }
    return true;
  };

  for (const auto& s : d.skills) {
    const std::string where = "skill '" + s.name + "'";
    if (s.kind == SkillKind::kDelay) {
      if (!s.duration) {
        report("assumption-1", where + ": delay without a duration");
      } else if (*s.duration < 1) {
        report("assumption-1", where + ": delay duration " + std::to_string(*s.duration) +
                                   " is not a positive integer");
      }
    } else if (s.duration) {
      report("assumption-3", where + ": timer with a fixed duration");
    }
    if (s.cost < Rational(0)) report("cost", where + ": negative cost " + s.cost.str());
    for (int a : s.actors) {
      if (a < 1 || a > d.actors) {
        report("actors", where + ": actor " + std::to_string(a) + " outside 1.." + std::to_string(d.actors));
      }
    }
    for (const auto& r : s.raises) known(r, where);
    std::set<std::pair<std::string, ConstraintRel>> seen;
    for (const auto& c : s.constraints) {
      if (!known(c.fluent, where)) continue;
      if (!seen.emplace(c.fluent, c.rel).second) {
        report("constraints", where + ": repeated constraint on '" + c.fluent + "'");
      }
      const bool resource = d.find_fluent(c.fluent)->role == FluentRole::kResource;
      if (c.rel == ConstraintRel::kEquals && !resource) {
        report("equals-resource", where + ": equality with non-resource fluent '" + c.fluent + "'");
      }
    }
    for (const auto& c : s.constraints) {
      if (c.rel != ConstraintRel::kEquals) continue;
      for (const auto& c2 : s.constraints) {
        if (c2.fluent == c.fluent && c2.rel != ConstraintRel::kEquals) {
          report("constraints", where + ": '" + c.fluent + "' is both equal to and related to the action");
        }
      }
    }
    if (s.has_equals() && s.kind == SkillKind::kDelay && s.duration && *s.duration < 2) {
      report("equals-resource", where + ": resource equality needs a duration of at least 2");
    }
  }

  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [a, b] : d.interference) {
    const bool ok = known(a, "interference") & known(b, "interference");
    if (!ok) continue;
    if (a == b) {
      report("irreflexive", "interference pair ('" + a + "', '" + a + "') is reflexive");
      continue;
    }
    if (!pairs.insert(std::minmax(a, b)).second) {
      report("interference", "duplicate interference pair ('" + a + "', '" + b + "')");
    }
  }

  auto ordinary = [&](const std::vector<std::string>& list, const char* what) {
    std::set<std::string> seen;
    for (const auto& n : list) {
      if (!known(n, what)) continue;
      if (d.find_fluent(n)->role != FluentRole::kOrdinary) {
        report("init-goal-ordinary", std::string(what) + " contains resource fluent '" + n + "'");
      }
      if (!seen.insert(n).second) report("unique-names", std::string(what) + " repeats '" + n + "'");
    }
  };
  ordinary(d.init, "init");
  ordinary(d.goal, "goal");
  for (const auto& a : d.init) {
    for (const auto& b : d.init) {
      if (a < b && d.interferes(a, b)) {
        report("interference", "init contains interfering fluents '" + a + "' and '" + b + "'");
      }
    }
  }

  std::map<std::string, int> membership;
  for (const auto& ta : d.temporal_actions) {
    const std::string where = "temporal action '" + ta.name + "'";
    if (ta.skills.empty()) report("temporal-action", where + " has no skills");
    for (const auto& s : ta.skills) {
      if (d.find_skill(s) == nullptr) {
        report("dangling-reference", where + " references unknown skill '" + s + "'");
      } else if (++membership[s] > 1) {
        report("temporal-action", "skill '" + s + "' appears in more than one temporal-action slot");
      }
    }
  }
  return out;
}

std::set<std::string> lowers(const Domain& d, std::string_view skill) {
  const Skill& s = d.skill(skill);
  std::set<std::string> out;
  for (const auto& raised : s.raises) {
    for (const auto& [a, b] : d.interference) {
      if (a == raised && b != raised) out.insert(b);
      if (b == raised && a != raised) out.insert(a);
    }
  }
  return out;
}

std::set<std::string> effective_raises(const Domain& d, std::string_view skill) {
  const Skill& s = d.skill(skill);
  std::set<std::string> out(s.raises.begin(), s.raises.end());
  for (const auto& c : s.constraints) {
    if (c.rel == ConstraintRel::kEquals) out.insert(c.fluent);
  }
  return out;
}

std::set<std::string> effective_lowers(const Domain& d, std::string_view skill) {
  const Skill& s = d.skill(skill);
  std::set<std::string> out;
  for (const auto& raised : effective_raises(d, skill)) {
    for (const auto& [a, b] : d.interference) {
      if (a == raised && b != raised) out.insert(b);
      if (b == raised && a != raised) out.insert(a);
    }
  }
  for (const auto& c : s.constraints) {
    if (c.rel == ConstraintRel::kEquals) out.insert(c.fluent);
  }
  return out;
}

}  // namespace ilplan
