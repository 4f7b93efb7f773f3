#include <algorithm>
#include <random>

#include "doctest.h"
#include "ilplan/domain.hpp"
#include "ilplan/error.hpp"

using namespace ilplan;

namespace {

const char* kMinimal = R"({
  "fluents": ["g"],
  "skills": [{"name": "a", "kind": "delay", "duration": 2, "raises": ["g"]}],
  "goal": ["g"]
})";

bool has_rule(const std::vector<Diagnostic>& ds, std::string_view rule) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.rule == rule; });
}

}  // namespace

TEST_CASE("minimal document") {
  Domain d = parse_domain(kMinimal);
  REQUIRE(d.skills.size() == 1);
  CHECK(d.skills[0].kind == SkillKind::kDelay);
  CHECK(d.skills[0].duration == 2);
  CHECK(d.skills[0].cost == Rational(1));
  CHECK(d.actors == 1);
  CHECK(d.in_goal("g"));
  CHECK_FALSE(d.in_init("g"));
  CHECK(validate_domain(d).empty());
}

TEST_CASE("parse errors carry a field path") {
  auto err = [](const char* text) -> std::string {
    try {
      parse_domain(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(err(R"({"fluents": [], "skills": [{"name": "a", "kind": "delay"}]})") ==
        "/skills/0/duration: duration required");
  CHECK(err(R"({"fluents": [], "skills": [], "colour": 1})") == "/colour: unknown key");
  CHECK(err(R"({"fluents": ["p", "p"], "skills": []})") == "/fluents/1/name: duplicate fluent 'p'");
  CHECK(err(R"({"fluents": [], "skills": [], "goal": ["q"]})") ==
        "/goal/0: dangling reference to fluent 'q'");
  CHECK(err(R"({"fluents": [], "skills": [{"name": "a", "kind": "sometimes"}]})") ==
        "/skills/0/kind: expected \"timer\" or \"delay\"");
  CHECK(err(R"({"fluents": ["p"], "skills": [{"name": "a", "kind": "timer",
                "constraints": [{"fluent": "p", "rel": "during"}]}]})") ==
        "/skills/0/constraints/0/rel: unknown relation 'during'");
  CHECK(err("{") .rfind("malformed JSON", 0) == 0);
  // Non-strict mode ignores unknown keys.
  CHECK_NOTHROW(parse_domain(R"({"fluents": [], "skills": [], "colour": 1})", false));
}

TEST_CASE("costs accept integers, decimals and fractions") {
  Domain d = parse_domain(R"({"fluents": [], "skills": [
    {"name": "a", "kind": "timer", "cost": 3},
    {"name": "b", "kind": "timer", "cost": 0.25},
    {"name": "c", "kind": "timer", "cost": "2/6"}]})");
  CHECK(d.skills[0].cost == Rational(3));
  CHECK(d.skills[1].cost == Rational(1, 4));
  CHECK(d.skills[2].cost == Rational(1, 3));
}

TEST_CASE("validate_domain diagnostics") {
  Domain d = parse_domain(kMinimal);
  d.skills[0].duration = 0;
  CHECK(has_rule(validate_domain(d), "assumption-1"));

  d = parse_domain(kMinimal);
  d.interference.emplace_back("g", "g");
  CHECK(has_rule(validate_domain(d), "irreflexive"));

  d = parse_domain(kMinimal);
  d.skills[0].kind = SkillKind::kTimer;
  CHECK(has_rule(validate_domain(d), "assumption-3"));

  d = parse_domain(kMinimal);
  d.skills[0].constraints.push_back({"g", ConstraintRel::kEquals});
  CHECK(has_rule(validate_domain(d), "equals-resource"));

  d = parse_domain(kMinimal);
  d.fluents[0].role = FluentRole::kResource;
  CHECK(has_rule(validate_domain(d), "init-goal-ordinary"));

  d = parse_domain(kMinimal);
  d.skills[0].actors = {2};
  CHECK(has_rule(validate_domain(d), "actors"));

  d = parse_domain(kMinimal);
  d.temporal_actions.push_back({"t", {}});
  CHECK(has_rule(validate_domain(d), "temporal-action"));
}

TEST_CASE("lowers follows interference of raised fluents") {
  Domain d = parse_domain(R"({"fluents": ["p", "q", "r"], "skills": [
      {"name": "a", "kind": "delay", "duration": 1, "raises": ["p"]},
      {"name": "b", "kind": "delay", "duration": 1, "raises": []}],
      "interference": [["p", "q"]]})");
  CHECK(lowers(d, "a") == std::set<std::string>{"q"});
  CHECK(lowers(d, "b").empty());
  d.interference.clear();
  CHECK(lowers(d, "a").empty());
  CHECK_THROWS_AS(lowers(d, "zz"), PreconditionError);
}

TEST_CASE("equality constraints register raise and lower") {
  Domain d = parse_domain(R"({"fluents": [{"name": "rho", "role": "resource"}, "x"], "skills": [
      {"name": "a", "kind": "delay", "duration": 4,
       "constraints": [{"fluent": "rho", "rel": "equals"}]}],
      "interference": [["rho", "x"]]})");
  CHECK(validate_domain(d).empty());
  CHECK(effective_raises(d, "a") == std::set<std::string>{"rho"});
  CHECK(effective_lowers(d, "a") == std::set<std::string>{"rho", "x"});
  CHECK(lowers(d, "a").empty());
}

TEST_CASE("lowers is monotone in interference") {
  std::mt19937 rng(7);
  const std::vector<std::string> names{"f0", "f1", "f2", "f3", "f4"};
  for (int trial = 0; trial < 200; ++trial) {
    Domain d;
    for (const auto& n : names) d.fluents.push_back({n});
    Skill s;
    s.name = "a";
    s.duration = 1;
    for (const auto& n : names) {
      if (rng() % 2) s.raises.push_back(n);
    }
    d.skills.push_back(s);
    for (int i = 0; i < 3; ++i) {
      d.interference.emplace_back(names[rng() % 5], names[rng() % 5]);
    }
    const auto before = lowers(d, "a");
    d.interference.emplace_back(names[rng() % 5], names[rng() % 5]);
    const auto after = lowers(d, "a");
    CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  }
}

TEST_CASE("serialize then parse is the identity") {
  Domain d = parse_domain(R"({"fluents": ["p", {"name": "rho", "role": "resource"}, "g"],
    "actors": 2,
    "skills": [
      {"name": "a", "kind": "delay", "duration": 4, "cost": "3/2", "actors": [2],
       "constraints": [{"fluent": "rho", "rel": "equals"}, {"fluent": "p", "rel": "overlapped-by"}],
       "raises": ["g"]},
      {"name": "b", "kind": "timer", "cost": 0, "constraints": [{"fluent": "p", "rel": "contains"}]}],
    "interference": [["p", "g"]],
    "temporal_actions": [{"name": "t", "skills": ["a"]}],
    "init": ["p"], "goal": ["g"]})");
  const std::string text = serialize_domain(d);
  CHECK(parse_domain(text) == d);
  CHECK(serialize_domain(parse_domain(text)) == text);
}
