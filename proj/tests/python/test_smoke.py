# Copyright 2026 The ilplan Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import copy

import pytest

import ilplan


def test_gen_and_solve_type_i():
    domain = ilplan.gen_cushing("I", 2)
    assert len(domain["skills"]) == 6
    assert ilplan.validate_domain(domain) == []
    out = ilplan.solve(domain, max_copies=1, instance="gadget-I-2")
    assert out["outcome"] == "found"
    assert out["n"] == 4
    assert out["minimal_n"]
    assert out["record"]["instance"] == "gadget-I-2"
    assert out["record"]["verdict"] == "found"
    report = ilplan.validate_plan(domain, out["plan"])
    assert report == {"valid": True, "violations": []}
    assert "rho1_c1" in ilplan.render_diagram(out["plan"])


def test_tampered_plan_reports_frame():
    domain = ilplan.gen_cushing("I", 1)
    plan = ilplan.solve(domain)["plan"]
    bad = copy.deepcopy(plan)
    bad["actions"] = [a for a in bad["actions"] if not a["skill"].startswith("a3")]
    report = ilplan.validate_plan(domain, bad)
    assert not report["valid"]
    assert "frame" in {v["rule"] for v in report["violations"]}


def test_makespan_objective():
    domain = {
        "fluents": [{"name": "p", "role": "ordinary"}],
        "skills": [
            {"name": "slow", "kind": "delay", "duration": 4, "raises": ["p"]},
            {"name": "fast", "kind": "delay", "duration": 2, "raises": ["p"]},
        ],
        "goal": ["p"],
    }
    out = ilplan.solve(domain, objective="makespan")
    assert out["outcome"] == "found"
    assert out["optimal"]
    assert out["plan"]["objective"]["value"] == 2
    assert [a["skill"] for a in out["plan"]["actions"]] == ["fast"]


def test_exhausted_and_encode():
    domain = {"fluents": [{"name": "p", "role": "ordinary"}],
              "skills": [{"name": "a", "kind": "delay", "duration": 2}],
              "goal": ["p"]}
    assert ilplan.solve(domain, max_n=3)["outcome"] == "exhausted-n"
    text = ilplan.encode(domain, 2)
    assert text.startswith("ilplan-csp")
    assert text == ilplan.encode(domain, 2)


def test_errors():
    with pytest.raises(ilplan.ParseError):
        ilplan.solve("{")
    with pytest.raises(ilplan.PreconditionError):
        ilplan.gen_cushing("II", 1)
    with pytest.raises(ilplan.ParseError):
        ilplan.solve({"fluents": [], "skills": [], "goal": ["nope"]})
    with pytest.raises(ilplan.PreconditionError):
        ilplan.solve(ilplan.gen_cushing("I"), max_n=0)
    assert issubclass(ilplan.ParseError, ilplan.Error)
