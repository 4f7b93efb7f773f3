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
"""Interval-logic planner. Domains and plans may be given as JSON text or dicts."""

import json as _json

from . import _core
from ._core import Error, InternalError, ParseError, PreconditionError

__all__ = [
    "Error", "InternalError", "ParseError", "PreconditionError",
    "encode", "gen_cushing", "render_diagram", "solve", "validate_domain", "validate_plan",
]


def _text(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def gen_cushing(type="I", copies=1, height=None):
    """Gadget benchmark domain as a dict."""
    return _json.loads(_core.gen_cushing(type, copies, height))


def validate_domain(domain, strict=True):
    return _core.validate_domain(_text(domain), strict)


def encode(domain, n, max_copies=None, horizon=None, objective="none", strict=True):
    return _core.encode(_text(domain), n, max_copies, horizon, objective, strict)


def solve(domain, max_n=20, max_copies=None, horizon=None, objective="none",
          time_budget=300.0, geometric=False, seed=0, strict=True, instance="domain"):
    """Search for a plan. The returned dict holds the plan as a dict (or None)."""
    out = _core.solve(_text(domain), max_n, max_copies, horizon, objective, time_budget,
                      geometric, seed, strict, instance)
    if out["plan"] is not None:
        out["plan"] = _json.loads(out["plan"])
    return out


def validate_plan(domain, plan, strict=True):
    return _core.validate_plan(_text(domain), _text(plan), strict)


def render_diagram(plan):
    return _core.render_diagram(_text(plan))
