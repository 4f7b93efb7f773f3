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

// Python module ilplan._core. Domains and plans cross the boundary as JSON
// text; results come back as dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "ilplan/benchgen.hpp"
#include "ilplan/csp_model.hpp"
#include "ilplan/domain.hpp"
#include "ilplan/encoder.hpp"
#include "ilplan/error.hpp"
#include "ilplan/plan.hpp"
#include "ilplan/run_record.hpp"
#include "ilplan/search.hpp"
#include "ilplan/theory.hpp"
#include "ilplan/validator.hpp"

namespace py = pybind11;
using namespace ilplan;

namespace {

ObjectiveKind objective(const std::string& name) {
  const auto k = objective_kind_from_string(name);
  if (!k) throw PreconditionError("unknown objective '" + name + "' (none, makespan, costs)");
  return *k;
}

py::object from_json(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

std::string gen(const std::string& type, int copies, std::optional<int> height) {
  const auto t = bench_type_from_string(type);
  if (!t) throw PreconditionError("unknown type '" + type + "' (I, II or III)");
  return serialize_domain(gen_cushing({*t, copies, height, {}}));
}

std::vector<std::pair<std::string, std::string>> check_domain(const std::string& text, bool strict) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& g : validate_domain(parse_domain(text, strict))) out.emplace_back(g.rule, g.message);
  return out;
}

std::string encode_text(const std::string& text, int n, std::optional<int> max_copies,
                        std::optional<int> horizon, const std::string& obj, bool strict) {
  const Domain d = parse_domain(text, strict);
  const auto diags = validate_domain(d);
  if (!diags.empty()) throw PreconditionError("invalid domain: " + diags.front().message);
  const int k = max_copies.value_or(std::max(1, n - 1));
  const int h = horizon ? std::max(*horizon, n) : default_horizon(d, n);
  return export_model(encode(instantiate(d, n, k, h), objective(obj)));
}

py::dict solve_text(const std::string& text, int max_n, std::optional<int> max_copies,
                    std::optional<int> horizon, const std::string& obj, double time_budget,
                    bool geometric, uint64_t seed, bool strict, const std::string& instance) {
  const Domain d = parse_domain(text, strict);
  SearchLimits lim;
  lim.max_n = max_n;
  lim.copy_cap = max_copies;
  lim.horizon = horizon;
  lim.time_budget_s = time_budget;
  lim.geometric = geometric;
  SolverConfig cfg;
  cfg.time_budget_s = time_budget;
  cfg.seed = seed;
  const ObjectiveKind kind = objective(obj);
  SearchResult r;
  {
    py::gil_scoped_release release;
    r = find_plan(d, kind, lim, cfg);
  }
  py::dict out;
  out["outcome"] = std::string(to_string(r.outcome));
  out["n"] = r.n;
  out["optimal"] = r.optimal;
  out["minimal_n"] = r.minimal_n;
  out["reason"] = r.reason;
  out["plan"] = r.plan ? py::object(py::str(plan_to_json(*r.plan))) : py::object(py::none());
  out["diagram"] = r.diagram ? py::object(py::str(render_diagram(*r.diagram))) : py::object(py::none());
  out["record"] = from_json(to_json_line(make_record(instance, d, r)));
  return out;
}

py::object validate_text(const std::string& domain, const std::string& plan, bool strict) {
  return from_json(report_json(validate_plan(parse_domain(domain, strict), plan_from_json(plan))));
}

std::string render_text(const std::string& plan) { return render_diagram(diagram_of(plan_from_json(plan))); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interval-logic planner core";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<InternalError>(m, "InternalError", error.ptr());

  m.def("gen_cushing", &gen, py::arg("type"), py::arg("copies") = 1, py::arg("height") = py::none(),
        "Gadget benchmark domain as JSON text.");
  m.def("validate_domain", &check_domain, py::arg("domain"), py::arg("strict") = true,
        "List of (rule, message) diagnostics; empty when the domain is well formed.");
  m.def("encode", &encode_text, py::arg("domain"), py::arg("n"), py::arg("max_copies") = py::none(),
        py::arg("horizon") = py::none(), py::arg("objective") = "none", py::arg("strict") = true,
        "Model dump for N stages.");
  m.def("solve", &solve_text, py::arg("domain"), py::arg("max_n") = 20,
        py::arg("max_copies") = py::none(), py::arg("horizon") = py::none(),
        py::arg("objective") = "none", py::arg("time_budget") = 300.0, py::arg("geometric") = false,
        py::arg("seed") = 0, py::arg("strict") = true, py::arg("instance") = "domain",
        "Search over N; returns outcome, n, optimal, minimal_n, reason, plan, diagram, record.");
  m.def("validate_plan", &validate_text, py::arg("domain"), py::arg("plan"), py::arg("strict") = true,
        "Validation report as a dict with 'valid' and 'violations'.");
  m.def("render_diagram", &render_text, py::arg("plan"), "ASCII timing diagram of a plan.");
}
