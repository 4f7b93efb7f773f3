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

#include "ilplan/run_record.hpp"

#include <cstdio>

#include "json.hpp"
#include "ilplan/validator.hpp"

namespace ilplan {

RunRecord make_record(std::string instance, const Domain& d, const SearchResult& r) {
  RunRecord rec;
  rec.instance = std::move(instance);
  rec.nodes = r.nodes();
  rec.wall_ms = r.wall_ms;
  if (!r.probes.empty()) {
    rec.bool_vars = r.probes.back().bool_vars;
    rec.int_vars = r.probes.back().int_vars;
  }
  rec.verdict = std::string(to_string(r.outcome));
  if (r.outcome == SearchOutcome::kFound && r.plan) {
    rec.n_found = r.n;
    if (r.plan->objective) rec.objective = r.plan->objective->value;
    if (!validate_plan(d, *r.plan).valid()) rec.verdict = "invalid";
  }
  return rec;
}

namespace {

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

template <class T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string to_csv_row(const RunRecord& r) {
  // Fields never contain commas: instance ids are generated or file stems
  // with commas replaced.
  std::string instance = r.instance;
  for (char& c : instance) {
    if (c == ',' || c == '\n') c = '_';
  }
  return instance + "," + r.type + "," + opt(r.copies) + "," + opt(r.height) + "," +
         std::to_string(r.n_found) + "," + std::to_string(r.bool_vars) + "," +
         std::to_string(r.int_vars) + "," + std::to_string(r.nodes) + "," + ms(r.wall_ms) + "," +
         (r.objective ? r.objective->str() : std::string()) + "," + r.verdict;
}

std::string to_json_line(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  if (!r.type.empty()) j["type"] = r.type;
  if (r.copies) j["copies"] = *r.copies;
  if (r.height) j["height"] = *r.height;
  j["n_found"] = r.n_found;
  j["bool_vars"] = r.bool_vars;
  j["int_vars"] = r.int_vars;
  j["nodes"] = r.nodes;
  j["wall_ms"] = r.wall_ms;
  j["objective"] = r.objective ? nlohmann::ordered_json(r.objective->str()) : nlohmann::ordered_json();
  j["verdict"] = r.verdict;
  return j.dump();
}

}  // namespace ilplan
