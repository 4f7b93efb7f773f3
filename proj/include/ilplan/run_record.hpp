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

// One summary line per solve: JSON for `solve`, a CSV row for `bench`.

#ifndef ILPLAN_RUN_RECORD_HPP_
#define ILPLAN_RUN_RECORD_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "ilplan/domain.hpp"
#include "ilplan/search.hpp"

namespace ilplan {

struct RunRecord {
  std::string instance;
  std::string type;            // benchmark type, empty for plain domains
  std::optional<int> copies;
  std::optional<int> height;
  int n_found = 0;             // 0 unless a plan was found
  int bool_vars = 0;           // of the last probe
  int int_vars = 0;
  int64_t nodes = 0;           // summed over probes
  double wall_ms = 0;
  std::optional<Rational> objective;
  // found | invalid | exhausted-n | resource-limit; "invalid" marks a found
  // plan rejected by validate_plan.
  std::string verdict;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// Validates the plan (if any) against d to fill the verdict.
RunRecord make_record(std::string instance, const Domain& d, const SearchResult& r);

inline constexpr std::string_view kCsvHeader =
    "instance,type,copies,height,n_found,bool_vars,int_vars,nodes,wall_ms,objective,verdict";

std::string to_csv_row(const RunRecord& r);
std::string to_json_line(const RunRecord& r);

}  // namespace ilplan

#endif  // ILPLAN_RUN_RECORD_HPP_
