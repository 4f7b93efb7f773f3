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

// ilplan command-line tool.
// Exit codes: 0 found / valid, 1 exhausted N / invalid plan, 2 resource
// limit, 3 input or usage error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
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

namespace fs = std::filesystem;
using namespace ilplan;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitExhausted = 1;
constexpr int kExitResource = 2;
constexpr int kExitInput = 3;

struct CommonFlags {
  int max_n = 20;
  std::optional<int> max_copies;
  std::optional<int> horizon;
  std::string objective = "none";
  double time_budget = 300;
  uint64_t seed = 0;
  bool geometric = false;
  bool strict_io = true;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--max-n", f.max_n, "Largest number of stages probed")->check(CLI::PositiveNumber);
  cmd->add_option("--max-copies", f.max_copies, "Copies per action (default N-1)")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", f.horizon, "Latest time point (default N * longest delay)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--objective", f.objective, "Objective")
      ->check(CLI::IsMember({"none", "makespan", "costs"}));
  cmd->add_option("--time-budget", f.time_budget, "Seconds for the whole search")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Value-order seed (0 = false first)");
  cmd->add_flag("--geometric-n", f.geometric, "Probe N = 1, 2, 4, ...");
  cmd->add_flag("--strict-io,!--no-strict-io", f.strict_io, "Reject unknown document keys");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

ObjectiveKind objective_of(const CommonFlags& f) { return *objective_kind_from_string(f.objective); }

SearchLimits limits_of(const CommonFlags& f) {
  SearchLimits lim;
  lim.max_n = f.max_n;
  lim.copy_cap = f.max_copies;
  lim.horizon = f.horizon;
  lim.time_budget_s = f.time_budget;
  lim.geometric = f.geometric;
  return lim;
}

SolverConfig config_of(const CommonFlags& f) {
  SolverConfig cfg;
  cfg.time_budget_s = f.time_budget;
  cfg.seed = f.seed;
  return cfg;
}

int exit_code(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::kFound: return kExitFound;
    case SearchOutcome::kExhaustedN: return kExitExhausted;
    case SearchOutcome::kResourceLimit: return kExitResource;
  }
  return kExitInput;
}

// "3" or "1..5".
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const int lo = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument(text);
    const std::string rest = text.substr(dots + 2);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size() || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw PreconditionError("bad range '" + text + "' (expected K or LO..HI)");
  }
}

std::string instance_id(BenchType t, int copies, std::optional<int> height) {
  std::string id = "gadget-" + std::string(to_string(t)) + "-" + std::to_string(copies);
  if (height) id += "-h" + std::to_string(*height);
  return id;
}

int cmd_gen(const std::string& type, int copies, std::optional<int> height, const std::string& out) {
  const auto t = bench_type_from_string(type);
  if (!t) throw PreconditionError("unknown type '" + type + "' (I, II or III)");
  emit(out, serialize_domain(gen_cushing({*t, copies, height, {}})));
  return 0;
}

int cmd_encode(const std::string& path, int n, const CommonFlags& f, const std::string& out) {
  const Domain d = parse_domain(read_file(path), f.strict_io);
  const auto diags = validate_domain(d);
  if (!diags.empty()) throw PreconditionError("invalid domain: " + diags.front().message);
  const int k = f.max_copies.value_or(std::max(1, n - 1));
  const int h = f.horizon ? std::max(*f.horizon, n) : default_horizon(d, n);
  emit(out, export_model(encode(instantiate(d, n, k, h), objective_of(f))));
  return 0;
}

std::string default_plan_path(const std::string& domain_path) {
  fs::path p(domain_path);
  p.replace_extension(".plan.json");
  return p.string();
}

int cmd_solve(const std::string& path, const CommonFlags& f, std::string out, bool show_diagram) {
  const Domain d = parse_domain(read_file(path), f.strict_io);
  const SearchResult r = find_plan(d, objective_of(f), limits_of(f), config_of(f));
  const RunRecord rec = make_record(fs::path(path).stem().string(), d, r);
  if (r.plan) {
    if (out.empty()) out = default_plan_path(path);
    emit(out, plan_to_json(*r.plan));
    if (show_diagram && r.diagram) std::cerr << render_diagram(*r.diagram);
  }
  if (!r.reason.empty()) std::cerr << "note: " << r.reason << "\n";
  std::cout << to_json_line(rec) << "\n";
  if (rec.verdict == "invalid") throw InternalError("solver produced a plan that fails validation");
  return exit_code(r.outcome);
}

int cmd_validate(const std::string& domain_path, const std::string& plan_path, bool json,
                 bool strict_io) {
  const Domain d = parse_domain(read_file(domain_path), strict_io);
  const Plan p = plan_from_json(read_file(plan_path));
  const ValidationReport report = validate_plan(d, p);
  std::cout << (json ? report_json(report) + "\n" : report_text(report));
  return report.valid() ? kExitFound : kExitExhausted;
}

int cmd_bench(const std::string& type, const std::string& copies, const std::string& heights,
              CommonFlags f, const std::string& csv, int jobs) {
  const auto t = bench_type_from_string(type);
  if (!t) throw PreconditionError("unknown type '" + type + "' (I, II or III)");
  const auto [c_lo, c_hi] = parse_range(copies);
  if (c_lo < 1) throw PreconditionError("copies must be >= 1");
  std::vector<std::optional<int>> hs;
  if (*t == BenchType::kI) {
    if (!heights.empty()) throw PreconditionError("Type I takes no height");
    hs.push_back(std::nullopt);
  } else {
    const auto [h_lo, h_hi] = parse_range(heights.empty() ? "2" : heights);
    for (int h = h_lo; h <= h_hi; ++h) hs.push_back(h);
  }
  if (!f.max_copies) f.max_copies = 1;

  struct Job {
    int copies;
    std::optional<int> height;
  };
  std::vector<Job> todo;
  for (int c = c_lo; c <= c_hi; ++c) {
    for (auto h : hs) todo.push_back({c, h});
  }
  // Specs are checked before any solving starts.
  std::vector<Domain> domains;
  for (const auto& j : todo) domains.push_back(gen_cushing({*t, j.copies, j.height, {}}));

  auto run = [&](size_t i) {
    const SearchResult r = find_plan(domains[i], objective_of(f), limits_of(f), config_of(f));
    RunRecord rec = make_record(instance_id(*t, todo[i].copies, todo[i].height), domains[i], r);
    rec.type = std::string(to_string(*t));
    rec.copies = todo[i].copies;
    rec.height = todo[i].height;
    return rec;
  };
  std::vector<RunRecord> records(todo.size());
  const size_t width = static_cast<size_t>(std::max(1, jobs));
  for (size_t base = 0; base < todo.size(); base += width) {
    std::vector<std::future<RunRecord>> batch;
    for (size_t i = base; i < std::min(todo.size(), base + width); ++i) {
      batch.push_back(std::async(std::launch::async, run, i));
    }
    for (size_t i = 0; i < batch.size(); ++i) {
      records[base + i] = batch[i].get();
      std::cerr << to_csv_row(records[base + i]) << "\n";
    }
  }

  const bool fresh = csv == "-" || !fs::exists(csv) || fs::file_size(csv) == 0;
  std::string text;
  if (fresh) text += std::string(kCsvHeader) + "\n";
  for (const auto& rec : records) text += to_csv_row(rec) + "\n";
  if (csv == "-") {
    std::cout << text;
  } else {
    std::ofstream out(csv, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv);
    out << text;
  }
  int worst = kExitFound;
  for (const auto& rec : records) {
    if (rec.verdict == "invalid") throw InternalError(rec.instance + ": plan fails validation");
    if (rec.verdict == "resource-limit") worst = kExitResource;
    if (rec.verdict == "exhausted-n" && worst == kExitFound) worst = kExitExhausted;
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval-logic planner: generate, encode, solve, validate, benchmark"};
  app.require_subcommand(1);

  std::string gen_type = "I", gen_out;
  int gen_copies = 1;
  std::optional<int> gen_height;
  auto* gen = app.add_subcommand("gen", "Write a gadget benchmark domain");
  gen->add_option("--type", gen_type, "I, II or III")->required();
  gen->add_option("--copies", gen_copies, "Number of gadget copies")->check(CLI::PositiveNumber);
  gen->add_option("--height", gen_height, "Levels per copy (Types II/III)");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  CommonFlags enc_flags;
  std::string enc_domain, enc_out;
  int enc_n = 1;
  auto* enc = app.add_subcommand("encode", "Write the model for a fixed number of stages");
  enc->add_option("domain", enc_domain, "Domain file")->required();
  enc->add_option("-n,--stages", enc_n, "Number of stages")->check(CLI::PositiveNumber);
  enc->add_option("-o,--out", enc_out, "Output file (default stdout)");
  add_common(enc, enc_flags);

  CommonFlags solve_flags;
  std::string solve_domain, solve_out;
  bool solve_diagram = false;
  auto* slv = app.add_subcommand("solve", "Search for a plan; prints one JSON run record");
  slv->add_option("domain", solve_domain, "Domain file")->required();
  slv->add_option("-o,--out", solve_out, "Plan file (default <domain>.plan.json, - for stdout)");
  slv->add_flag("--diagram", solve_diagram, "Print the timing diagram to stderr");
  add_common(slv, solve_flags);

  std::string val_domain, val_plan;
  bool val_json = false, val_strict = true;
  auto* val = app.add_subcommand("validate", "Check a plan against a domain");
  val->add_option("domain", val_domain, "Domain file")->required();
  val->add_option("plan", val_plan, "Plan file")->required();
  val->add_flag("--json", val_json, "JSON report");
  val->add_flag("--strict-io,!--no-strict-io", val_strict, "Reject unknown document keys");

  CommonFlags bench_flags;
  std::string bench_type = "I", bench_copies = "1", bench_heights, bench_csv = "-";
  int bench_jobs = 1;
  auto* bench = app.add_subcommand("bench", "Solve a gadget sweep and append rows to a CSV");
  bench->add_option("--type", bench_type, "I, II or III")->required();
  bench->add_option("--copies", bench_copies, "K or LO..HI");
  bench->add_option("--height", bench_heights, "K or LO..HI (Types II/III, default 2)");
  bench->add_option("--csv", bench_csv, "CSV file to append to (- for stdout)");
  bench->add_option("--jobs", bench_jobs, "Instances solved in parallel")->check(CLI::PositiveNumber);
  add_common(bench, bench_flags);
  bench->get_option("--max-copies")->description("Copies per action (default 1 for bench)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*gen) return cmd_gen(gen_type, gen_copies, gen_height, gen_out);
    if (*enc) return cmd_encode(enc_domain, enc_n, enc_flags, enc_out);
    if (*slv) return cmd_solve(solve_domain, solve_flags, solve_out, solve_diagram);
    if (*val) return cmd_validate(val_domain, val_plan, val_json, val_strict);
    if (*bench) return cmd_bench(bench_type, bench_copies, bench_heights, bench_flags, bench_csv, bench_jobs);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
