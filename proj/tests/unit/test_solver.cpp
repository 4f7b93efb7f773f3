#include <random>

#include "doctest.h"
#include "ilplan/csp_model.hpp"
#include "ilplan/error.hpp"
#include "ilplan/solver.hpp"
#include "random_models.hpp"

using namespace ilplan;

TEST_CASE("documented examples") {
  CspModel unsat;
  const int x = unsat.add_int(0, 3, "x");
  unsat.add_linear({{1, int_var(x)}}, Cmp::kGe, 2);
  unsat.add_linear({{1, int_var(x)}}, Cmp::kLe, 1);
  CHECK(solve(unsat).status == SolveStatus::kUnsat);
  CHECK(brute_force_solve(unsat).status == SolveStatus::kUnsat);

  CspModel taut;
  const int b = taut.add_bool("b");
  taut.add_clause({Literal::pos(b), Literal::neg(b)});
  CHECK(solve(taut).status == SolveStatus::kSat);
  CHECK(brute_force_solve(taut).status == SolveStatus::kSat);
}

TEST_CASE("optimization returns the optimum") {
  CspModel m;
  const int x = m.add_int(0, 10, "x");
  const int y = m.add_int(0, 10, "y");
  m.add_linear({{1, int_var(x)}, {1, int_var(y)}}, Cmp::kGe, 7);
  m.add_linear({{1, int_var(x)}, {-1, int_var(y)}}, Cmp::kEq, 3);
  m.set_objective(Objective{{{2, int_var(x)}, {1, int_var(y)}}, 0});
  const SolveResult r = solve(m);
  REQUIRE(r.status == SolveStatus::kSat);
  CHECK(r.optimal);
  CHECK(r.objective == 2 * 5 + 2);
  CHECK(brute_force_solve(m).objective == 12);
}

TEST_CASE("brute force guard") {
  CspModel m;
  for (int i = 0; i < 25; ++i) m.add_bool("b");
  CHECK(search_space_size(m) == (uint64_t{1} << 25));
  CHECK_THROWS_AS(brute_force_solve(m), PreconditionError);
}

TEST_CASE("malformed models and budgets are rejected") {
  CspModel m;
  m.add_clause({Literal::pos(0)});
  CHECK_THROWS_AS(solve(m), PreconditionError);
  CspModel ok;
  SolverConfig cfg;
  cfg.time_budget_s = 0;
  CHECK_THROWS_AS(solve(ok, cfg), PreconditionError);
}

TEST_CASE("node budget yields a resource limit") {
  CspModel m;
  // Pigeonhole 6 into 5: unsatisfiable, needs many nodes without learning.
  std::vector<std::vector<int>> p(6, std::vector<int>(5));
  for (int i = 0; i < 6; ++i) {
    for (int h = 0; h < 5; ++h) p[i][h] = m.add_bool("p");
  }
  for (int i = 0; i < 6; ++i) {
    std::vector<Literal> c;
    for (int h = 0; h < 5; ++h) c.push_back(Literal::pos(p[i][h]));
    m.add_clause(c);
  }
  for (int h = 0; h < 5; ++h) {
    std::vector<Term> t;
    for (int i = 0; i < 6; ++i) t.push_back({1, bool_var(p[i][h])});
    m.add_linear(t, Cmp::kLe, 1);
  }
  SolverConfig cfg;
  cfg.node_budget = 10;
  const SolveResult r = solve(m, cfg);
  CHECK(r.status == SolveStatus::kResourceLimit);
  CHECK(solve(m).status == SolveStatus::kUnsat);
}

TEST_CASE("solve agrees with brute force on random models") {
  std::mt19937_64 rng(2024);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 600; ++i) {
    const CspModel m = testing::random_model(rng, i % 2 == 1);
    const SolveResult oracle = brute_force_solve(m);
    for (uint64_t seed : {uint64_t{0}, uint64_t{99}}) {
      for (BranchOrder order : {BranchOrder::kActionsFirst, BranchOrder::kDeclarationOrder}) {
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.order = order;
        const SolveResult r = solve(m, cfg);
        REQUIRE(r.status == oracle.status);
        if (r.status == SolveStatus::kSat) {
          REQUIRE(check_assignment(m, *r.assignment));
          if (m.objective()) {
            REQUIRE(r.optimal);
            REQUIRE(r.objective == oracle.objective);
          }
        }
      }
    }
    (oracle.status == SolveStatus::kSat ? sat : unsat) += 1;
  }
  // Both outcomes are exercised.
  CHECK(sat > 50);
  CHECK(unsat > 50);
}

TEST_CASE("determinism") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const CspModel m = testing::random_model(rng, true);
    SolverConfig cfg;
    cfg.seed = 17;
    const SolveResult a = solve(m, cfg);
    const SolveResult b = solve(m, cfg);
    CHECK(a.status == b.status);
    CHECK(a.assignment == b.assignment);
    CHECK(a.stats.nodes == b.stats.nodes);
  }
}
