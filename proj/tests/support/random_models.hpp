// Random constraint models small enough for exhaustive enumeration.

#ifndef ILPLAN_TESTS_RANDOM_MODELS_HPP_
#define ILPLAN_TESTS_RANDOM_MODELS_HPP_

#include <random>

#include "ilplan/csp_model.hpp"

namespace ilplan::testing {

inline Literal random_literal(std::mt19937_64& rng, const CspModel& m) {
  const bool use_int = m.num_ints() > 0 && (m.num_bools() == 0 || rng() % 3 == 0);
  if (!use_int) {
    const int v = static_cast<int>(rng() % m.num_bools());
    return rng() % 2 ? Literal::pos(v) : Literal::neg(v);
  }
  const int v = static_cast<int>(rng() % m.num_ints());
  const int64_t c = m.lo(v) + static_cast<int64_t>(rng() % (m.hi(v) - m.lo(v) + 1));
  return rng() % 2 ? Literal::le(v, c) : Literal::ge(v, c);
}

inline VarRef random_var(std::mt19937_64& rng, const CspModel& m) {
  if (m.num_ints() > 0 && (m.num_bools() == 0 || rng() % 2 == 0)) {
    return int_var(static_cast<int>(rng() % m.num_ints()));
  }
  return bool_var(static_cast<int>(rng() % m.num_bools()));
}

// 2..6 Booleans, 1..3 integers over ranges of width <= 5, 3..10 constraints
// of every kind and an optional objective.
inline CspModel random_model(std::mt19937_64& rng, bool with_objective) {
  CspModel m;
  const int nb = 2 + static_cast<int>(rng() % 5);
  const int ni = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < nb; ++i) m.add_bool("b" + std::to_string(i));
  for (int i = 0; i < ni; ++i) {
    const int64_t lo = static_cast<int64_t>(rng() % 5) - 2;
    m.add_int(lo, lo + static_cast<int64_t>(rng() % 6), "x" + std::to_string(i));
  }
  const int nc = 3 + static_cast<int>(rng() % 8);
  for (int c = 0; c < nc; ++c) {
    auto lits = [&](int max) {
      std::vector<Literal> out;
      const int k = 1 + static_cast<int>(rng() % max);
      for (int i = 0; i < k; ++i) out.push_back(random_literal(rng, m));
      return out;
    };
    switch (rng() % 4) {
      case 0: m.add_clause(lits(3)); break;
      case 1: {
        std::vector<Term> terms;
        const int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) {
          terms.push_back({static_cast<int64_t>(rng() % 7) - 3, random_var(rng, m)});
        }
        const Cmp cmp = static_cast<Cmp>(rng() % 3);
        const int64_t rhs = static_cast<int64_t>(rng() % 9) - 4;
        std::vector<Literal> enforce;
        if (rng() % 2) enforce = lits(2);
        m.add_linear(std::move(terms), cmp, rhs, std::move(enforce));
        break;
      }
      case 2: m.add_iff(random_literal(rng, m), lits(3)); break;
      default: m.add_exactly_one(lits(3)); break;
    }
  }
  if (with_objective) {
    Objective o;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      o.terms.push_back({static_cast<int64_t>(rng() % 7) - 3, random_var(rng, m)});
    }
    o.offset = static_cast<int64_t>(rng() % 5);
    m.set_objective(o);
  }
  if (rng() % 2) {
    std::vector<VarRef> order;
    for (int i = 0; i < 3; ++i) order.push_back(random_var(rng, m));
    m.set_branching(order);
  }
  return m;
}

}  // namespace ilplan::testing

#endif  // ILPLAN_TESTS_RANDOM_MODELS_HPP_
