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

// Finite-domain constraint model: Boolean and bounded integer variables in
// two id spaces, and four constraint forms.
//
//   Clause      disjunction of literals
//   Linear      sum(coef * var) {<=, =, >=} rhs, active only when every
//               enforcement literal holds (reified implication; an empty
//               enforcement list makes it unconditional)
//   IffConj     head <-> conjunction of body literals
//   ExactlyOne  exactly one literal holds
//
// A literal is a Boolean of either polarity or a bound test on an integer:
// (x <= c) or (x >= c).
//
// Text format (one form per line, ids b<N> and i<N>):
//
//   ilplan-csp 1
//   (bool b0 "name")
//   (int i0 0 10 "name")
//   (clause b0 !b1 (<= i0 4))
//   (linear (+ (* 1 i0) (* -2 b1)) <= 3 :if (b2 (>= i0 1)))
//   (iff b3 (and b0 (>= i0 2)))
//   (exactly-one b0 b1 b2)
//   (minimize (+ (* 1 i0)) 0)
//   (branch b0 i0)

#ifndef ILPLAN_CSP_MODEL_HPP_
#define ILPLAN_CSP_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ilplan {

enum class VarKind : uint8_t { kBool, kInt };

struct VarRef {
  VarKind kind = VarKind::kBool;
  int id = 0;

  friend bool operator==(const VarRef&, const VarRef&) = default;
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

inline VarRef bool_var(int id) { return {VarKind::kBool, id}; }
inline VarRef int_var(int id) { return {VarKind::kInt, id}; }

struct Literal {
  enum Kind : uint8_t { kBool, kLe, kGe };
  Kind kind = kBool;
  int var = 0;
  int64_t value = 1;  // kBool: 1 positive, 0 negative; otherwise the bound

  static Literal pos(int b) { return {kBool, b, 1}; }
  static Literal neg(int b) { return {kBool, b, 0}; }
  static Literal le(int x, int64_t c) { return {kLe, x, c}; }
  static Literal ge(int x, int64_t c) { return {kGe, x, c}; }
  Literal negated() const;
  VarRef ref() const { return kind == kBool ? bool_var(var) : int_var(var); }

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Term {
  int64_t coef = 1;
  VarRef var;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Cmp : uint8_t { kLe, kEq, kGe };

struct Clause {
  std::vector<Literal> lits;
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Linear {
  std::vector<Term> terms;
  Cmp cmp = Cmp::kLe;
  int64_t rhs = 0;
  std::vector<Literal> enforce;
  friend bool operator==(const Linear&, const Linear&) = default;
};

struct IffConj {
  Literal head;
  std::vector<Literal> body;
  friend bool operator==(const IffConj&, const IffConj&) = default;
};

struct ExactlyOne {
  std::vector<Literal> lits;
  friend bool operator==(const ExactlyOne&, const ExactlyOne&) = default;
};

using Constraint = std::variant<Clause, Linear, IffConj, ExactlyOne>;

struct Objective {
  std::vector<Term> terms;
  int64_t offset = 0;
  friend bool operator==(const Objective&, const Objective&) = default;
};

class CspModel {
 public:
  int add_bool(std::string name);
  int add_int(int64_t lo, int64_t hi, std::string name);

  void add(Constraint c) { constraints_.push_back(std::move(c)); }
  void add_clause(std::vector<Literal> lits) { add(Clause{std::move(lits)}); }
  void add_linear(std::vector<Term> terms, Cmp cmp, int64_t rhs, std::vector<Literal> enforce = {}) {
    add(Linear{std::move(terms), cmp, rhs, std::move(enforce)});
  }
  void add_iff(Literal head, std::vector<Literal> body) { add(IffConj{head, std::move(body)}); }
  void add_exactly_one(std::vector<Literal> lits) { add(ExactlyOne{std::move(lits)}); }
  // conj(premises) -> conclusion, as a clause.
  void add_implication(const std::vector<Literal>& premises, Literal conclusion);

  int num_bools() const { return static_cast<int>(bool_names_.size()); }
  int num_ints() const { return static_cast<int>(int_names_.size()); }
  const std::string& bool_name(int id) const { return bool_names_[id]; }
  const std::string& int_name(int id) const { return int_names_[id]; }
  int64_t lo(int id) const { return int_bounds_[id].first; }
  int64_t hi(int id) const { return int_bounds_[id].second; }
  void set_bounds(int id, int64_t lo, int64_t hi) { int_bounds_[id] = {lo, hi}; }

  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::optional<Objective>& objective() const { return objective_; }
  void set_objective(Objective o) { objective_ = std::move(o); }
  void clear_objective() { objective_.reset(); }

  // Variables the solver branches on first, in this order.
  const std::vector<VarRef>& branching() const { return branching_; }
  void set_branching(std::vector<VarRef> order) { branching_ = std::move(order); }

  // Throws PreconditionError when a referenced id is undeclared, bounds are
  // empty or a constraint is degenerate (empty head, zero-length ExactlyOne).
  void validate() const;

  friend bool operator==(const CspModel&, const CspModel&) = default;

 private:
  std::vector<std::string> bool_names_;
  std::vector<std::string> int_names_;
  std::vector<std::pair<int64_t, int64_t>> int_bounds_;
  std::vector<Constraint> constraints_;
  std::optional<Objective> objective_;
  std::vector<VarRef> branching_;
};

std::string export_model(const CspModel& m);
CspModel parse_model(std::string_view text);

struct Assignment {
  std::vector<int64_t> bools;
  std::vector<int64_t> ints;

  int64_t value(VarRef v) const { return v.kind == VarKind::kBool ? bools[v.id] : ints[v.id]; }
  bool holds(const Literal& lit) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

int64_t evaluate(const std::vector<Term>& terms, const Assignment& a);
int64_t evaluate(const Objective& o, const Assignment& a);
bool satisfied(const Constraint& c, const Assignment& a);

// Full re-check: totality, bounds and every constraint. On failure `why`
// receives a short description of the first violation.
bool check_assignment(const CspModel& m, const Assignment& a, std::string* why = nullptr);

}  // namespace ilplan

#endif  // ILPLAN_CSP_MODEL_HPP_
