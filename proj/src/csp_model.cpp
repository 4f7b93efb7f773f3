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

#include "ilplan/csp_model.hpp"

#include <cctype>
#include <charconv>
#include <memory>
#include <sstream>

#include "ilplan/error.hpp"

namespace ilplan {

Literal Literal::negated() const {
  switch (kind) {
    case kBool: return {kBool, var, 1 - value};
    case kLe: return ge(var, value + 1);
    case kGe: return le(var, value - 1);
  }
  throw InternalError("bad literal kind");
}

int CspModel::add_bool(std::string name) {
  bool_names_.push_back(std::move(name));
  return num_bools() - 1;
}

int CspModel::add_int(int64_t lo, int64_t hi, std::string name) {
  int_names_.push_back(std::move(name));
  int_bounds_.emplace_back(lo, hi);
  return num_ints() - 1;
}

void CspModel::add_implication(const std::vector<Literal>& premises, Literal conclusion) {
  std::vector<Literal> lits;
  lits.reserve(premises.size() + 1);
  for (const auto& p : premises) lits.push_back(p.negated());
  lits.push_back(conclusion);
  add_clause(std::move(lits));
}

void CspModel::validate() const {
  auto check_ref = [&](VarRef v) {
    const int n = v.kind == VarKind::kBool ? num_bools() : num_ints();
    if (v.id < 0 || v.id >= n) {
      throw PreconditionError(std::string("undeclared ") +
                              (v.kind == VarKind::kBool ? "Boolean" : "integer") + " variable " +
                              std::to_string(v.id));
    }
  };
  auto check_lit = [&](const Literal& l) {
    if (l.kind == Literal::kBool && l.value != 0 && l.value != 1) {
      throw PreconditionError("Boolean literal with polarity " + std::to_string(l.value));
    }
    check_ref(l.ref());
  };
  auto check_terms = [&](const std::vector<Term>& terms) {
    for (const auto& t : terms) check_ref(t.var);
  };
  for (int i = 0; i < num_ints(); ++i) {
    if (lo(i) > hi(i)) throw PreconditionError("empty domain for integer " + int_names_[i]);
  }
  for (const auto& c : constraints_) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Clause>) {
            for (const auto& l : x.lits) check_lit(l);
          } else if constexpr (std::is_same_v<T, Linear>) {
            check_terms(x.terms);
            for (const auto& l : x.enforce) check_lit(l);
          } else if constexpr (std::is_same_v<T, IffConj>) {
            check_lit(x.head);
            for (const auto& l : x.body) check_lit(l);
          } else {
            if (x.lits.empty()) throw PreconditionError("empty exactly-one constraint");
            for (const auto& l : x.lits) check_lit(l);
          }
        },
        c);
  }
  if (objective_) check_terms(objective_->terms);
  for (const auto& v : branching_) check_ref(v);
}

// ---------------------------------------------------------------------------
// Text export

namespace {

std::string ref_str(VarRef v) {
  return (v.kind == VarKind::kBool ? "b" : "i") + std::to_string(v.id);
}

std::string lit_str(const Literal& l) {
  switch (l.kind) {
    case Literal::kBool: return (l.value ? "b" : "!b") + std::to_string(l.var);
    case Literal::kLe: return "(<= i" + std::to_string(l.var) + " " + std::to_string(l.value) + ")";
    case Literal::kGe: return "(>= i" + std::to_string(l.var) + " " + std::to_string(l.value) + ")";
  }
  throw InternalError("bad literal kind");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

void put_lits(std::ostream& os, const std::vector<Literal>& lits) {
  for (const auto& l : lits) os << ' ' << lit_str(l);
}

void put_sum(std::ostream& os, const std::vector<Term>& terms) {
  os << "(+";
  for (const auto& t : terms) os << " (* " << t.coef << ' ' << ref_str(t.var) << ')';
  os << ')';
}

const char* cmp_str(Cmp c) {
  switch (c) {
    case Cmp::kLe: return "<=";
    case Cmp::kEq: return "=";
    case Cmp::kGe: return ">=";
  }
  throw InternalError("bad comparator");
}

}  // namespace

std::string export_model(const CspModel& m) {
  std::ostringstream os;
  os << "ilplan-csp 1\n";
  for (int i = 0; i < m.num_bools(); ++i) os << "(bool b" << i << ' ' << quote(m.bool_name(i)) << ")\n";
  for (int i = 0; i < m.num_ints(); ++i) {
    os << "(int i" << i << ' ' << m.lo(i) << ' ' << m.hi(i) << ' ' << quote(m.int_name(i)) << ")\n";
  }
  for (const auto& c : m.constraints()) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Clause>) {
            os << "(clause";
            put_lits(os, x.lits);
            os << ')';
          } else if constexpr (std::is_same_v<T, Linear>) {
            os << "(linear ";
            put_sum(os, x.terms);
            os << ' ' << cmp_str(x.cmp) << ' ' << x.rhs;
            if (!x.enforce.empty()) {
              os << " :if (";
              for (size_t i = 0; i < x.enforce.size(); ++i) os << (i ? " " : "") << lit_str(x.enforce[i]);
              os << ')';
            }
            os << ')';
          } else if constexpr (std::is_same_v<T, IffConj>) {
            os << "(iff " << lit_str(x.head) << " (and";
            put_lits(os, x.body);
            os << "))";
          } else {
            os << "(exactly-one";
            put_lits(os, x.lits);
            os << ')';
          }
        },
        c);
    os << '\n';
  }
  if (m.objective()) {
    os << "(minimize ";
    put_sum(os, m.objective()->terms);
    os << ' ' << m.objective()->offset << ")\n";
  }
  if (!m.branching().empty()) {
    os << "(branch";
    for (const auto& v : m.branching()) os << ' ' << ref_str(v);
    os << ")\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Text parsing

namespace {

struct Sexp {
  bool list = false;
  bool quoted = false;
  std::string atom;
  std::vector<Sexp> items;
};

class SexpReader {
 public:
  SexpReader(std::string_view text, int line) : text_(text), line_(line) {}

  Sexp read() {
    skip_ws();
    Sexp s = read_one();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_), what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Sexp read_one() {
    if (pos_ >= text_.size()) fail("unexpected end of form");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp s;
      s.list = true;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unbalanced parenthesis");
        if (text_[pos_] == ')') {
          ++pos_;
          return s;
        }
        s.items.push_back(read_one());
      }
    }
    if (c == ')') fail("unexpected ')'");
    Sexp s;
    if (c == '"') {
      s.quoted = true;
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) fail("unterminated string");
        char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= text_.size()) fail("unterminated string");
          d = text_[pos_++];
          if (d == 'n') d = '\n';
        }
        s.atom += d;
      }
      return s;
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      s.atom += text_[pos_++];
    }
    return s;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_;
};

class ModelBuilder {
 public:
  explicit ModelBuilder(int line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_), what);
  }

  const std::string& atom(const Sexp& s) const {
    if (s.list || s.quoted) fail("expected a symbol");
    return s.atom;
  }

  int64_t integer(const Sexp& s) const {
    const std::string& a = atom(s);
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
    if (ec != std::errc() || ptr != a.data() + a.size()) fail("expected an integer, got '" + a + "'");
    return v;
  }

  VarRef ref(const Sexp& s) const {
    const std::string& a = atom(s);
    if (a.size() < 2 || (a[0] != 'b' && a[0] != 'i')) fail("expected a variable, got '" + a + "'");
    Sexp num;
    num.atom = a.substr(1);
    return {a[0] == 'b' ? VarKind::kBool : VarKind::kInt, static_cast<int>(integer(num))};
  }

  Literal literal(const Sexp& s) const {
    if (s.list) {
      if (s.items.size() != 3) fail("malformed bound literal");
      const std::string& op = atom(s.items[0]);
      VarRef v = ref(s.items[1]);
      if (v.kind != VarKind::kInt) fail("bound literal on a Boolean");
      const int64_t c = integer(s.items[2]);
      if (op == "<=") return Literal::le(v.id, c);
      if (op == ">=") return Literal::ge(v.id, c);
      fail("unknown bound operator '" + op + "'");
    }
    const std::string& a = atom(s);
    const bool negative = !a.empty() && a[0] == '!';
    Sexp rest;
    rest.atom = negative ? a.substr(1) : a;
    VarRef v = ref(rest);
    if (v.kind != VarKind::kBool) fail("integer used as a literal");
    return negative ? Literal::neg(v.id) : Literal::pos(v.id);
  }

  std::vector<Literal> literals(const std::vector<Sexp>& items, size_t from) const {
    std::vector<Literal> out;
    for (size_t i = from; i < items.size(); ++i) out.push_back(literal(items[i]));
    return out;
  }

  std::vector<Term> sum(const Sexp& s) const {
    if (!s.list || s.items.empty() || atom(s.items[0]) != "+") fail("expected (+ ...)");
    std::vector<Term> out;
    for (size_t i = 1; i < s.items.size(); ++i) {
      const Sexp& t = s.items[i];
      if (!t.list || t.items.size() != 3 || atom(t.items[0]) != "*") fail("expected (* coef var)");
      out.push_back({integer(t.items[1]), ref(t.items[2])});
    }
    return out;
  }

  void apply(CspModel& m, const Sexp& s) {
    if (!s.list || s.items.empty()) fail("expected a form");
    const std::string& head = atom(s.items[0]);
    const auto& it = s.items;
    if (head == "bool") {
      if (it.size() != 3 || !it[2].quoted) fail("malformed bool declaration");
      if (ref(it[1]) != bool_var(m.num_bools())) fail("Boolean ids must be declared in order");
      m.add_bool(it[2].atom);
    } else if (head == "int") {
      if (it.size() != 5 || !it[4].quoted) fail("malformed int declaration");
      if (ref(it[1]) != int_var(m.num_ints())) fail("integer ids must be declared in order");
      m.add_int(integer(it[2]), integer(it[3]), it[4].atom);
    } else if (head == "clause") {
      m.add_clause(literals(it, 1));
    } else if (head == "linear") {
      if (it.size() != 4 && it.size() != 6) fail("malformed linear constraint");
      Linear lin;
      lin.terms = sum(it[1]);
      const std::string& op = atom(it[2]);
      if (op == "<=") {
        lin.cmp = Cmp::kLe;
      } else if (op == "=") {
        lin.cmp = Cmp::kEq;
      } else if (op == ">=") {
        lin.cmp = Cmp::kGe;
      } else {
        fail("unknown comparator '" + op + "'");
      }
      lin.rhs = integer(it[3]);
      if (it.size() == 6) {
        if (atom(it[4]) != ":if" || !it[5].list) fail("expected :if (literals)");
        lin.enforce = literals(it[5].items, 0);
      }
      m.add(std::move(lin));
    } else if (head == "iff") {
      if (it.size() != 3 || !it[2].list || it[2].items.empty() || atom(it[2].items[0]) != "and") {
        fail("malformed iff constraint");
      }
      m.add_iff(literal(it[1]), literals(it[2].items, 1));
    } else if (head == "exactly-one") {
      m.add_exactly_one(literals(it, 1));
    } else if (head == "minimize") {
      if (it.size() != 3) fail("malformed objective");
      m.set_objective(Objective{sum(it[1]), integer(it[2])});
    } else if (head == "branch") {
      std::vector<VarRef> order;
      for (size_t i = 1; i < it.size(); ++i) order.push_back(ref(it[i]));
      m.set_branching(std::move(order));
    } else {
      fail("unknown form '" + head + "'");
    }
  }

 private:
  int line_;
};

}  // namespace

CspModel parse_model(std::string_view text) {
  CspModel m;
  size_t pos = 0;
  int line_no = 0;
  bool header = false;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (line.empty() || line[0] == ';') continue;
    if (!header) {
      if (line != "ilplan-csp 1") throw ParseError("line " + std::to_string(line_no), "missing header");
      header = true;
      continue;
    }
    ModelBuilder(line_no).apply(m, SexpReader(line, line_no).read());
  }
  if (!header) throw ParseError("line 1", "missing header");
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// Evaluation

bool Assignment::holds(const Literal& lit) const {
  switch (lit.kind) {
    case Literal::kBool: return bools[lit.var] == lit.value;
    case Literal::kLe: return ints[lit.var] <= lit.value;
    case Literal::kGe: return ints[lit.var] >= lit.value;
  }
  throw InternalError("bad literal kind");
}

int64_t evaluate(const std::vector<Term>& terms, const Assignment& a) {
  int64_t sum = 0;
  for (const auto& t : terms) sum += t.coef * a.value(t.var);
  return sum;
}

int64_t evaluate(const Objective& o, const Assignment& a) { return evaluate(o.terms, a) + o.offset; }

bool satisfied(const Constraint& c, const Assignment& a) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Clause>) {
          for (const auto& l : x.lits) {
            if (a.holds(l)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, Linear>) {
          for (const auto& l : x.enforce) {
            if (!a.holds(l)) return true;
          }
          const int64_t v = evaluate(x.terms, a);
          switch (x.cmp) {
            case Cmp::kLe: return v <= x.rhs;
            case Cmp::kEq: return v == x.rhs;
            case Cmp::kGe: return v >= x.rhs;
          }
          return false;
        } else if constexpr (std::is_same_v<T, IffConj>) {
          bool body = true;
          for (const auto& l : x.body) body = body && a.holds(l);
          return a.holds(x.head) == body;
        } else {
          int count = 0;
          for (const auto& l : x.lits) count += a.holds(l) ? 1 : 0;
          return count == 1;
        }
      },
      c);
}

bool check_assignment(const CspModel& m, const Assignment& a, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (static_cast<int>(a.bools.size()) != m.num_bools() ||
      static_cast<int>(a.ints.size()) != m.num_ints()) {
    return fail("assignment is not total");
  }
  for (int i = 0; i < m.num_bools(); ++i) {
    if (a.bools[i] != 0 && a.bools[i] != 1) return fail("Boolean " + m.bool_name(i) + " not in {0,1}");
  }
  for (int i = 0; i < m.num_ints(); ++i) {
    if (a.ints[i] < m.lo(i) || a.ints[i] > m.hi(i)) return fail("integer " + m.int_name(i) + " out of bounds");
  }
  const auto& cs = m.constraints();
  for (size_t i = 0; i < cs.size(); ++i) {
    if (!satisfied(cs[i], a)) return fail("constraint #" + std::to_string(i) + " violated");
  }
  return true;
}

}  // namespace ilplan
