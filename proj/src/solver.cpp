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

#include "ilplan/solver.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "ilplan/error.hpp"

namespace ilplan {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSat: return "sat";
    case SolveStatus::kUnsat: return "unsat";
    case SolveStatus::kResourceLimit: return "resource-limit";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Bound test on a variable of the unified space (Booleans first).
struct Lit {
  int v = 0;
  int64_t c = 0;
  bool le = true;  // x <= c, otherwise x >= c

  Lit negated() const { return le ? Lit{v, c + 1, false} : Lit{v, c - 1, true}; }
};

struct ClauseC {
  std::vector<Lit> lits;
};

// sum(coef * x) <= rhs when every enforcement literal holds.
struct LinearC {
  std::vector<std::pair<int64_t, int>> terms;
  int64_t rhs = 0;
  std::vector<Lit> enforce;
};

struct IffC {
  Lit head;
  std::vector<Lit> body;
};

struct ExactlyOneC {
  std::vector<Lit> lits;
};

// to <= from + c, active when the linear row's enforcement holds.
struct DiffEdge {
  int from;
  int to;
  int64_t c;
  int lin;
};

enum class Kind : uint8_t { kClause, kLinear, kIff, kExactlyOne };

struct CRef {
  Kind kind;
  int idx;
};

constexpr int64_t kNoBound = std::numeric_limits<int64_t>::max() / 4;

uint64_t mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Engine {
 public:
  Engine(const CspModel& m, const SolverConfig& cfg) : m_(m), cfg_(cfg), nb_(m.num_bools()) {
    const int nv = nb_ + m.num_ints();
    lo_.assign(nv, 0);
    hi_.assign(nv, 1);
    for (int i = 0; i < m.num_ints(); ++i) {
      lo_[nb_ + i] = m.lo(i);
      hi_[nb_ + i] = m.hi(i);
    }
    occ_.resize(nv);
    for (const auto& c : m.constraints()) add(c);
    if (m.objective()) {
      LinearC obj;
      for (const auto& t : m.objective()->terms) obj.terms.emplace_back(t.coef, unify(t.var));
      obj.rhs = kNoBound;
      objective_ = add_linear(std::move(obj));
    }
    in_queue_.assign(refs_.size(), 0);
    build_order();
  }

  SolveResult run() {
    const auto start = Clock::now();
    SolveResult res;
    auto finish = [&](SolveStatus st) {
      res.status = st;
      res.stats = stats_;
      res.stats.wall_ms = elapsed_ms(start);
      if (st == SolveStatus::kSat && incumbent_) {
        res.assignment = incumbent_;
        if (m_.objective()) {
          res.objective = best_;
          res.optimal = true;
        }
      } else if (st == SolveStatus::kResourceLimit && incumbent_) {
        res.assignment = incumbent_;
        if (m_.objective()) res.objective = best_;
      }
      return res;
    };

    for (int i = 0; i < static_cast<int>(refs_.size()); ++i) enqueue(i);
    if (!propagate()) return finish(incumbent_ ? SolveStatus::kSat : SolveStatus::kUnsat);

    std::vector<Frame> stack;
    size_t cursor = 0;
    for (;;) {
      while (cursor < order_.size() && lo_[order_[cursor]] == hi_[order_[cursor]]) ++cursor;
      if (cursor == order_.size()) {
        record_solution();
        if (!objective_) return finish(SolveStatus::kSat);
        linears_[refs_[*objective_].idx].rhs = best_ - 1 - m_.objective()->offset;
        if (!backtrack(stack, cursor)) return finish(SolveStatus::kSat);
        continue;
      }
      ++stats_.nodes;
      if (stats_.nodes > cfg_.node_budget) {
        res.reason = "node budget exhausted";
        return finish(SolveStatus::kResourceLimit);
      }
      if ((stats_.nodes & 1023) == 0 && elapsed_ms(start) > cfg_.time_budget_s * 1000.0) {
        res.reason = "time budget exhausted";
        return finish(SolveStatus::kResourceLimit);
      }
      const Lit d = decision(order_[cursor]);
      stack.push_back({trail_.size(), cursor, d});
      if (set(d) && propagate()) continue;
      if (!backtrack(stack, cursor)) {
        return finish(incumbent_ ? SolveStatus::kSat : SolveStatus::kUnsat);
      }
    }
  }

 private:
  struct Frame {
    size_t mark;
    size_t cursor;
    Lit decision;
  };

  struct TrailEntry {
    int v;
    int64_t lo;
    int64_t hi;
  };

  int unify(VarRef r) const { return r.kind == VarKind::kBool ? r.id : nb_ + r.id; }

  Lit convert(const Literal& l) const {
    switch (l.kind) {
      case Literal::kBool: return l.value ? Lit{l.var, 1, false} : Lit{l.var, 0, true};
      case Literal::kLe: return {nb_ + l.var, l.value, true};
      case Literal::kGe: return {nb_ + l.var, l.value, false};
    }
    throw InternalError("bad literal kind");
  }

  std::vector<Lit> convert(const std::vector<Literal>& ls) const {
    std::vector<Lit> out;
    out.reserve(ls.size());
    for (const auto& l : ls) out.push_back(convert(l));
    return out;
  }

  // A constraint mentioning a variable twice is not idempotent under one
  // propagation pass and must see its own bound changes.
  void watch(int id, int v) {
    auto& o = occ_[v];
    if (!o.empty() && o.back() == id) {
      reentrant_[id] = 1;
      return;
    }
    o.push_back(id);
  }

  int add_ref(Kind k, int idx) {
    refs_.push_back({k, idx});
    reentrant_.push_back(0);
    return static_cast<int>(refs_.size()) - 1;
  }

  int add_linear(LinearC c) {
    const int id = add_ref(Kind::kLinear, static_cast<int>(linears_.size()));
    if (c.terms.size() == 2 && c.terms[0].first == -c.terms[1].first &&
        (c.terms[0].first == 1 || c.terms[0].first == -1)) {
      const int pos = c.terms[0].first == 1 ? 0 : 1;
      diff_.push_back({c.terms[1 - pos].second, c.terms[pos].second, c.rhs,
                       static_cast<int>(linears_.size())});
    }
    for (const auto& [a, v] : c.terms) watch(id, v);
    for (const auto& l : c.enforce) watch(id, l.v);
    linears_.push_back(std::move(c));
    return id;
  }

  void add(const Constraint& c) {
    if (const auto* cl = std::get_if<Clause>(&c)) {
      const int id = add_ref(Kind::kClause, static_cast<int>(clauses_.size()));
      clauses_.push_back({convert(cl->lits)});
      for (const auto& l : clauses_.back().lits) watch(id, l.v);
    } else if (const auto* lin = std::get_if<Linear>(&c)) {
      auto make = [&](int64_t sign) {
        LinearC out;
        for (const auto& t : lin->terms) out.terms.emplace_back(sign * t.coef, unify(t.var));
        out.rhs = sign * lin->rhs;
        out.enforce = convert(lin->enforce);
        add_linear(std::move(out));
      };
      if (lin->cmp != Cmp::kGe) make(1);
      if (lin->cmp != Cmp::kLe) make(-1);
    } else if (const auto* iff = std::get_if<IffConj>(&c)) {
      const int id = add_ref(Kind::kIff, static_cast<int>(iffs_.size()));
      iffs_.push_back({convert(iff->head), convert(iff->body)});
      watch(id, iffs_.back().head.v);
      for (const auto& l : iffs_.back().body) watch(id, l.v);
    } else {
      const auto& eo = std::get<ExactlyOne>(c);
      const int id = add_ref(Kind::kExactlyOne, static_cast<int>(eos_.size()));
      eos_.push_back({convert(eo.lits)});
      for (const auto& l : eos_.back().lits) watch(id, l.v);
    }
  }

  void build_order() {
    std::vector<char> placed(lo_.size(), 0);
    auto push = [&](int v) {
      if (!placed[v]) {
        placed[v] = 1;
        order_.push_back(v);
      }
    };
    if (cfg_.order == BranchOrder::kActionsFirst) {
      for (const auto& r : m_.branching()) push(unify(r));
    }
    for (int v = 0; v < static_cast<int>(lo_.size()); ++v) push(v);
  }

  // 1 true, 0 false, -1 undecided.
  int truth(const Lit& l) const {
    if (l.le) {
      if (hi_[l.v] <= l.c) return 1;
      if (lo_[l.v] > l.c) return 0;
    } else {
      if (lo_[l.v] >= l.c) return 1;
      if (hi_[l.v] < l.c) return 0;
    }
    return -1;
  }

  bool set_hi(int v, int64_t c) {
    if (hi_[v] <= c) return true;
    if (lo_[v] > c) return false;
    ++changes_;
    trail_.push_back({v, lo_[v], hi_[v]});
    hi_[v] = c;
    wake(v);
    return true;
  }

  bool set_lo(int v, int64_t c) {
    if (lo_[v] >= c) return true;
    if (hi_[v] < c) return false;
    ++changes_;
    trail_.push_back({v, lo_[v], hi_[v]});
    lo_[v] = c;
    wake(v);
    return true;
  }

  bool set(const Lit& l) { return l.le ? set_hi(l.v, l.c) : set_lo(l.v, l.c); }

  void wake(int v) {
    for (int id : occ_[v]) {
      if (id != current_ || reentrant_[id]) enqueue(id);
    }
  }

  void enqueue(int id) {
    if (!in_queue_[id]) {
      in_queue_[id] = 1;
      queue_.push_back(id);
    }
  }

  void clear_queue() {
    for (size_t i = head_; i < queue_.size(); ++i) in_queue_[queue_[i]] = 0;
    queue_.clear();
    head_ = 0;
  }

  bool propagate() {
    // Many bound changes in one round usually mean bounds creeping around a
    // cycle of difference rows; settle those by shortest paths instead.
    const int64_t budget = static_cast<int64_t>(lo_.size()) / 8 + 32;
    int64_t next_check = changes_ + budget;
    while (head_ < queue_.size()) {
      if (changes_ > next_check && !diff_.empty()) {
        if (!settle_differences()) {
          clear_queue();
          return false;
        }
        next_check = changes_ + budget;
      }
      const int id = queue_[head_++];
      in_queue_[id] = 0;
      current_ = id;
      ++stats_.propagations;
      const bool ok = run_one(id);
      current_ = -1;
      if (!ok) {
        clear_queue();
        return false;
      }
    }
    clear_queue();
    return true;
  }

  bool run_one(int id) {
    const CRef r = refs_[id];
    switch (r.kind) {
      case Kind::kClause: return prop_clause(clauses_[r.idx]);
      case Kind::kLinear: return prop_linear(linears_[r.idx]);
      case Kind::kIff: return prop_iff(iffs_[r.idx]);
      case Kind::kExactlyOne: return prop_exactly_one(eos_[r.idx]);
    }
    return true;
  }

  bool edge_active(const DiffEdge& e) const {
    for (const auto& l : linears_[e.lin].enforce) {
      if (truth(l) != 1) return false;
    }
    return true;
  }

  // Shortest-path closure of the active difference rows. upper: dist starts
  // at hi and follows to <= from + c; otherwise dist is -lo over reversed
  // edges. A cycle in the parent graph is a negative cycle.
  bool shortest_paths(const std::vector<const DiffEdge*>& active, bool upper,
                      std::vector<int64_t>& dist) {
    const int nv = static_cast<int>(lo_.size());
    std::vector<std::vector<std::pair<int, int64_t>>> out(nv);
    for (const DiffEdge* e : active) {
      if (upper) {
        out[e->from].push_back({e->to, e->c});
      } else {
        out[e->to].push_back({e->from, e->c});
      }
    }
    dist.resize(nv);
    for (int v = 0; v < nv; ++v) dist[v] = upper ? hi_[v] : -lo_[v];
    std::vector<int> parent(nv, -1);
    std::vector<char> queued(nv, 1);
    std::vector<int> queue;
    for (int v = 0; v < nv; ++v) {
      if (!out[v].empty()) {
        queue.push_back(v);
      } else {
        queued[v] = 0;
      }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      queued[u] = 0;
      for (const auto& [w, c] : out[u]) {
        if (dist[u] + c >= dist[w]) continue;
        dist[w] = dist[u] + c;
        if (upper ? dist[w] < lo_[w] : -dist[w] > hi_[w]) return false;
        parent[w] = u;
        for (int x = u, steps = 0; x != -1 && steps <= nv; x = parent[x], ++steps) {
          if (x == w) return false;
        }
        if (!queued[w]) {
          queued[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return true;
  }

  bool settle_differences() {
    std::vector<const DiffEdge*> active;
    for (const auto& e : diff_) {
      if (edge_active(e)) active.push_back(&e);
    }
    std::vector<int64_t> up, down;
    if (!shortest_paths(active, true, up) || !shortest_paths(active, false, down)) return false;
    for (int v = 0; v < static_cast<int>(lo_.size()); ++v) {
      if (!set_hi(v, up[v]) || !set_lo(v, -down[v])) return false;
    }
    return true;
  }

  bool prop_clause(const ClauseC& c) {
    const Lit* open = nullptr;
    int undecided = 0;
    for (const auto& l : c.lits) {
      const int t = truth(l);
      if (t == 1) return true;
      if (t == -1) {
        open = &l;
        if (++undecided > 1) return true;
      }
    }
    if (undecided == 0) return false;
    return set(*open);
  }

  bool prop_linear(const LinearC& c) {
    const Lit* open = nullptr;
    int undecided = 0;
    for (const auto& l : c.enforce) {
      const int t = truth(l);
      if (t == 0) return true;
      if (t == -1) {
        open = &l;
        ++undecided;
      }
    }
    int64_t min_act = 0;
    for (const auto& [a, v] : c.terms) min_act += a > 0 ? a * lo_[v] : a * hi_[v];
    if (undecided > 0) {
      if (undecided == 1 && min_act > c.rhs) return set(open->negated());
      return true;
    }
    if (min_act > c.rhs) return false;
    const int64_t slack = c.rhs - min_act;
    for (const auto& [a, v] : c.terms) {
      if (a > 0) {
        if (!set_hi(v, lo_[v] + slack / a)) return false;
      } else if (a < 0) {
        if (!set_lo(v, hi_[v] - slack / (-a))) return false;
      }
    }
    return true;
  }

  bool prop_iff(const IffC& c) {
    const int h = truth(c.head);
    if (h == 1) {
      for (const auto& l : c.body) {
        if (!set(l)) return false;
      }
      return true;
    }
    const Lit* open = nullptr;
    int undecided = 0;
    for (const auto& l : c.body) {
      const int t = truth(l);
      if (t == 0) return set(c.head.negated());
      if (t == -1) {
        open = &l;
        ++undecided;
      }
    }
    if (undecided == 0) return set(c.head);
    if (h == 0 && undecided == 1) return set(open->negated());
    return true;
  }

  bool prop_exactly_one(const ExactlyOneC& c) {
    const Lit* on = nullptr;
    const Lit* open = nullptr;
    int undecided = 0;
    for (const auto& l : c.lits) {
      const int t = truth(l);
      if (t == 1) {
        if (on) return false;
        on = &l;
      } else if (t == -1) {
        open = &l;
        ++undecided;
      }
    }
    if (on) {
      for (const auto& l : c.lits) {
        if (&l != on && !set(l.negated())) return false;
      }
      return true;
    }
    if (undecided == 0) return false;
    if (undecided == 1) return set(*open);
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      const TrailEntry& e = trail_.back();
      lo_[e.v] = e.lo;
      hi_[e.v] = e.hi;
      trail_.pop_back();
    }
  }

  // Pops frames until the negation of a decision is consistent.
  bool backtrack(std::vector<Frame>& stack, size_t& cursor) {
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      ++stats_.failures;
      clear_queue();
      undo(f.mark);
      cursor = f.cursor;
      if (objective_) enqueue(*objective_);
      if (set(f.decision.negated()) && propagate()) return true;
    }
    return false;
  }

  Lit decision(int v) const {
    if (v < nb_) {
      bool first_true = false;
      if (cfg_.seed != 0) first_true = (mix(cfg_.seed ^ mix(static_cast<uint64_t>(v))) & 1) != 0;
      return first_true ? Lit{v, 1, false} : Lit{v, 0, true};
    }
    const int64_t mid = lo_[v] + (hi_[v] - lo_[v]) / 2;
    return {v, mid, true};
  }

  void record_solution() {
    ++stats_.solutions;
    Assignment a;
    a.bools.assign(lo_.begin(), lo_.begin() + nb_);
    a.ints.assign(lo_.begin() + nb_, lo_.end());
    std::string why;
    if (!check_assignment(m_, a, &why)) throw InternalError("solver produced an invalid assignment: " + why);
    if (m_.objective()) best_ = evaluate(*m_.objective(), a);
    incumbent_ = std::move(a);
  }

  const CspModel& m_;
  const SolverConfig& cfg_;
  const int nb_;
  std::vector<int64_t> lo_;
  std::vector<int64_t> hi_;
  std::vector<std::vector<int>> occ_;
  std::vector<CRef> refs_;
  std::vector<char> reentrant_;
  std::vector<ClauseC> clauses_;
  std::vector<LinearC> linears_;
  std::vector<IffC> iffs_;
  std::vector<ExactlyOneC> eos_;
  std::optional<int> objective_;
  std::vector<int> order_;
  std::vector<TrailEntry> trail_;
  std::vector<int> queue_;
  std::vector<char> in_queue_;
  size_t head_ = 0;
  int current_ = -1;
  std::vector<DiffEdge> diff_;
  int64_t changes_ = 0;
  SolveStats stats_;
  std::optional<Assignment> incumbent_;
  int64_t best_ = 0;
};

std::vector<VarRef> vars_of(const Constraint& c) {
  std::vector<VarRef> out;
  auto lits = [&](const std::vector<Literal>& ls) {
    for (const auto& l : ls) out.push_back(l.ref());
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Linear>) {
          for (const auto& t : x.terms) out.push_back(t.var);
          lits(x.enforce);
        } else if constexpr (std::is_same_v<T, IffConj>) {
          out.push_back(x.head.ref());
          lits(x.body);
        } else {
          lits(x.lits);
        }
      },
      c);
  return out;
}

}  // namespace

SolveResult solve(const CspModel& m, const SolverConfig& cfg) {
  m.validate();
  if (cfg.time_budget_s <= 0 || cfg.node_budget <= 0) {
    throw PreconditionError("solver budgets must be positive");
  }
  return Engine(m, cfg).run();
}

uint64_t search_space_size(const CspModel& m) {
  constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
  uint64_t size = 1;
  auto times = [&](uint64_t k) {
    if (k != 0 && size > kMax / k) {
      size = kMax;
    } else {
      size *= k;
    }
  };
  for (int i = 0; i < m.num_bools(); ++i) times(2);
  for (int i = 0; i < m.num_ints(); ++i) times(static_cast<uint64_t>(m.hi(i) - m.lo(i)) + 1);
  return size;
}

SolveResult brute_force_solve(const CspModel& m) {
  m.validate();
  if (search_space_size(m) > kBruteForceGuard) {
    throw PreconditionError("search space exceeds the brute-force guard");
  }
  const auto start = Clock::now();
  const int nb = m.num_bools();
  const int nv = nb + m.num_ints();
  auto position = [&](VarRef r) { return r.kind == VarKind::kBool ? r.id : nb + r.id; };

  // Constraints become checkable once their last variable is assigned;
  // bucket -1 holds variable-free constraints.
  std::vector<std::vector<int>> due(nv + 1);
  const auto& cs = m.constraints();
  for (size_t i = 0; i < cs.size(); ++i) {
    int last = -1;
    for (const auto& r : vars_of(cs[i])) last = std::max(last, position(r));
    due[last + 1].push_back(static_cast<int>(i));
  }

  SolveResult res;
  Assignment a;
  a.bools.assign(nb, 0);
  a.ints.assign(m.num_ints(), 0);
  for (int i = 0; i < m.num_ints(); ++i) a.ints[i] = m.lo(i);
  auto ok_at = [&](int bucket) {
    for (int c : due[bucket]) {
      if (!satisfied(cs[c], a)) return false;
    }
    return true;
  };

  std::function<void(int)> rec = [&](int p) {
    if (p == nv) {
      ++res.stats.solutions;
      if (!m.objective()) {
        if (!res.assignment) res.assignment = a;
        return;
      }
      const int64_t v = evaluate(*m.objective(), a);
      if (!res.objective || v < *res.objective) {
        res.objective = v;
        res.assignment = a;
      }
      return;
    }
    int64_t lo = 0, hi = 1;
    if (p >= nb) {
      lo = m.lo(p - nb);
      hi = m.hi(p - nb);
    }
    for (int64_t val = lo; val <= hi; ++val) {
      if (res.assignment && !m.objective()) return;
      ++res.stats.nodes;
      if (p < nb) {
        a.bools[p] = val;
      } else {
        a.ints[p - nb] = val;
      }
      if (ok_at(p + 1)) rec(p + 1);
    }
  };
  if (ok_at(0)) rec(0);

  res.status = res.assignment ? SolveStatus::kSat : SolveStatus::kUnsat;
  res.optimal = res.assignment.has_value() && m.objective().has_value();
  res.stats.wall_ms = elapsed_ms(start);
  return res;
}

}  // namespace ilplan
