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

#include "ilplan/interval.hpp"

#include <array>

#include "ilplan/error.hpp"

namespace ilplan {

Interval::Interval(TimePoint l, TimePoint r) : l_(l), r_(r) {
  if (l < 0 || l >= r) {
    throw PreconditionError("invalid interval [" + std::to_string(l) + ", " + std::to_string(r) +
                            ")");
  }
}

std::ostream& operator<<(std::ostream& os, const Interval& i) {
  return os << '[' << i.l() << ", " << i.r() << ')';
}

namespace {

constexpr std::array<std::string_view, kNumAllenRelations> kRelationNames = {
    "equal",    "before",      "after",    "meets",       "met-by",   "contains",     "during",
    "starts",   "started-by",  "finishes", "finished-by", "overlaps", "overlapped-by"};

}  // namespace

std::string_view to_string(AllenRelation rel) { return kRelationNames[static_cast<int>(rel)]; }

std::optional<AllenRelation> allen_relation_from_string(std::string_view name) {
  for (int i = 0; i < kNumAllenRelations; ++i) {
    if (kRelationNames[i] == name) return static_cast<AllenRelation>(i);
  }
  return std::nullopt;
}

AllenRelation inverse(AllenRelation rel) {
  switch (rel) {
    case AllenRelation::kEqual: return AllenRelation::kEqual;
    case AllenRelation::kBefore: return AllenRelation::kAfter;
    case AllenRelation::kAfter: return AllenRelation::kBefore;
    case AllenRelation::kMeets: return AllenRelation::kMetBy;
    case AllenRelation::kMetBy: return AllenRelation::kMeets;
    case AllenRelation::kContains: return AllenRelation::kDuring;
    case AllenRelation::kDuring: return AllenRelation::kContains;
    case AllenRelation::kStarts: return AllenRelation::kStartedBy;
    case AllenRelation::kStartedBy: return AllenRelation::kStarts;
    case AllenRelation::kFinishes: return AllenRelation::kFinishedBy;
    case AllenRelation::kFinishedBy: return AllenRelation::kFinishes;
    case AllenRelation::kOverlaps: return AllenRelation::kOverlappedBy;
    case AllenRelation::kOverlappedBy: return AllenRelation::kOverlaps;
  }
  throw InternalError("unknown Allen relation");
}

bool holds(AllenRelation rel, const Interval& x, const Interval& y) {
  switch (rel) {
    case AllenRelation::kEqual: return x.l() == y.l() && x.r() == y.r();
    case AllenRelation::kBefore: return x.r() < y.l();
    case AllenRelation::kMeets: return x.r() == y.l();
    case AllenRelation::kContains: return x.l() < y.l() && y.r() < x.r();
    case AllenRelation::kStarts: return x.l() == y.l() && x.r() < y.r();
    // Standard Allen reading: x ends with y and begins after it.
    case AllenRelation::kFinishes: return x.r() == y.r() && x.l() > y.l();
    case AllenRelation::kOverlaps: return x.l() < y.l() && y.l() < x.r() && x.r() < y.r();
    case AllenRelation::kAfter:
    case AllenRelation::kMetBy:
    case AllenRelation::kDuring:
    case AllenRelation::kStartedBy:
    case AllenRelation::kFinishedBy:
    case AllenRelation::kOverlappedBy: return holds(inverse(rel), y, x);
  }
  throw InternalError("unknown Allen relation");
}

AllenRelation allen_relation(const Interval& x, const Interval& y) {
  if (x.r() < y.l()) return AllenRelation::kBefore;
  if (y.r() < x.l()) return AllenRelation::kAfter;
  if (x.r() == y.l()) return AllenRelation::kMeets;
  if (y.r() == x.l()) return AllenRelation::kMetBy;
  if (x.l() == y.l()) {
    if (x.r() == y.r()) return AllenRelation::kEqual;
    return x.r() < y.r() ? AllenRelation::kStarts : AllenRelation::kStartedBy;
  }
  if (x.r() == y.r()) return x.l() > y.l() ? AllenRelation::kFinishes : AllenRelation::kFinishedBy;
  if (x.l() < y.l()) return y.r() < x.r() ? AllenRelation::kContains : AllenRelation::kOverlaps;
  return x.r() < y.r() ? AllenRelation::kDuring : AllenRelation::kOverlappedBy;
}

bool holds_composite(CompositeRelation rel, const Interval& x, const Interval& y) {
  switch (rel) {
    case CompositeRelation::kDisjoint: return x.r() <= y.l() || y.r() <= x.l();
    case CompositeRelation::kSubinterval: return x.l() <= y.l() && y.r() <= x.r();
  }
  throw InternalError("unknown composite relation");
}

std::vector<Tqa> decompose(const Tqa& tqa, std::span<const TimePoint> cuts) {
  std::vector<Tqa> out;
  out.reserve(cuts.size() + 1);
  TimePoint left = tqa.interval.l();
  for (TimePoint cut : cuts) {
    if (cut <= left || cut >= tqa.interval.r()) {
      throw PreconditionError("cut " + std::to_string(cut) +
                              " is not strictly increasing inside the interval");
    }
    out.push_back({tqa.atom, tqa.polarity, Interval(left, cut)});
    left = cut;
  }
  out.push_back({tqa.atom, tqa.polarity, Interval(left, tqa.interval.r())});
  return out;
}

History::History(std::vector<std::string> atoms, TimePoint horizon)
    : atoms_(std::move(atoms)), horizon_(horizon) {
  if (horizon < 0) throw PreconditionError("negative history horizon");
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (!index_.emplace(atoms_[i], i).second) {
      throw PreconditionError("duplicate atom '" + atoms_[i] + "' in history");
    }
  }
  bits_.assign(static_cast<size_t>(horizon_) * atoms_.size(), 0);
}

std::optional<size_t> History::atom_index(std::string_view atom) const {
  auto it = index_.find(atom);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t History::offset(TimePoint t, size_t atom) const {
  if (t < 0 || t >= horizon_) throw PreconditionError("history too short");
  if (atom >= atoms_.size()) throw PreconditionError("unknown atom index");
  return static_cast<size_t>(t) * atoms_.size() + atom;
}

bool History::at(TimePoint t, size_t atom) const { return bits_[offset(t, atom)] != 0; }

bool History::at(TimePoint t, std::string_view atom) const {
  auto idx = atom_index(atom);
  if (!idx) throw PreconditionError("unknown atom '" + std::string(atom) + "'");
  return at(t, *idx);
}

void History::set(TimePoint t, size_t atom, bool value) { bits_[offset(t, atom)] = value; }

void History::set(TimePoint t, std::string_view atom, bool value) {
  auto idx = atom_index(atom);
  if (!idx) throw PreconditionError("unknown atom '" + std::string(atom) + "'");
  set(t, *idx, value);
}

void History::assign(const Interval& interval, std::string_view atom, bool value) {
  for (TimePoint t = interval.l(); t < interval.r(); ++t) set(t, atom, value);
}

std::vector<std::pair<bool, Interval>> History::segments(size_t atom) const {
  std::vector<std::pair<bool, Interval>> out;
  TimePoint start = 0;
  for (TimePoint t = 1; t <= horizon_; ++t) {
    if (t == horizon_ || at(t, atom) != at(start, atom)) {
      out.emplace_back(at(start, atom), Interval(start, t));
      start = t;
    }
  }
  return out;
}

bool check_tqa(const History& h, const Tqa& tqa) {
  if (tqa.interval.r() > h.horizon()) throw PreconditionError("history too short");
  auto idx = h.atom_index(tqa.atom);
  if (!idx) throw PreconditionError("unknown atom '" + tqa.atom + "'");
  for (TimePoint t = tqa.interval.l(); t < tqa.interval.r(); ++t) {
    if (h.at(t, *idx) != tqa.polarity) return false;
  }
  return true;
}

SentencePtr make_tqa(std::string atom, std::string interval, bool polarity) {
  return std::make_shared<const Sentence>(
      Sentence{TqaAtom{std::move(atom), polarity, std::move(interval)}});
}

SentencePtr make_relation(std::variant<AllenRelation, CompositeRelation> rel, std::string x,
                          std::string y) {
  return std::make_shared<const Sentence>(Sentence{RelationAtom{rel, std::move(x), std::move(y)}});
}

SentencePtr make_and(std::vector<SentencePtr> operands) {
  return std::make_shared<const Sentence>(Sentence{Conjunction{std::move(operands)}});
}

SentencePtr make_or(std::vector<SentencePtr> operands) {
  return std::make_shared<const Sentence>(Sentence{Disjunction{std::move(operands)}});
}

namespace {

const Interval& lookup(const IntervalBindings& bindings, const std::string& name) {
  auto it = bindings.find(name);
  if (it == bindings.end()) throw PreconditionError("unbound interval '" + name + "'");
  return it->second;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_bound(const IntervalBindings& bindings, const Sentence& sentence) {
  std::visit(Overloaded{
                 [&](const TqaAtom& a) { lookup(bindings, a.interval); },
                 [&](const RelationAtom& a) {
                   lookup(bindings, a.x);
                   lookup(bindings, a.y);
                 },
                 [&](const Conjunction& c) {
                   for (const auto& op : c.operands) require_bound(bindings, *op);
                 },
                 [&](const Disjunction& d) {
                   for (const auto& op : d.operands) require_bound(bindings, *op);
                 },
             },
             sentence.node);
}

bool evaluate(const History& h, const IntervalBindings& bindings, const Sentence& sentence) {
  return std::visit(
      Overloaded{
          [&](const TqaAtom& a) {
            return check_tqa(h, Tqa{a.atom, a.polarity, lookup(bindings, a.interval)});
          },
          [&](const RelationAtom& a) {
            const Interval& x = lookup(bindings, a.x);
            const Interval& y = lookup(bindings, a.y);
            return std::visit(Overloaded{[&](AllenRelation r) { return holds(r, x, y); },
                                         [&](CompositeRelation r) { return holds_composite(r, x, y); }},
                              a.relation);
          },
          [&](const Conjunction& c) {
            for (const auto& op : c.operands) {
              if (!evaluate(h, bindings, *op)) return false;
            }
            return true;
          },
          [&](const Disjunction& d) {
            for (const auto& op : d.operands) {
              if (evaluate(h, bindings, *op)) return true;
            }
            return false;
          },
      },
      sentence.node);
}

}  // namespace

bool check_sentence(const History& h, const IntervalBindings& bindings, const Sentence& sentence) {
  require_bound(bindings, sentence);
  return evaluate(h, bindings, sentence);
}

}  // namespace ilplan
