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

// Allen interval algebra over the non-negative integers, temporally
// qualified assertions and model checking of interval-logic sentences
// against finite histories.

#ifndef ILPLAN_INTERVAL_HPP_
#define ILPLAN_INTERVAL_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ilplan {

using TimePoint = int64_t;

// Half-open, non-singular interval [l, r) with 0 <= l < r.
class Interval {
 public:
  Interval(TimePoint l, TimePoint r);

  TimePoint l() const { return l_; }
  TimePoint r() const { return r_; }
  TimePoint size() const { return r_ - l_; }
  bool contains_point(TimePoint t) const { return l_ <= t && t < r_; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;

 private:
  TimePoint l_;
  TimePoint r_;
};

std::ostream& operator<<(std::ostream& os, const Interval& i);

enum class AllenRelation {
  kEqual,
  kBefore,
  kAfter,
  kMeets,
  kMetBy,
  kContains,
  kDuring,
  kStarts,
  kStartedBy,
  kFinishes,
  kFinishedBy,
  kOverlaps,
  kOverlappedBy,
};

inline constexpr int kNumAllenRelations = 13;

std::string_view to_string(AllenRelation rel);
std::optional<AllenRelation> allen_relation_from_string(std::string_view name);

// Relation obtained by swapping the arguments.
AllenRelation inverse(AllenRelation rel);

// The unique basic relation holding between x and y.
AllenRelation allen_relation(const Interval& x, const Interval& y);

// True iff `rel` holds between x and y.
bool holds(AllenRelation rel, const Interval& x, const Interval& y);

enum class CompositeRelation {
  kDisjoint,     // x before/meets y or y before/meets x
  kSubinterval,  // y is a (non-strict) subset of x
};

bool holds_composite(CompositeRelation rel, const Interval& x, const Interval& y);

// Temporally qualified assertion: `atom` holds (or not) throughout `interval`.
struct Tqa {
  std::string atom;
  bool polarity = true;
  Interval interval;

  friend bool operator==(const Tqa&, const Tqa&) = default;
};

// Splits a TQA at the given strictly increasing interior cut points. The
// result chains by Meets and covers the original interval.
std::vector<Tqa> decompose(const Tqa& tqa, std::span<const TimePoint> cuts);

// Dense truth table over [0, horizon) for a fixed list of atoms.
class History {
 public:
  History(std::vector<std::string> atoms, TimePoint horizon);

  TimePoint horizon() const { return horizon_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::optional<size_t> atom_index(std::string_view atom) const;

  bool at(TimePoint t, std::string_view atom) const;
  bool at(TimePoint t, size_t atom) const;
  void set(TimePoint t, std::string_view atom, bool value);
  void set(TimePoint t, size_t atom, bool value);
  // Sets `atom` to `value` on every point of `interval`.
  void assign(const Interval& interval, std::string_view atom, bool value);

  // Maximal runs of constant truth for one atom, in time order.
  std::vector<std::pair<bool, Interval>> segments(size_t atom) const;

 private:
  size_t offset(TimePoint t, size_t atom) const;

  std::vector<std::string> atoms_;
  std::map<std::string, size_t, std::less<>> index_;
  TimePoint horizon_;
  std::vector<uint8_t> bits_;
};

// h(t, atom) == polarity for every t in the TQA's interval.
bool check_tqa(const History& h, const Tqa& tqa);

// Interval-logic sentences: conjunctions/disjunctions of TQAs over named
// interval variables and relation atoms between named intervals.
struct Sentence;
using SentencePtr = std::shared_ptr<const Sentence>;

struct TqaAtom {
  std::string atom;
  bool polarity = true;
  std::string interval;
};

struct RelationAtom {
  std::variant<AllenRelation, CompositeRelation> relation;
  std::string x;
  std::string y;
};

struct Conjunction {
  std::vector<SentencePtr> operands;
};

struct Disjunction {
  std::vector<SentencePtr> operands;
};

struct Sentence {
  std::variant<TqaAtom, RelationAtom, Conjunction, Disjunction> node;
};

SentencePtr make_tqa(std::string atom, std::string interval, bool polarity = true);
SentencePtr make_relation(std::variant<AllenRelation, CompositeRelation> rel, std::string x,
                          std::string y);
SentencePtr make_and(std::vector<SentencePtr> operands);
SentencePtr make_or(std::vector<SentencePtr> operands);

using IntervalBindings = std::map<std::string, Interval, std::less<>>;

bool check_sentence(const History& h, const IntervalBindings& bindings, const Sentence& sentence);

}  // namespace ilplan

#endif  // ILPLAN_INTERVAL_HPP_
