#include <set>

#include "doctest.h"
#include "ilplan/error.hpp"
#include "ilplan/interval.hpp"

using namespace ilplan;

namespace {

// Point-set oracle: relations read off set inclusion, intersection and the
// extreme points of [l, r) viewed as {l, ..., r-1}.
AllenRelation set_oracle(const Interval& x, const Interval& y) {
  std::set<TimePoint> xs, ys, both;
  for (TimePoint t = x.l(); t < x.r(); ++t) xs.insert(t);
  for (TimePoint t = y.l(); t < y.r(); ++t) ys.insert(t);
  for (TimePoint t : xs) {
    if (ys.count(t)) both.insert(t);
  }
  const TimePoint xmin = *xs.begin(), xmax = *xs.rbegin();
  const TimePoint ymin = *ys.begin(), ymax = *ys.rbegin();
  const bool x_in_y = both.size() == xs.size();
  const bool y_in_x = both.size() == ys.size();
  if (x_in_y && y_in_x) return AllenRelation::kEqual;
  if (x_in_y) {
    if (xmin == ymin) return AllenRelation::kStarts;
    if (xmax == ymax) return AllenRelation::kFinishes;
    return AllenRelation::kDuring;
  }
  if (y_in_x) {
    if (xmin == ymin) return AllenRelation::kStartedBy;
    if (xmax == ymax) return AllenRelation::kFinishedBy;
    return AllenRelation::kContains;
  }
  if (both.empty()) {
    if (xmax + 1 == ymin) return AllenRelation::kMeets;
    if (ymax + 1 == xmin) return AllenRelation::kMetBy;
    return xmax < ymin ? AllenRelation::kBefore : AllenRelation::kAfter;
  }
  return xmin < ymin ? AllenRelation::kOverlaps : AllenRelation::kOverlappedBy;
}

}  // namespace

TEST_CASE("intervals reject singular or negative bounds") {
  CHECK_THROWS_AS(Interval(3, 3), PreconditionError);
  CHECK_THROWS_AS(Interval(4, 2), PreconditionError);
  CHECK_THROWS_AS(Interval(-1, 2), PreconditionError);
  CHECK(Interval(2, 7).size() == 5);
}

TEST_CASE("documented relation examples") {
  CHECK(allen_relation({0, 2}, {2, 5}) == AllenRelation::kMeets);
  CHECK(allen_relation({0, 5}, {1, 3}) == AllenRelation::kContains);
  CHECK(allen_relation({0, 3}, {2, 5}) == AllenRelation::kOverlaps);
  CHECK(allen_relation({2, 5}, {0, 5}) == AllenRelation::kFinishes);
}

TEST_CASE("exactly one relation holds and agrees with the point-set oracle") {
  const int kMax = 12;
  for (int xl = 0; xl < kMax; ++xl) {
    for (int xr = xl + 1; xr <= kMax; ++xr) {
      for (int yl = 0; yl < kMax; ++yl) {
        for (int yr = yl + 1; yr <= kMax; ++yr) {
          const Interval x(xl, xr), y(yl, yr);
          const AllenRelation rel = allen_relation(x, y);
          REQUIRE(rel == set_oracle(x, y));
          int count = 0;
          for (int i = 0; i < kNumAllenRelations; ++i) {
            count += holds(static_cast<AllenRelation>(i), x, y) ? 1 : 0;
          }
          REQUIRE(count == 1);
          REQUIRE(allen_relation(y, x) == inverse(rel));
        }
      }
    }
  }
}

TEST_CASE("relation names round-trip") {
  for (int i = 0; i < kNumAllenRelations; ++i) {
    const auto rel = static_cast<AllenRelation>(i);
    CHECK(allen_relation_from_string(to_string(rel)) == rel);
    CHECK(inverse(inverse(rel)) == rel);
  }
  CHECK_FALSE(allen_relation_from_string("sideways").has_value());
}

TEST_CASE("composite relations") {
  CHECK(holds_composite(CompositeRelation::kDisjoint, {0, 2}, {2, 4}));
  CHECK_FALSE(holds_composite(CompositeRelation::kDisjoint, {0, 3}, {2, 4}));
  CHECK(holds_composite(CompositeRelation::kSubinterval, {0, 4}, {1, 2}));
  CHECK(holds_composite(CompositeRelation::kSubinterval, {0, 4}, {0, 4}));
  CHECK_FALSE(holds_composite(CompositeRelation::kSubinterval, {1, 2}, {0, 4}));
}

TEST_CASE("decompose") {
  const Tqa t{"p", true, Interval(0, 5)};
  const std::vector<TimePoint> one{2};
  auto pieces = decompose(t, one);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].interval == Interval(0, 2));
  CHECK(pieces[1].interval == Interval(2, 5));
  CHECK(decompose(t, {}).size() == 1);
  const std::vector<TimePoint> bad{5};
  CHECK_THROWS_AS(decompose(t, bad), PreconditionError);
  const std::vector<TimePoint> unordered{3, 2};
  CHECK_THROWS_AS(decompose(t, unordered), PreconditionError);
}

TEST_CASE("check_tqa and history errors") {
  History h({"p"}, 5);
  h.assign(Interval(0, 3), "p", true);
  CHECK(check_tqa(h, {"p", true, Interval(0, 3)}));
  CHECK_FALSE(check_tqa(h, {"p", true, Interval(0, 4)}));
  CHECK(check_tqa(h, {"p", false, Interval(3, 5)}));
  CHECK_THROWS_WITH_AS(check_tqa(h, {"p", false, Interval(3, 6)}), "history too short",
                       PreconditionError);
  CHECK_THROWS_AS(check_tqa(h, {"q", true, Interval(0, 1)}), PreconditionError);
}

TEST_CASE("segments are maximal runs") {
  History h({"p"}, 7);
  h.assign(Interval(2, 5), "p", true);
  const auto segs = h.segments(0);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0] == std::make_pair(false, Interval(0, 2)));
  CHECK(segs[1] == std::make_pair(true, Interval(2, 5)));
  CHECK(segs[2] == std::make_pair(false, Interval(5, 7)));
  History single({"p"}, 1);
  CHECK(single.segments(0).size() == 1);
  History empty({"p"}, 0);
  CHECK(empty.segments(0).empty());
}

TEST_CASE("homogeneity, mutex and decomposition over all small histories") {
  const int kH = 6;
  for (int bits = 0; bits < (1 << kH); ++bits) {
    History h({"p"}, kH);
    for (int t = 0; t < kH; ++t) h.set(t, size_t{0}, ((bits >> t) & 1) != 0);
    for (int xl = 0; xl < kH; ++xl) {
      for (int xr = xl + 1; xr <= kH; ++xr) {
        const Interval x(xl, xr);
        for (bool pol : {true, false}) {
          const bool whole = check_tqa(h, {"p", pol, x});
          bool all_sub = true;
          for (int yl = xl; yl < xr; ++yl) {
            for (int yr = yl + 1; yr <= xr; ++yr) {
              all_sub = all_sub && check_tqa(h, {"p", pol, Interval(yl, yr)});
            }
          }
          REQUIRE(whole == all_sub);
          // Every cut set of the interior.
          const int interior = x.size() - 1;
          for (int mask = 0; mask < (1 << interior); ++mask) {
            std::vector<TimePoint> cuts;
            for (int i = 0; i < interior; ++i) {
              if ((mask >> i) & 1) cuts.push_back(xl + 1 + i);
            }
            bool pieces = true;
            for (const auto& piece : decompose({"p", pol, x}, cuts)) {
              pieces = pieces && check_tqa(h, piece);
            }
            REQUIRE(pieces == whole);
          }
        }
        for (int yl = 0; yl < kH; ++yl) {
          for (int yr = yl + 1; yr <= kH; ++yr) {
            const Interval y(yl, yr);
            if (check_tqa(h, {"p", true, x}) && check_tqa(h, {"p", false, y})) {
              REQUIRE(holds_composite(CompositeRelation::kDisjoint, x, y));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("sentences") {
  History h({"p", "q"}, 4);
  h.assign(Interval(0, 2), "p", true);
  h.assign(Interval(0, 4), "q", true);
  IntervalBindings b{{"X", Interval(0, 2)}, {"Y", Interval(2, 4)}};
  auto s = make_and({make_tqa("p", "X"), make_relation(AllenRelation::kMeets, "X", "Y")});
  CHECK(check_sentence(h, b, *s));
  b.insert_or_assign("Y", Interval(3, 4));
  CHECK_FALSE(check_sentence(h, b, *s));
  auto d = make_or({make_tqa("p", "Y"), make_tqa("q", "Y")});
  CHECK(check_sentence(h, b, *d));
  auto unbound = make_or({make_tqa("q", "X"), make_tqa("p", "Z")});
  CHECK_THROWS_AS(check_sentence(h, b, *unbound), PreconditionError);
}
