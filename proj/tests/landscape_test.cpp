#include "tll/landscape.hpp"

#include <gtest/gtest.h>

#include <random>

#include "laws.hpp"
#include "test_support.hpp"
#include "tll/oracle.hpp"
#include "tll/landscape_io.hpp"

namespace tll {
namespace {

using testing::I;
using testing::pts;
using testing::R;

const Window kW9{0, 9};
const Window kW6{0, 6};
const Window kW15{0, 15};

Landscape join_all(const Window& w, std::initializer_list<Landscape> ls) {
  std::vector<Landscape> v(ls);
  return exists_finite(w, v);
}

// --- from_segments ---------------------------------------------------------

TEST(FromSegments, IdentityBoundaryIsFalse) {
  auto l = Landscape::from_segments(kW9, {{0, 9, 0, 9}});
  EXPECT_TRUE(l.is_false());
  EXPECT_EQ(l, falsity(kW9));
}

TEST(FromSegments, MergesCollinearDiagonalPieces) {
  auto l = Landscape::from_segments(kW9, {{0, 4, 0, 4}, {4, 9, 4, 9}});
  ASSERT_EQ(l.segments().size(), 1u);
  EXPECT_EQ(l, falsity(kW9));
}

TEST(FromSegments, KeepsJumpBetweenCollinearPieces) {
  auto l = Landscape::from_segments(kW9, {{0, 4, 0, 4}, {4, 9, 5, 9}});
  EXPECT_EQ(l.segments().size(), 2u);
}

LandscapeError::Kind kind_of(const Window& w, std::vector<Segment> segs) {
  try {
    Landscape::from_segments(w, std::move(segs));
  } catch (const LandscapeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected LandscapeError";
  return LandscapeError::Kind::kEmpty;
}

TEST(FromSegments, DistinctValidationErrors) {
  using K = LandscapeError::Kind;
  // f(2) = 1 sits below the diagonal.
  EXPECT_EQ(kind_of(kW9, {{0, 2, 0, 1}, {2, 9, 2, 9}}), K::kBelowDiagonal);
  EXPECT_EQ(kind_of(kW9, {{0, 4, 0, 4}, {5, 9, 5, 9}}), K::kGap);
  EXPECT_EQ(kind_of(kW9, {{0, 5, 0, 5}, {4, 9, 5, 9}}), K::kOverlap);
  EXPECT_EQ(kind_of(kW9, {{0, 4, 6, 6}, {4, 9, 5, 9}}), K::kDownwardJump);
  EXPECT_EQ(kind_of(kW9, {{0, 9, 9, 10}}), K::kAboveWindow);
  EXPECT_EQ(kind_of(kW9, {{0, 4, 0, 4}}), K::kGap);
  EXPECT_EQ(kind_of(kW9, {}), K::kEmpty);
  EXPECT_EQ(kind_of(kW9, {{0, 9, 9, 8}}), K::kDescending);
}

TEST(FromSegments, ErrorNamesSegmentIndex) {
  try {
    Landscape::from_segments(kW9, {{0, 2, 2, 2}, {2, 5, 3, 4}, {5, 9, 5, 9}});
    FAIL();
  } catch (const LandscapeError& e) {
    EXPECT_EQ(e.index(), 1u);
    EXPECT_EQ(e.kind(), LandscapeError::Kind::kBelowDiagonal);
  }
}

// --- roof / constant / cap -------------------------------------------------

TEST(Roof, StrictMembership) {
  auto r = roof(kW9, 1, 5);
  EXPECT_TRUE(member(r, I("2", "4")));
  EXPECT_FALSE(member(r, I("1", "3")));
  EXPECT_FALSE(member(r, I("5", "5")));
  EXPECT_TRUE(member(r, I("4.99", "4.99")));
  EXPECT_FALSE(member(r, I("2", "5")));
}

TEST(Roof, RejectsBadBounds) {
  EXPECT_THROW(roof(kW9, 5, 5), std::invalid_argument);
  EXPECT_THROW(roof(kW9, 6, 2), std::invalid_argument);
  EXPECT_THROW(roof(kW9, -1, 2), std::invalid_argument);
  EXPECT_THROW(roof(kW9, 3, 10), std::invalid_argument);
}

TEST(Constant, TrueAndFalse) {
  EXPECT_TRUE(member(truth(kW6), I("1", "5.9")));
  EXPECT_FALSE(member(falsity(kW6), I("3", "3")));
  EXPECT_EQ(truth(kW6), roof(kW6, 0, 6));
}

TEST(Cap, CappedAtTau) {
  auto c = cap(kW15, 3);
  EXPECT_TRUE(member(c, I("3.5", "6")));
  EXPECT_FALSE(member(c, I("2", "5")));
  EXPECT_EQ(cap(kW15, 0), falsity(kW15));
  EXPECT_EQ(cap(kW15, 15), truth(kW15));
  EXPECT_THROW(cap(kW15, -1), std::invalid_argument);
  EXPECT_EQ(c.boundary_at(4), Rat(7));
  EXPECT_EQ(c.polyline(), pts({{"0", "0"}, {"0", "3"}, {"12", "15"}, {"15", "15"}}));
}

TEST(BoundaryAt, LeftContinuousAtJumps) {
  auto r = roof(kW9, 1, 5);
  EXPECT_EQ(r.boundary_at(3), Rat(5));
  EXPECT_EQ(r.boundary_at(1), Rat(1));
  EXPECT_EQ(r.right_limit(1), Rat(5));
  EXPECT_EQ(r.boundary_at(5), Rat(5));
  EXPECT_THROW((void)r.boundary_at(0), std::out_of_range);
  EXPECT_THROW((void)r.boundary_at(10), std::out_of_range);
}

TEST(Member, WindowEdgeIsExcluded) {
  EXPECT_FALSE(member(truth(kW9), I("0", "1")));
  EXPECT_FALSE(member(truth(kW9), I("-1", "1")));
  EXPECT_FALSE(member(truth(kW9), I("9.5", "10")));
}

// --- occupancy example -----------------------------------------------------

Landscape occupancy() {
  return join_all(kW6, {roof(kW6, 0, 3), roof(kW6, 2, 4), roof(kW6, 5, 6)});
}

TEST(Join, OccupancyStaircase) {
  auto occ = occupancy();
  EXPECT_EQ(occ.polyline(), pts({{"0", "0"},
                                 {"0", "3"},
                                 {"2", "3"},
                                 {"2", "4"},
                                 {"4", "4"},
                                 {"5", "5"},
                                 {"5", "6"},
                                 {"6", "6"}}));
  EXPECT_FALSE(member(occ, I("1.5", "3.5")));
  EXPECT_TRUE(member(occ, I("2.5", "3.8")));
}

TEST(Negate, OccupancyFreeAndDoubleNegation) {
  auto occ = occupancy();
  auto free = negate(occ);
  EXPECT_EQ(free, roof(kW6, 4, 5));
  auto nn = negate(free);
  EXPECT_EQ(nn, join(roof(kW6, 0, 4), roof(kW6, 5, 6)));
  EXPECT_TRUE(leq(occ, nn));
  EXPECT_NE(occ, nn);
  EXPECT_TRUE(member(nn, I("1.5", "3.5")));
}

TEST(Negate, RoofGap) {
  auto phi = join(roof(kW6, 0, 3), roof(kW6, 5, 6));
  EXPECT_EQ(negate(phi), roof(kW6, 3, 5));
  EXPECT_EQ(negate(falsity(kW6)), truth(kW6));
  EXPECT_EQ(negate(truth(kW6)), falsity(kW6));
}

// --- grid world minimum ----------------------------------------------------

TEST(Meet, NeighborhoodMinimum) {
  auto free_r = join(roof(kW9, 0, 3), roof(kW9, 4, 9));
  auto free_u = join(roof(kW9, 0, 4), roof(kW9, 5, 9));
  std::vector<Landscape> nbrs{free_r, free_u, truth(kW9), truth(kW9)};
  auto all = forall_finite(kW9, nbrs);
  EXPECT_EQ(all.polyline(), pts({{"0", "0"},
                                 {"0", "3"},
                                 {"3", "3"},
                                 {"5", "5"},
                                 {"5", "9"},
                                 {"9", "9"}}));
  EXPECT_EQ(meet(free_r, free_u), all);
  EXPECT_FALSE(member(all, I("3.5", "4.5")));
}

TEST(Meet, Identities) {
  auto occ = join(roof(kW9, 1, 5), roof(kW9, 6, 8));
  EXPECT_EQ(meet(occ, truth(kW9)), occ);
  EXPECT_EQ(meet(roof(kW9, 1, 5), roof(kW9, 7, 9)), falsity(kW9));
  EXPECT_EQ(join(occ, falsity(kW9)), occ);
}

TEST(Meet, InsertsCrossings) {
  auto cap3 = cap(kW9, 3);
  auto r = roof(kW9, 1, 8);
  auto m = meet(cap3, r);
  // min(t+3, 8) on (1, 8]: crossing at t = 5.
  EXPECT_EQ(m.polyline(), pts({{"0", "0"},
                               {"1", "1"},
                               {"1", "4"},
                               {"5", "8"},
                               {"8", "8"},
                               {"9", "9"}}));
}

TEST(Lattice, WindowMismatchRejected) {
  EXPECT_THROW(meet(truth(kW6), truth(kW9)), WindowError);
  EXPECT_THROW(join(truth(kW6), truth(kW9)), WindowError);
  EXPECT_THROW(implies(truth(kW6), truth(kW9)), WindowError);
  EXPECT_THROW(leq(truth(kW6), truth(kW9)), WindowError);
}

// --- implication example ---------------------------------------------------

TEST(Implies, DwellTimeExample) {
  auto in_room = join(roof(kW15, 3, 6), roof(kW15, 7, 15));
  auto result = implies(in_room, cap(kW15, 3));
  EXPECT_EQ(result.polyline(), pts({{"0", "0"},
                                    {"0", "10"},
                                    {"7", "10"},
                                    {"12", "15"},
                                    {"15", "15"}}));
  EXPECT_TRUE(member(result, I("0.5", "9.9")));
  EXPECT_FALSE(member(result, I("1", "11")));
  EXPECT_TRUE(member(result, I("1", "9")));
}

TEST(Implies, Identities) {
  auto l = join(roof(kW15, 3, 6), cap(kW15, 2));
  EXPECT_EQ(implies(l, l), truth(kW15));
  EXPECT_EQ(implies(truth(kW15), l), l);
  EXPECT_EQ(implies(falsity(kW15), l), truth(kW15));
  EXPECT_EQ(implies(l, truth(kW15)), truth(kW15));
}

TEST(Implies, ReturnsInteriorOfLiteralSet) {
  // psi = <2,5>: the literal set contains [2,5] itself, which no open set
  // may. The interior excludes it.
  auto psi = roof(kW9, 2, 5);
  auto r = implies(truth(kW9), psi);
  EXPECT_EQ(r, psi);
  EXPECT_FALSE(member(r, I("2", "5")));
}

// --- leq -------------------------------------------------------------------

TEST(Leq, Order) {
  EXPECT_TRUE(leq(roof(kW9, 2, 4), roof(kW9, 1, 5)));
  EXPECT_FALSE(leq(roof(kW9, 1, 5), roof(kW9, 2, 4)));
  EXPECT_TRUE(leq(cap(kW9, 3), truth(kW9)));
  EXPECT_FALSE(leq(cap(kW9, 3), cap(kW9, 2)));
  EXPECT_TRUE(leq(falsity(kW9), cap(kW9, 2)));
}

// --- exists over sampled roofs converges to cap --------------------------

TEST(ExistsFinite, SampledRoofsApproachCapFromBelow) {
  const Window w{0, 15};
  auto c = cap(w, 3);
  Rat prev_gap(100);
  for (int denom : {2, 4, 8}) {
    std::vector<Landscape> roofs;
    for (int k = 0; Rat(k, denom) + 3 <= w.hi; ++k) {
      roofs.push_back(roof(w, Rat(k, denom), Rat(k, denom) + 3));
    }
    auto approx = exists_finite(w, roofs);
    EXPECT_TRUE(leq(approx, c));
    EXPECT_NE(approx, c);
    // Largest deficit c - approx on the staircase is exactly the step 1/denom.
    Rat gap(0);
    for (const auto& s : approx.segments()) {
      gap = max(gap, c.boundary_at(s.t_hi) - s.v_hi);
      if (s.t_lo > w.lo) gap = max(gap, c.right_limit(s.t_lo) - s.v_lo);
    }
    EXPECT_EQ(gap, Rat(1, denom));
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
}

TEST(Quantifiers, EmptyAndSingleton) {
  std::vector<Landscape> none;
  EXPECT_EQ(forall_finite(kW9, none), truth(kW9));
  EXPECT_EQ(exists_finite(kW9, none), falsity(kW9));
  std::vector<Landscape> one{roof(kW9, 2, 7)};
  EXPECT_EQ(forall_finite(kW9, one), one[0]);
  EXPECT_EQ(exists_finite(kW9, one), one[0]);
}

// --- serialization ---------------------------------------------------------

TEST(Serialization, RainfallRoundTrip) {
  const Window day{0, 24};
  auto rain = join_all(day, {roof(day, 1, 5), roof(day, 7, 9), roof(day, 13, 20)});
  auto text = to_text(rain);
  EXPECT_EQ(landscape_from_text(text), rain);
  EXPECT_EQ(text,
            "window 0 24\n"
            "seg 0 1 0 1\n"
            "seg 1 5 5 5\n"
            "seg 5 7 5 7\n"
            "seg 7 9 9 9\n"
            "seg 9 13 9 13\n"
            "seg 13 20 20 20\n"
            "seg 20 24 20 24\n");
}

TEST(Serialization, AcceptsDecimalsAndComments) {
  auto l = landscape_from_text(
      "# cap of one half\nwindow 0 2\nseg 0 1.5 0.5 2  # rising\nseg 3/2 2 2 2\n");
  EXPECT_EQ(l, cap(Window{0, 2}, R("1/2")));
}

TEST(Serialization, Errors) {
  EXPECT_THROW(landscape_from_text("seg 0 1 0 1\n"), ParseError);
  EXPECT_THROW(landscape_from_text("window 0 1\nseg 0 1 x 1\n"), ParseError);
  EXPECT_THROW(landscape_from_text("window 0 1\nbogus\n"), ParseError);
  EXPECT_THROW(landscape_from_text("window 0 2\nseg 0 1 0 1\n"), LandscapeError);
}

// --- properties over random landscapes -------------------------------------

const Window kW16{0, 16};

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "; ";
  return out;
}

TEST(Properties, DistributiveLatticeLaws) {
  std::mt19937_64 rng(1001);
  for (int k = 0; k < 500; ++k) {
    const auto a = oracle::random_landscape(kW16, rng);
    const auto b = oracle::random_landscape(kW16, rng);
    const auto c = oracle::random_landscape(kW16, rng);
    const auto bad = testing::lattice_failures(a, b, c);
    ASSERT_TRUE(bad.empty()) << joined(bad) << "\n" << to_text(a) << to_text(b) << to_text(c);
  }
}

TEST(Properties, HeytingLaws) {
  std::mt19937_64 rng(1002);
  int strict = 0;
  for (int k = 0; k < 300; ++k) {
    const auto x = oracle::random_landscape(kW16, rng);
    const auto phi = oracle::random_landscape(kW16, rng);
    const auto psi = oracle::random_landscape(kW16, rng);
    bool s = false;
    const auto bad = testing::heyting_failures(x, phi, psi, &s);
    strict += s;
    ASSERT_TRUE(bad.empty()) << joined(bad) << "\n"
                             << to_text(x) << to_text(phi) << to_text(psi);
  }
  EXPECT_GT(strict, 0);
}

TEST(Properties, MembersAreDownClosedAndOpen) {
  std::mt19937_64 rng(1003);
  for (int k = 0; k < 40; ++k) {
    const auto l = oracle::random_landscape(kW16, rng);
    const auto bad = testing::openness_failures(l, rng, 500);
    ASSERT_TRUE(bad.empty()) << bad.front() << "\n" << to_text(l);
  }
}

TEST(Properties, NormalizationIsIdempotent) {
  std::mt19937_64 rng(1004);
  for (int k = 0; k < 300; ++k) {
    const auto l = oracle::random_landscape(kW16, rng);
    const auto segs = l.segments();
    const auto again =
        Landscape::from_segments(kW16, std::vector<Segment>(segs.begin(), segs.end()));
    EXPECT_EQ(again, l);
    EXPECT_EQ(landscape_from_text(to_text(l)), l);
  }
}

TEST(Properties, JoinAndMeetArePointwiseMaxAndMin) {
  std::mt19937_64 rng(1005);
  for (int k = 0; k < 300; ++k) {
    const auto a = oracle::random_landscape(kW16, rng);
    const auto b = oracle::random_landscape(kW16, rng);
    const auto j = join(a, b);
    const auto m = meet(a, b);
    for (int s = 0; s < 50; ++s) {
      const Rat t = testing::random_between(rng, kW16.lo, kW16.hi) + Rat(1, 8192);
      EXPECT_EQ(j.boundary_at(t), max(a.boundary_at(t), b.boundary_at(t)));
      EXPECT_EQ(m.boundary_at(t), min(a.boundary_at(t), b.boundary_at(t)));
    }
  }
}

}  // namespace
}  // namespace tll
