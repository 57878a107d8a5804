#include "tll/oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "test_support.hpp"

namespace tll::oracle {
namespace {

using testing::I;
using testing::R;

const Window kW15{0, 15};
const Window kW16{0, 16};

Landscape in_room() {
  return join(roof(kW15, 3, 6), roof(kW15, 7, 15));
}

TEST(Grid, MidpointsAvoidCoarseBreakpoints) {
  GridSpec g(kW16, 256);
  EXPECT_EQ(g.pitch(), Rat(1, 16));
  EXPECT_EQ(g.point(0), Rat(1, 32));
  EXPECT_EQ(g.point(255), Rat(511, 32));
  for (const auto& t : g.points()) EXPECT_FALSE((t * Rat(2)).is_integer());
}

TEST(Grid, RejectsZeroResolution) {
  EXPECT_THROW(GridSpec(kW16, 0), std::invalid_argument);
}

TEST(ImpliesMember, DwellExampleAtCoarseGrid) {
  GridSpec g(kW15, 600);
  const auto cap3 = cap(kW15, 3);
  EXPECT_TRUE(oracle_implies_member(in_room(), cap3, I("1", "9"), g));
  EXPECT_FALSE(oracle_implies_member(in_room(), cap3, I("1", "11"), g));
}

TEST(ImpliesMember, ReflexiveAndVacuous) {
  GridSpec g(kW15, 120);
  const auto phi = in_room();
  EXPECT_TRUE(oracle_implies_member(phi, phi, I("0", "15"), g));
  EXPECT_TRUE(oracle_implies_member(falsity(kW15), cap(kW15, 1), I("2", "14"),
                                    g));
}

TEST(Forall, GridWorldNeighborsNotFreeAcrossBothObstacles) {
  const Window w{0, 9};
  GridSpec g(w, 256);
  const std::vector<Landscape> free{join(roof(w, 0, 3), roof(w, 4, 9)),
                                    join(roof(w, 0, 4), roof(w, 5, 9)),
                                    truth(w), truth(w)};
  EXPECT_FALSE(oracle_forall(free, I("3.5", "4.5"), g));
  EXPECT_TRUE(oracle_forall(free, I("1", "2"), g));
  EXPECT_TRUE(oracle_forall({}, I("3.5", "4.5"), g));
  const std::vector<Landscape> one{roof(w, 1, 5)};
  EXPECT_TRUE(oracle_forall(one, I("2", "4"), g));
  EXPECT_FALSE(oracle_forall(one, I("2", "5"), g));
}

TEST(ImplicationOracle, ReadsTheOpenInterior) {
  // Degenerate intervals inside phi's support are not vacuous members.
  const auto phi = roof(kW15, 2, 6);
  ImplicationOracle neg(phi, falsity(kW15), GridSpec(kW15, 1024));
  EXPECT_FALSE(neg(I("3", "3")));
  EXPECT_TRUE(neg(I("7", "9")));
  EXPECT_TRUE(neg(I("0.5", "1.9")));
}

TEST(ImplicationOracle, Nests) {
  // !!phi through nested oracles, phi = roof(2,6) || roof(6,9).
  const auto phi = join(roof(kW15, 2, 6), roof(kW15, 6, 9));
  const GridSpec inner(kW15, 2048);
  auto no = std::make_shared<ImplicationOracle>(phi, falsity(kW15), inner);
  ImplicationOracle nn([no](const Interval& iv) { return (*no)(iv); },
                       membership(falsity(kW15)), inner);
  EXPECT_TRUE(nn(I("5", "7")));
  EXPECT_FALSE(phi.contains(I("5", "7")));
  EXPECT_FALSE(nn(I("1", "3")));
}

TEST(Compare, ImplicationOfSelfAgreesEverywhere) {
  std::mt19937_64 rng(11);
  const auto phi = random_landscape(kW16, rng);
  GridSpec g(kW16, 128);
  ImplicationOracle o(phi, phi, GridSpec(kW16, inner_resolution(128)));
  const auto rep = compare(implies(phi, phi), o, g);
  EXPECT_EQ(rep.near + rep.far, 0u);
  EXPECT_EQ(rep.agree, 128u * 129u / 2u);
  EXPECT_EQ(rep.str(), "agree=8256 near=0 far=0\n");
}

TEST(Compare, DwellExampleHasNoFarDisagreement) {
  GridSpec g(kW15, 300);
  const auto cap3 = cap(kW15, 3);
  ImplicationOracle o(in_room(), cap3, GridSpec(kW15, inner_resolution(300)));
  const auto rep = compare(implies(in_room(), cap3), o, g);
  EXPECT_EQ(rep.far, 0u) << rep.str();
}

TEST(Compare, ReportsFarWitnessForCorruptedResult) {
  GridSpec g(kW15, 64);
  const auto cap3 = cap(kW15, 3);
  const auto wrong = implies(in_room(), cap(kW15, 5));
  ImplicationOracle o(in_room(), cap3, GridSpec(kW15, 1024));
  const auto rep = compare(wrong, o, g);
  ASSERT_GT(rep.far, 0u);
  ASSERT_TRUE(rep.first_far.has_value());
  EXPECT_TRUE(rep.first_far->core);
  EXPECT_FALSE(rep.first_far->oracle);
  EXPECT_NE(rep.str().find("witness ["), std::string::npos);
}

TEST(Compare, RejectsWindowMismatch) {
  GridSpec g(kW16, 16);
  EXPECT_THROW(compare(truth(kW15), [](const Interval&) { return true; }, g),
               WindowError);
}

TEST(NearBoundary, ChebyshevBoxAgainstPolyline) {
  const auto r = roof(kW16, 2, 6);
  EXPECT_TRUE(near_boundary(r, I("3", "5.9"), R("1/8")));
  EXPECT_TRUE(near_boundary(r, I("2.05", "4"), R("1/8")));
  EXPECT_FALSE(near_boundary(r, I("3", "5"), R("1/8")));
  EXPECT_TRUE(near_boundary(r, I("8", "8"), R("1/8")));
}

TEST(RandomLandscape, ReproducibleAndBounded) {
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  for (int k = 0; k < 200; ++k) {
    const auto la = random_landscape(kW16, a);
    EXPECT_EQ(la, random_landscape(kW16, b));
    EXPECT_LE(la.segments().size(), 9u);
  }
}

// --- agreement of every core operation at n = 256 ------------------------

class Agreement : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240};
  GridSpec grid{kW16, 256};
  GridSpec inner{kW16, inner_resolution(256)};

  Landscape next() { return random_landscape(kW16, rng); }

  void expect_no_far(const Landscape& core, const Membership& def) {
    const auto rep = compare(core, def, grid);
    EXPECT_EQ(rep.far, 0u) << rep.str();
  }
};

TEST_F(Agreement, Meet) {
  for (int k = 0; k < 100; ++k) {
    const auto a = next(), b = next();
    expect_no_far(meet(a, b), [&](const Interval& iv) {
      return a.contains(iv) && b.contains(iv);
    });
  }
}

TEST_F(Agreement, Join) {
  for (int k = 0; k < 100; ++k) {
    const auto a = next(), b = next();
    expect_no_far(join(a, b), [&](const Interval& iv) {
      return a.contains(iv) || b.contains(iv);
    });
  }
}

TEST_F(Agreement, Negate) {
  for (int k = 0; k < 100; ++k) {
    const auto a = next();
    expect_no_far(negate(a), ImplicationOracle(a, falsity(kW16), inner));
  }
}

TEST_F(Agreement, Implies) {
  for (int k = 0; k < 100; ++k) {
    const auto a = next(), b = next();
    expect_no_far(implies(a, b), ImplicationOracle(a, b, inner));
  }
}

TEST_F(Agreement, ForallAndExists) {
  for (int k = 0; k < 100; ++k) {
    std::vector<Landscape> ls;
    const int count = static_cast<int>(rng() % 5);
    for (int i = 0; i < count; ++i) ls.push_back(next());
    expect_no_far(forall_finite(kW16, ls), [&](const Interval& iv) {
      return oracle_forall(ls, iv, grid);
    });
    expect_no_far(exists_finite(kW16, ls), [&](const Interval& iv) {
      for (const auto& l : ls) {
        if (l.contains(iv)) return true;
      }
      return false;
    });
  }
}

}  // namespace
}  // namespace tll::oracle
