#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vesselkit/connectivity.hpp"

using namespace vesselkit;

namespace {

// Two 10-pixel runs on row 2 with a 2-pixel gap between them.
BinaryMask gap_mask() {
  BinaryMask m(30, 5);
  for (int x = 0; x < 10; ++x) m.set(x, 2, true);
  for (int x = 12; x < 22; ++x) m.set(x, 2, true);
  return m;
}

bool contains(const BinaryMask& outer, const BinaryMask& inner) {
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner.pixels()[i] && !outer.pixels()[i]) return false;
  }
  return true;
}

}  // namespace

TEST(Lscf, BridgesTwoPixelGap) {
  const auto r = ls_connectivity_filter(gap_mask());
  BinaryMask joined(30, 5);
  for (int x = 0; x < 22; ++x) joined.set(x, 2, true);
  EXPECT_EQ(r.repaired, joined);
  for (int x = 0; x < 22; ++x) EXPECT_EQ(r.scores(x, 2), 22u);
  EXPECT_EQ(r.scores(25, 2), 0u);
}

TEST(Lscf, NoReachLeavesGap) {
  LscfParams p;
  p.max_dist = 1;
  p.max_score = 0;
  const auto r = ls_connectivity_filter(gap_mask(), p);
  EXPECT_EQ(r.repaired, gap_mask());
  EXPECT_EQ(r.scores(0, 2), 10u);
  EXPECT_EQ(r.scores(21, 2), 10u);
}

TEST(Lscf, SmallBudgetCannotCrossGap) {
  LscfParams p;
  p.max_score = 1;
  const auto r = ls_connectivity_filter(gap_mask(), p);
  EXPECT_EQ(r.repaired, gap_mask());
}

TEST(Lscf, WideGapNeedsLargerReach) {
  BinaryMask m(40, 3);
  for (int x = 0; x < 10; ++x) m.set(x, 1, true);
  for (int x = 16; x < 26; ++x) m.set(x, 1, true);
  EXPECT_EQ(ls_connectivity_filter(m).repaired, m);
  LscfParams p;
  p.max_dist = 12;
  const auto r = ls_connectivity_filter(m, p);
  EXPECT_EQ(r.scores(0, 1), 26u);
}

TEST(Lscf, ZeroBudgetIsPlainCf) {
  std::mt19937_64 rng(31);
  LscfParams p;
  p.max_score = 0;
  for (int i = 0; i < 60; ++i) {
    const auto m = oracle::random_mask(rng, 30, 30, 0.1 + 0.1 * (i % 9));
    for (auto conn : {Connectivity::Four, Connectivity::Eight}) {
      p.connectivity = conn;
      const auto r = ls_connectivity_filter(m, p);
      ASSERT_EQ(r.repaired, m);
      ASSERT_EQ(r.scores, connectivity_filter(m, conn));
    }
  }
}

TEST(Lscf, RepairOnlyAddsPixels) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 60; ++i) {
    const auto m = oracle::random_mask(rng, 30, 30, 0.05 + 0.1 * (i % 9));
    const auto r = ls_connectivity_filter(m);
    ASSERT_TRUE(contains(r.repaired, m));
    ASSERT_EQ(r.scores, oracle::component_sizes(r.repaired, 8));
    const auto cf = connectivity_filter(m);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m.pixels()[k]) {
        ASSERT_GE(r.scores.pixels()[k], cf.pixels()[k]);
      }
    }
  }
}

TEST(Lscf, FourConnectedBridgeIsFourConnected) {
  // Diagonal gap between two runs; with 4-connectivity the bridge must be
  // 4-connected so that the pieces end up in one component.
  BinaryMask m(20, 20);
  for (int x = 0; x < 6; ++x) m.set(x, 5, true);
  for (int x = 8; x < 14; ++x) m.set(x, 7, true);
  LscfParams p;
  p.connectivity = Connectivity::Four;
  p.max_dist = 8;
  const auto r = ls_connectivity_filter(m, p);
  EXPECT_EQ(r.scores(0, 5), r.scores(13, 7));
  EXPECT_GT(r.scores(0, 5), 12u);
}

TEST(Lscf, RejectsBadParams) {
  LscfParams p;
  p.max_dist = 0;
  EXPECT_THROW(ls_connectivity_filter(gap_mask(), p), std::invalid_argument);
  p = {};
  p.max_score = -1;
  EXPECT_THROW(ls_connectivity_filter(gap_mask(), p), std::invalid_argument);
}

TEST(Lscf, Deterministic) {
  std::mt19937_64 rng(40);
  const auto m = oracle::random_mask(rng, 64, 64, 0.3);
  const auto a = ls_connectivity_filter(m);
  const auto b = ls_connectivity_filter(m);
  EXPECT_EQ(a.repaired, b.repaired);
  EXPECT_EQ(a.scores, b.scores);
}
