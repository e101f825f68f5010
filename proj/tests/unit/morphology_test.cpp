#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vesselkit/morphology.hpp"

using namespace vesselkit;

namespace {

bool contains(const BinaryMask& outer, const BinaryMask& inner) {
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner.pixels()[i] && !outer.pixels()[i]) return false;
  }
  return true;
}

const StructuringElement kCross = StructuringElement::cross();

}  // namespace

TEST(Dilate, Examples) {
  BinaryMask dot(5, 5);
  dot.set(2, 2, true);
  EXPECT_EQ(dilate(dot, kCross),
            oracle::mask_from_rows({".....", "..#..", ".###.", "..#..", "....."}));
  EXPECT_EQ(dilate(BinaryMask(4, 4), kCross), BinaryMask(4, 4));
  BinaryMask corner(4, 4);
  corner.set(0, 0, true);
  EXPECT_EQ(dilate(corner, kCross).count(), 3u);
}

TEST(Erode, Examples) {
  const auto plus = oracle::mask_from_rows({".....", "..#..", ".###.", "..#..", "....."});
  BinaryMask center(5, 5);
  center.set(2, 2, true);
  EXPECT_EQ(erode(plus, kCross), center);
  const BinaryMask white(6, 5, std::vector<std::uint8_t>(30, 1));
  const auto e = erode(white, kCross);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 6; ++x) {
      EXPECT_EQ(e(x, y), x > 0 && y > 0 && x < 5 && y < 4);
    }
  }
  EXPECT_EQ(erode(center, kCross).count(), 0u);
}

TEST(Close, Examples) {
  // Two bars with a one-pixel gap: the gap closes where the cross fits.
  EXPECT_EQ(close(oracle::mask_from_rows({".......", "##.##..", "##.##..", "##.##..", "......."}), kCross),
            oracle::mask_from_rows({".......", "##.##..", "#####..", "##.##..", "......."}));
  // Two isolated pixels are not bridged: the cross does not fit the gap.
  EXPECT_EQ(close(oracle::mask_from_rows({".....", ".#.#.", "....."}), kCross),
            oracle::mask_from_rows({".....", ".#.#.", "....."}));
  EXPECT_EQ(close(BinaryMask(4, 3), kCross), BinaryMask(4, 3));
  auto block = oracle::mask_from_rows({"......", ".####.", ".#.##.", ".####.", "......"});
  auto filled = oracle::mask_from_rows({"......", ".####.", ".####.", ".####.", "......"});
  EXPECT_EQ(close(block, kCross), filled);
}

TEST(Close, BorderPixelsBehaveAsOnThePlane) {
  const auto edge = oracle::mask_from_rows({"####", "#..#", "####"});
  EXPECT_EQ(close(edge, kCross), oracle::mask_from_rows({"####", "####", "####"}));
  const auto corner = oracle::mask_from_rows({"#...", "....", "...."});
  EXPECT_EQ(close(corner, kCross), corner);
}

TEST(Close, IdempotentAndExtensive) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 150; ++i) {
    const auto m = oracle::random_mask(rng, 24, 19, 0.1 + 0.1 * (i % 9));
    const auto c = close(m, kCross);
    ASSERT_TRUE(contains(c, m));
    ASSERT_EQ(close(c, kCross), c);
  }
}

TEST(Morphology, DualityUnderComplement) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 150; ++i) {
    const auto m = oracle::random_mask(rng, 21, 17, 0.5);
    ASSERT_EQ(complement(dilate(m, kCross)), erode(complement(m), kCross, Border::Foreground));
    ASSERT_EQ(complement(erode(m, kCross)), dilate(complement(m), kCross, Border::Foreground));
  }
}

TEST(Morphology, IterationCounts) {
  BinaryMask dot(9, 9);
  dot.set(4, 4, true);
  EXPECT_EQ(dilate_then_erode(dot, kCross, 2, 0).count(), 13u);
  EXPECT_EQ(dilate_then_erode(dot, kCross, 0, 0), dot);
  EXPECT_EQ(dilate_then_erode(dot, kCross, 1, 1), close(dot, kCross));
  EXPECT_THROW(dilate_then_erode(dot, kCross, -1, 0), std::invalid_argument);
}

TEST(StructuringElement, MustContainOrigin) {
  EXPECT_THROW(StructuringElement({{1, 0}}), std::invalid_argument);
  EXPECT_EQ(kCross.offsets().size(), 5u);
}
