#include <gtest/gtest.h>

#include "vesselkit/raster.hpp"

using namespace vesselkit;

TEST(Raster, RejectsBadShapes) {
  EXPECT_THROW(GrayImage(0, 3), std::invalid_argument);
  EXPECT_THROW(GrayImage(2, 2, std::vector<std::uint8_t>(3)), std::invalid_argument);
  EXPECT_THROW(BinaryMask(2, 1, {0, 2}), std::invalid_argument);
}

TEST(Raster, RowMajorAccess) {
  GrayImage g(3, 2, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(g(2, 0), 3);
  EXPECT_EQ(g(0, 1), 4);
  EXPECT_EQ((g[Point{1, 1}]), 5);
  EXPECT_TRUE(g.contains({2, 1}));
  EXPECT_FALSE(g.contains({3, 0}));
  EXPECT_FALSE(g.contains({0, -1}));
}

TEST(GreenChannel, SelectsGreen) {
  EXPECT_EQ(green_channel(ColorImage(1, 1, {Rgb{10, 200, 30}})), GrayImage(1, 1, {200}));
  EXPECT_EQ(green_channel(ColorImage(4, 3, Rgb{0, 0, 0})), GrayImage(4, 3, 0));
  EXPECT_EQ(green_channel(ColorImage(2, 1, {Rgb{0, 5, 0}, Rgb{0, 7, 0}})), GrayImage(2, 1, {5, 7}));
}

TEST(Threshold, StrictComparison) {
  EXPECT_TRUE(threshold(GrayImage(1, 1, {150}), 100)(0, 0));
  EXPECT_FALSE(threshold(GrayImage(1, 1, {100}), 100)(0, 0));
  EXPECT_FALSE(threshold(GrayImage(1, 1, {0}), 0)(0, 0));
  EXPECT_TRUE(threshold(GrayImage(1, 1, {1}), 0)(0, 0));
  EXPECT_EQ(threshold(GrayImage(2, 2, 255), 255).count(), 0u);
  EXPECT_THROW(threshold(GrayImage(1, 1, 0), 256), std::invalid_argument);
  EXPECT_THROW(threshold(GrayImage(1, 1, 0), -1), std::invalid_argument);
}

TEST(Threshold, MonotoneInLevel) {
  std::vector<std::uint8_t> ramp(256);
  for (int i = 0; i < 256; ++i) ramp[i] = static_cast<std::uint8_t>(i);
  const GrayImage g(16, 16, ramp);
  std::size_t previous = g.size() + 1;
  for (int t = 0; t <= 255; ++t) {
    const auto m = threshold(g, t);
    EXPECT_LT(m.count(), previous);
    EXPECT_EQ(m.count(), static_cast<std::size_t>(255 - t));
    previous = m.count();
  }
}

TEST(MaskToGray, Scales) {
  BinaryMask m(2, 1, {0, 1});
  EXPECT_EQ(mask_to_gray(m), GrayImage(2, 1, {0, 255}));
}
