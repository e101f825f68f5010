#include "vesselkit/raster.hpp"

#include <algorithm>

namespace vesselkit {

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : bits_(width, height, std::move(bits)) {
  auto px = bits_.pixels();
  if (std::any_of(px.begin(), px.end(), [](std::uint8_t v) { return v > 1; })) {
    throw std::invalid_argument("binary mask elements must be 0 or 1");
  }
}

std::size_t BinaryMask::count() const {
  auto px = bits_.pixels();
  return static_cast<std::size_t>(std::count(px.begin(), px.end(), std::uint8_t{1}));
}

GrayImage green_channel(const ColorImage& image) {
  GrayImage out(image.width(), image.height());
  std::transform(image.pixels().begin(), image.pixels().end(), out.pixels().begin(),
                 [](const Rgb& c) { return c.g; });
  return out;
}

ColorImage replicate_gray(const GrayImage& image) {
  ColorImage out(image.width(), image.height());
  std::transform(image.pixels().begin(), image.pixels().end(), out.pixels().begin(),
                 [](std::uint8_t v) { return Rgb{v, v, v}; });
  return out;
}

BinaryMask threshold(const GrayImage& image, int level) {
  if (level < 0 || level > 255) {
    throw std::invalid_argument("threshold level must lie in [0,255], got " +
                                std::to_string(level));
  }
  std::vector<std::uint8_t> bits(image.size());
  std::transform(image.pixels().begin(), image.pixels().end(), bits.begin(),
                 [level](std::uint8_t v) { return static_cast<std::uint8_t>(v > level); });
  return BinaryMask(image.width(), image.height(), std::move(bits));
}

GrayImage mask_to_gray(const BinaryMask& mask) {
  GrayImage out(mask.width(), mask.height());
  std::transform(mask.pixels().begin(), mask.pixels().end(), out.pixels().begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  return out;
}

}  // namespace vesselkit
