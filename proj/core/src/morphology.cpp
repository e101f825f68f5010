#include "vesselkit/morphology.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace vesselkit {

StructuringElement::StructuringElement(std::vector<Point> offsets) : offsets_(std::move(offsets)) {
  if (std::find(offsets_.begin(), offsets_.end(), Point{0, 0}) == offsets_.end()) {
    throw std::invalid_argument("structuring element must contain the origin");
  }
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
}

StructuringElement StructuringElement::cross() {
  return StructuringElement({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

StructuringElement StructuringElement::reflected() const {
  std::vector<Point> out;
  out.reserve(offsets_.size());
  for (Point o : offsets_) out.push_back({-o.x, -o.y});
  return StructuringElement(std::move(out));
}

namespace {

bool read(const BinaryMask& mask, Point p, Border border) {
  return mask.contains(p) ? mask[p] : border == Border::Foreground;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se, Border border) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const Point p{x, y};
      const bool hit = std::any_of(se.offsets().begin(), se.offsets().end(),
                                   [&](Point o) { return read(mask, p - o, border); });
      out.set(p, hit);
    }
  }
  return out;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se, Border border) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const Point p{x, y};
      const bool fits = std::all_of(se.offsets().begin(), se.offsets().end(),
                                    [&](Point o) { return read(mask, p + o, border); });
      out.set(p, fits);
    }
  }
  return out;
}

namespace {

int reach(const StructuringElement& se) {
  int r = 0;
  for (Point o : se.offsets()) r = std::max({r, std::abs(o.x), std::abs(o.y)});
  return r;
}

BinaryMask pad(const BinaryMask& mask, int margin) {
  BinaryMask out(mask.width() + 2 * margin, mask.height() + 2 * margin);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out.set(x + margin, y + margin, mask(x, y));
  }
  return out;
}

BinaryMask crop(const BinaryMask& padded, int margin, int width, int height) {
  BinaryMask out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out.set(x, y, padded(x + margin, y + margin));
  }
  return out;
}

}  // namespace

BinaryMask close(const BinaryMask& mask, const StructuringElement& se) {
  return dilate_then_erode(mask, se, 1, 1);
}

BinaryMask dilate_then_erode(const BinaryMask& mask, const StructuringElement& se, int dilations,
                             int erosions) {
  if (dilations < 0 || erosions < 0) {
    throw std::invalid_argument("morphology operation counts must be non-negative");
  }
  // Dilations grow the set by at most reach * dilations past the raster, so
  // that margin holds everything the plane closing can see.
  const int margin = reach(se) * dilations;
  BinaryMask out = pad(mask, margin);
  for (int i = 0; i < dilations; ++i) out = dilate(out, se);
  for (int i = 0; i < erosions; ++i) out = erode(out, se);
  return crop(out, margin, mask.width(), mask.height());
}

BinaryMask complement(const BinaryMask& mask) {
  std::vector<std::uint8_t> bits(mask.pixels().begin(), mask.pixels().end());
  for (auto& b : bits) b ^= 1;
  return BinaryMask(mask.width(), mask.height(), std::move(bits));
}

}  // namespace vesselkit
