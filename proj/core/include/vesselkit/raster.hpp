#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vesselkit {

/// Pixel position or offset. x is the column, y the row; origin top-left.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// Row-major 2D raster. Width and height are always at least 1.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Raster(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw std::invalid_argument("raster data length " + std::to_string(data_.size()) +
                                  " does not match " + std::to_string(width) + "x" +
                                  std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  bool contains(Point p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }
  std::size_t index(Point p) const {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(p.x);
  }

  const T& operator()(int x, int y) const { return data_[index({x, y})]; }
  T& operator()(int x, int y) { return data_[index({x, y})]; }
  const T& operator[](Point p) const { return data_[index(p)]; }
  T& operator[](Point p) { return data_[index(p)]; }

  std::span<const T> pixels() const { return data_; }
  std::span<T> pixels() { return data_; }

  bool same_shape(int width, int height) const { return width_ == width && height_ == height; }
  template <typename U>
  bool same_shape(const Raster<U>& other) const {
    return same_shape(other.width(), other.height());
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
      throw std::invalid_argument("raster dimensions must be positive, got " +
                                  std::to_string(width) + "x" + std::to_string(height));
    }
  }

  int width_;
  int height_;
  std::vector<T> data_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

using GrayImage = Raster<std::uint8_t>;
using ColorImage = Raster<Rgb>;
using RealImage = Raster<double>;

/// Per-pixel connectivity scores. Unbounded counts; 0 marks background.
using ScoreMap = Raster<std::uint32_t>;

/// Binary raster whose elements are exactly 0 or 1.
class BinaryMask {
 public:
  BinaryMask(int width, int height) : bits_(width, height, 0) {}

  /// Throws std::invalid_argument if any element is not 0 or 1.
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return bits_.width(); }
  int height() const { return bits_.height(); }
  std::size_t size() const { return bits_.size(); }
  bool contains(Point p) const { return bits_.contains(p); }
  std::size_t index(Point p) const { return bits_.index(p); }

  bool operator()(int x, int y) const { return bits_(x, y) != 0; }
  bool operator[](Point p) const { return bits_[p] != 0; }
  void set(Point p, bool white) { bits_[p] = white ? 1 : 0; }
  void set(int x, int y, bool white) { set({x, y}, white); }

  std::span<const std::uint8_t> pixels() const { return bits_.pixels(); }
  std::size_t count() const;

  template <typename U>
  bool same_shape(const Raster<U>& other) const {
    return bits_.same_shape(other);
  }
  bool same_shape(const BinaryMask& other) const {
    return width() == other.width() && height() == other.height();
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  Raster<std::uint8_t> bits_;
};

/// Green component of every pixel.
GrayImage green_channel(const ColorImage& image);

/// Gray-to-color replication (R = G = B = value).
ColorImage replicate_gray(const GrayImage& image);

/// White iff the pixel is strictly greater than `level`.
BinaryMask threshold(const GrayImage& image, int level);

/// 0/1 mask to a 0/255 image.
GrayImage mask_to_gray(const BinaryMask& mask);

}  // namespace vesselkit
