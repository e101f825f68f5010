#pragma once

// Reference implementations used only by tests. They are deliberately naive
// and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vesselkit/connectivity.hpp"
#include "vesselkit/raster.hpp"

namespace oracle {

using vesselkit::BinaryMask;
using vesselkit::Point;
using vesselkit::ScoreMap;

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density) {
  std::bernoulli_distribution white(density);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(w) * h);
  for (auto& b : bits) b = white(rng) ? 1 : 0;
  return BinaryMask(w, h, std::move(bits));
}

inline BinaryMask mask_from_rows(const std::vector<std::string>& rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.set(x, y, rows[y][x] == '#');
  }
  return m;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t size(std::size_t a) { return size_[find(a)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Component sizes by union-find over forward neighbors.
inline ScoreMap component_sizes(const BinaryMask& m, int connectivity) {
  const int w = m.width();
  const int h = m.height();
  UnionFind uf(m.size());
  auto id = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!m(x, y)) continue;
      if (x + 1 < w && m(x + 1, y)) uf.unite(id(x, y), id(x + 1, y));
      if (y + 1 < h && m(x, y + 1)) uf.unite(id(x, y), id(x, y + 1));
      if (connectivity == 8 && y + 1 < h) {
        if (x + 1 < w && m(x + 1, y + 1)) uf.unite(id(x, y), id(x + 1, y + 1));
        if (x > 0 && m(x - 1, y + 1)) uf.unite(id(x, y), id(x - 1, y + 1));
      }
    }
  }
  ScoreMap out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (m(x, y)) out(x, y) = static_cast<std::uint32_t>(uf.size(id(x, y)));
    }
  }
  return out;
}

// Offsets at the k-th smallest distinct nonzero distance, by brute force
// over a window large enough for the rings a test asks for.
inline std::set<std::pair<int, int>> ring_by_enumeration(int ring, double w1, double w2, double p,
                                                         int half = 12) {
  std::map<double, std::set<std::pair<int, int>>> by_distance;
  for (int dy = -half; dy <= half; ++dy) {
    for (int dx = -half; dx <= half; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const double mink = std::pow(std::pow(std::abs(dx), p) + std::pow(std::abs(dy), p), 1.0 / p);
      const double cheb = std::max(std::abs(dx), std::abs(dy));
      const double d = w1 * mink + w2 * cheb;
      // Merge values that differ only by rounding.
      auto it = std::find_if(by_distance.begin(), by_distance.end(),
                             [d](const auto& kv) { return std::abs(kv.first - d) < 1e-9; });
      if (it == by_distance.end()) it = by_distance.emplace(d, std::set<std::pair<int, int>>{}).first;
      it->second.insert({dx, dy});
    }
  }
  auto it = by_distance.begin();
  std::advance(it, ring - 1);
  return it->second;
}

// Roots of t^2 - tr t + det in long double, ordered by magnitude.
inline std::pair<long double, long double> eigen_reference(double a, double b, double d) {
  const long double tr = static_cast<long double>(a) + d;
  const long double det = static_cast<long double>(a) * d - static_cast<long double>(b) * b;
  long double disc = tr * tr / 4 - det;
  if (disc < 0) disc = 0;
  const long double r = std::sqrt(disc);
  long double hi = tr / 2 + r;
  long double lo = tr / 2 - r;
  if (std::abs(lo) < std::abs(hi)) std::swap(lo, hi);
  return {hi, lo};  // |first| <= |second|
}


// Bright background with two vertical dark bars of the given widths, placed
// at x0 and x1 (left edges). Rows are identical.
inline vesselkit::GrayImage two_line_image(int w, int h, int x0, int width0, int x1, int width1,
                                           std::uint8_t background = 200,
                                           std::uint8_t line = 60) {
  vesselkit::GrayImage g(w, h, background);
  for (int y = 0; y < h; ++y) {
    for (int x = x0; x < x0 + width0; ++x) g(x, y) = line;
    for (int x = x1; x < x1 + width1; ++x) g(x, y) = line;
  }
  return g;
}

template <typename T>
vesselkit::Raster<T> rotate90(const vesselkit::Raster<T>& r) {
  // (x, y) -> (h - 1 - y, x): clockwise quarter turn.
  vesselkit::Raster<T> out(r.height(), r.width());
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) out(r.height() - 1 - y, x) = r(x, y);
  }
  return out;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vesselkit_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle
