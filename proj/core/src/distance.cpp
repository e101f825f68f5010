#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vesselkit/connectivity.hpp"

namespace vesselkit {

void DistanceParams::validate() const {
  if (w1 < 0.0 || w2 < 0.0 || (w1 == 0.0 && w2 == 0.0)) {
    throw std::invalid_argument("distance weights must be non-negative and not both zero");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("distance exponent p must be >= 1");
}

double rodrigues_distance(Point a, Point b, const DistanceParams& params) {
  const double dx = std::abs(a.x - b.x);
  const double dy = std::abs(a.y - b.y);
  const double minkowski = params.p == 1.0 ? dx + dy
                                           : std::pow(std::pow(dx, params.p) + std::pow(dy, params.p),
                                                      1.0 / params.p);
  return params.w1 * minkowski + params.w2 * std::max(dx, dy);
}

namespace {

// Clockwise angle from "up" (0, -1) in image coordinates, in [0, 2 pi).
double clockwise_from_up(Point o) {
  double a = std::atan2(static_cast<double>(o.x), static_cast<double>(-o.y));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

// Compares cos(a, h) with cos(b, h) exactly: dot / |offset| without roots.
// Returns >0 when a is better aligned than b.
int compare_alignment(Point a, Point b, Point heading) {
  const std::int64_t da = std::int64_t{a.x} * heading.x + std::int64_t{a.y} * heading.y;
  const std::int64_t db = std::int64_t{b.x} * heading.x + std::int64_t{b.y} * heading.y;
  const std::int64_t na = std::int64_t{a.x} * a.x + std::int64_t{a.y} * a.y;
  const std::int64_t nb = std::int64_t{b.x} * b.x + std::int64_t{b.y} * b.y;
  // sign(da) * da^2 / na  vs  sign(db) * db^2 / nb
  // Offsets and headings stay within a few hundred pixels, far from overflow.
  const std::int64_t lhs = da * (da < 0 ? -da : da) * nb;
  const std::int64_t rhs = db * (db < 0 ? -db : db) * na;
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

bool same_distance(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); }

}  // namespace

void order_by_momentum(std::vector<Point>& offsets, Point heading) {
  const bool has_heading = heading.x != 0 || heading.y != 0;
  std::stable_sort(offsets.begin(), offsets.end(), [&](Point a, Point b) {
    if (has_heading) {
      const int c = compare_alignment(a, b, heading);
      if (c != 0) return c > 0;
    }
    const double ta = clockwise_from_up(a);
    const double tb = clockwise_from_up(b);
    if (ta != tb) return ta < tb;
    return a.x * a.x + a.y * a.y < b.x * b.x + b.y * b.y;
  });
}

std::vector<Point> ring_offsets(int ring, const DistanceParams& params, Point heading) {
  if (ring < 1) throw std::invalid_argument("ring index must be >= 1, got " + std::to_string(ring));
  params.validate();
  // Any offset with Chebyshev norm r has distance >= (w1 + w2) * r, so once
  // the k-th distinct value inside a window of radius R is below
  // (w1 + w2) * (R + 1), nothing outside the window can undercut it.
  const double floor_per_step = params.w1 + params.w2;
  for (int radius = ring;; radius *= 2) {
    std::vector<double> values;
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        if (dx == 0 && dy == 0) continue;
        values.push_back(rodrigues_distance({0, 0}, {dx, dy}, params));
      }
    }
    std::sort(values.begin(), values.end());
    std::vector<double> distinct;
    for (double v : values) {
      if (distinct.empty() || !same_distance(distinct.back(), v)) distinct.push_back(v);
    }
    if (static_cast<int>(distinct.size()) < ring) continue;
    const double target = distinct[static_cast<std::size_t>(ring - 1)];
    if (target >= floor_per_step * (radius + 1)) continue;

    std::vector<Point> out;
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (same_distance(rodrigues_distance({0, 0}, {dx, dy}, params), target)) {
          out.push_back({dx, dy});
        }
      }
    }
    order_by_momentum(out, heading);
    return out;
  }
}

std::vector<Point> ring_neighbors(Point center, int ring, const DistanceParams& params, int width,
                                  int height, Point heading) {
  std::vector<Point> out;
  for (Point o : ring_offsets(ring, params, heading)) {
    const Point q = center + o;
    if (q.x >= 0 && q.y >= 0 && q.x < width && q.y < height) out.push_back(q);
  }
  return out;
}

std::vector<Point> flood_offsets(Connectivity connectivity, Point heading) {
  std::vector<Point> out = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  if (connectivity == Connectivity::Eight) {
    out.insert(out.end(), {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
  }
  order_by_momentum(out, heading);
  return out;
}

std::vector<Point> bresenham_line(Point from, Point to, Connectivity connectivity) {
  std::vector<Point> out;
  const int dx = std::abs(to.x - from.x);
  const int dy = -std::abs(to.y - from.y);
  const int sx = from.x < to.x ? 1 : -1;
  const int sy = from.y < to.y ? 1 : -1;
  int err = dx + dy;
  Point p = from;
  out.push_back(p);
  while (p != to) {
    const int e2 = 2 * err;
    const bool step_x = e2 >= dy;
    const bool step_y = e2 <= dx;
    if (step_x && step_y && connectivity == Connectivity::Four) {
      // Split the diagonal move; the horizontal half goes first.
      out.push_back({p.x + sx, p.y});
    }
    if (step_x) {
      err += dy;
      p.x += sx;
    }
    if (step_y) {
      err += dx;
      p.y += sy;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace vesselkit
