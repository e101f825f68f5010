#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "vesselkit/connectivity.hpp"

namespace vesselkit {

void LscfParams::validate() const {
  if (max_score < 0) throw std::invalid_argument("max_score must be >= 0");
  if (max_dist < 1) throw std::invalid_argument("max_dist must be >= 1");
  distance.validate();
}

namespace {

Point reduce(Point v) {
  const int g = std::gcd(v.x, v.y);
  return g == 0 ? v : Point{v.x / g, v.y / g};
}

// Momentum-ordered neighborhoods, memoized per heading direction. Headings
// are reduced by their gcd first; cosine ordering only depends on direction.
class NeighborhoodCache {
 public:
  explicit NeighborhoodCache(const LscfParams& params) : params_(params) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        unit_flood_[slot({dx, dy})] = flood_offsets(params.connectivity, {dx, dy});
      }
    }
  }

  const std::vector<Point>& flood(Point heading) {
    const Point h = reduce(heading);
    if (std::abs(h.x) <= 1 && std::abs(h.y) <= 1) return unit_flood_[slot(h)];
    auto [it, inserted] = flood_.try_emplace(h);
    if (inserted) it->second = flood_offsets(params_.connectivity, h);
    return it->second;
  }

  const std::vector<Point>& ring(int d, Point heading) {
    const Point h = reduce(heading);
    auto [it, inserted] = rings_.try_emplace({d, h});
    if (inserted) it->second = ring_offsets(d, params_.distance, h);
    return it->second;
  }

 private:
  static std::size_t slot(Point unit) { return static_cast<std::size_t>((unit.y + 1) * 3 + unit.x + 1); }

  const LscfParams& params_;
  std::array<std::vector<Point>, 9> unit_flood_;
  std::map<Point, std::vector<Point>> flood_;
  std::map<std::pair<int, Point>, std::vector<Point>> rings_;
};

struct Node {
  Point at;
  Point heading;  // direction of travel into `at`; zero for seeds
};

class LocalSensitiveTraversal {
 public:
  LocalSensitiveTraversal(const BinaryMask& mask, const LscfParams& params)
      : params_(params), repaired_(mask), claimed_(mask.size(), 0), cache_(params) {}

  BinaryMask run() {
    for (int y = 0; y < repaired_.height(); ++y) {
      for (int x = 0; x < repaired_.width(); ++x) {
        const Point seed{x, y};
        if (repaired_[seed] && !claimed_[repaired_.index(seed)]) grow_component(seed);
      }
    }
    return std::move(repaired_);
  }

 private:
  void claim(Point p, Point heading) {
    claimed_[repaired_.index(p)] = 1;
    stack_.push_back({p, heading});
  }

  bool claimed(Point p) const { return claimed_[repaired_.index(p)] != 0; }

  void flood() {
    while (!stack_.empty()) {
      const Node n = stack_.back();
      stack_.pop_back();
      bool touches_gap = false;
      for (Point o : cache_.flood(n.heading)) {
        const Point q = n.at + o;
        if (!repaired_.contains(q)) continue;
        if (!repaired_[q]) {
          touches_gap = true;
        } else if (!claimed(q)) {
          claim(q, o);
        }
      }
      if (touches_gap) boundary_.push_back(n);
    }
  }

  void grow_component(Point seed) {
    boundary_.clear();
    claim(seed, {});
    flood();
    // boundary_ grows while bridges are flooded; index, do not iterate.
    for (std::size_t i = 0; i < boundary_.size(); ++i) search_from(boundary_[i]);
  }

  // Tolerance search around every gap pixel adjacent to `origin`.
  void search_from(const Node origin) {
    int tolerance = 0;
    for (Point o : cache_.flood(origin.heading)) {
      const Point gap = origin.at + o;
      if (!repaired_.contains(gap) || repaired_[gap]) continue;
      if (tolerance >= params_.max_score) return;
      ++tolerance;
      const auto found = scan_rings(gap, o, tolerance);
      if (!found) continue;
      bridge(origin.at, gap, *found);
      tolerance = 0;
      flood();
    }
  }

  // First unclaimed white pixel in rings 1 .. max_dist - 1 around `gap`.
  std::optional<Point> scan_rings(Point gap, Point heading, int& tolerance) {
    for (int d = 1; d < params_.max_dist; ++d) {
      for (Point o : cache_.ring(d, heading)) {
        if (tolerance >= params_.max_score) return std::nullopt;
        const Point c = gap + o;
        if (!repaired_.contains(c)) continue;
        if (repaired_[c]) {
          if (!claimed(c)) return c;
        } else {
          ++tolerance;
        }
      }
    }
    return std::nullopt;
  }

  void bridge(Point origin, Point gap, Point found) {
    const Point heading = found - origin;
    for (Point p : bresenham_line(gap, found, params_.connectivity)) {
      repaired_.set(p, true);
      if (!claimed(p)) claim(p, heading);
    }
  }

  const LscfParams& params_;
  BinaryMask repaired_;
  std::vector<std::uint8_t> claimed_;
  NeighborhoodCache cache_;
  std::vector<Node> stack_;
  std::vector<Node> boundary_;
};

}  // namespace

LscfResult ls_connectivity_filter(const BinaryMask& mask, const LscfParams& params) {
  params.validate();
  BinaryMask repaired = LocalSensitiveTraversal(mask, params).run();
  ScoreMap scores = connectivity_filter(repaired, params.connectivity);
  return {std::move(repaired), std::move(scores)};
}

}  // namespace vesselkit
