#include "vesselkit/connectivity.hpp"

#include <algorithm>

namespace vesselkit {

ScoreMap connectivity_filter(const BinaryMask& mask, Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  ScoreMap scores(w, h, 0);
  const auto neighbors = flood_offsets(connectivity);

  std::vector<std::uint8_t> visited(mask.size(), 0);
  std::vector<Point> stack;
  std::vector<Point> component;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Point seed{x, y};
      const std::size_t si = mask.index(seed);
      if (!mask[seed] || visited[si]) continue;

      component.clear();
      visited[si] = 1;
      stack.push_back(seed);
      while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        component.push_back(p);
        for (Point o : neighbors) {
          const Point q = p + o;
          if (!mask.contains(q)) continue;
          const std::size_t qi = mask.index(q);
          if (mask[q] && !visited[qi]) {
            visited[qi] = 1;
            stack.push_back(q);
          }
        }
      }
      const auto size = static_cast<std::uint32_t>(component.size());
      for (Point p : component) scores[p] = size;
    }
  }
  return scores;
}

GrayImage render_scores(const ScoreMap& scores) {
  GrayImage out(scores.width(), scores.height());
  std::transform(scores.pixels().begin(), scores.pixels().end(), out.pixels().begin(),
                 [](std::uint32_t s) { return static_cast<std::uint8_t>(std::min<std::uint32_t>(s, 255)); });
  return out;
}

BinaryMask score_threshold(const ScoreMap& scores, std::uint32_t t) {
  std::vector<std::uint8_t> bits(scores.size());
  std::transform(scores.pixels().begin(), scores.pixels().end(), bits.begin(),
                 [t](std::uint32_t s) { return static_cast<std::uint8_t>(s > t); });
  return BinaryMask(scores.width(), scores.height(), std::move(bits));
}

}  // namespace vesselkit
