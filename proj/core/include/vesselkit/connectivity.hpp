#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "vesselkit/raster.hpp"

namespace vesselkit {

enum class Connectivity { Four = 4, Eight = 8 };

/// Weights of the Minkowski + Chebyshev distance
///   d(a, b) = w1 * (sum_i |a_i - b_i|^p)^(1/p) + w2 * max_i |a_i - b_i|.
/// With w1 = w2 = p = 1 this is Manhattan plus Chebyshev.
struct DistanceParams {
  double w1 = 1.0;
  double w2 = 1.0;
  double p = 1.0;

  void validate() const;
};

double rodrigues_distance(Point a, Point b, const DistanceParams& params = {});

/// Offsets (relative to a center) whose distance equals the k-th smallest
/// distinct nonzero distance attainable on the integer grid, k >= 1.
///
/// Ordered by descending alignment with `heading` (cosine of the angle
/// between offset and heading), ties broken clockwise starting from "up"
/// (0, -1). A zero heading means no momentum: plain clockwise-from-up.
std::vector<Point> ring_offsets(int ring, const DistanceParams& params = {}, Point heading = {});

/// ring_offsets translated to `center` and clipped to a width x height grid.
std::vector<Point> ring_neighbors(Point center, int ring, const DistanceParams& params,
                                  int width, int height, Point heading = {});

/// Flood-fill neighborhood: the 4 axis offsets, plus the 4 diagonals for
/// 8-connectivity. Same ordering rule as ring_offsets.
std::vector<Point> flood_offsets(Connectivity connectivity, Point heading = {});

/// Sorts offsets in place by the momentum rule described at ring_offsets.
void order_by_momentum(std::vector<Point>& offsets, Point heading);

/// Discrete straight segment from `from` to `to`, both endpoints included.
/// Eight: classic Bresenham. Four: Bresenham with every diagonal step split
/// into two axis steps, so consecutive pixels are 4-adjacent.
std::vector<Point> bresenham_line(Point from, Point to,
                                  Connectivity connectivity = Connectivity::Eight);

/// Connectivity filter: every white pixel scores the pixel count of its
/// connected component, background scores 0. Iterative flood fill with an
/// explicit stack; safe on arbitrarily large components.
ScoreMap connectivity_filter(const BinaryMask& mask, Connectivity connectivity = Connectivity::Eight);

/// min(score, 255) per pixel.
GrayImage render_scores(const ScoreMap& scores);

/// White iff score > t.
BinaryMask score_threshold(const ScoreMap& scores, std::uint32_t t);

struct LscfParams {
  int max_score = 350;  // tolerance budget, in inspected non-vessel pixels
  int max_dist = 4;     // rings 1 .. max_dist - 1 are searched
  Connectivity connectivity = Connectivity::Eight;
  std::uint32_t score_threshold = 1;
  DistanceParams distance{};

  void validate() const;
};

struct LscfResult {
  BinaryMask repaired;  // input mask plus painted bridges
  ScoreMap scores;      // component sizes of `repaired`
};

/// Local-sensitive connectivity filter.
///
/// Seeds are taken in row-major order. Each seed is flooded like the plain
/// filter; once its frontier is exhausted, every boundary pixel b (a
/// component pixel with an in-bounds non-white flood neighbor) is revisited
/// in discovery order. For each non-white flood neighbor g of b, taken in
/// momentum order:
///
///   - entering g costs one tolerance point;
///   - rings 1, 2, ... (while ring < max_dist) around g are scanned in
///     momentum order; each non-white candidate costs one point, already
///     claimed pixels are skipped for free;
///   - the first unclaimed white candidate f ends the scan: the segment
///     g..f is painted white, f and the painted pixels join the component
///     and are flooded, and the tolerance count resets to 0.
///
/// The count starts at 0 for each boundary pixel and is shared by all of its
/// gap entries. A scan stops as soon as the count reaches max_score, so
/// max_score = 0 reproduces connectivity_filter exactly.
///
/// Scores are the component sizes of the repaired mask under
/// params.connectivity, so repaired pixels and bridged branches share one
/// uniform score.
LscfResult ls_connectivity_filter(const BinaryMask& mask, const LscfParams& params = {});

}  // namespace vesselkit
