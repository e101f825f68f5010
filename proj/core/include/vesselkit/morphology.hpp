#pragma once

#include <vector>

#include "vesselkit/raster.hpp"

namespace vesselkit {

/// Finite set of offsets; always contains the origin.
class StructuringElement {
 public:
  /// Throws std::invalid_argument if `offsets` lacks (0, 0).
  explicit StructuringElement(std::vector<Point> offsets);

  /// {(0,0), (+-1,0), (0,+-1)}.
  static StructuringElement cross();

  const std::vector<Point>& offsets() const { return offsets_; }
  StructuringElement reflected() const;

 private:
  std::vector<Point> offsets_;
};

/// Value read for pixels outside the raster.
enum class Border { Background, Foreground };

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se,
                  Border border = Border::Background);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se,
                 Border border = Border::Background);

/// Closing with everything outside the raster taken as background: both
/// operations run on a copy padded by the element's reach, then the result
/// is cropped. Extensive and idempotent.
BinaryMask close(const BinaryMask& mask, const StructuringElement& se);

/// `dilations` dilations followed by `erosions` erosions, evaluated on the
/// padded plane like close(). (1, 1) is close().
BinaryMask dilate_then_erode(const BinaryMask& mask, const StructuringElement& se, int dilations,
                             int erosions);

BinaryMask complement(const BinaryMask& mask);

}  // namespace vesselkit
