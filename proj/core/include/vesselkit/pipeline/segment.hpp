#pragma once

#include <optional>

#include "vesselkit/connectivity.hpp"
#include "vesselkit/pipeline/config.hpp"
#include "vesselkit/raster.hpp"

namespace vesselkit::pipeline {

/// Intermediate and final products of one segmentation run.
struct Segmentation {
  GrayImage frangi;
  BinaryMask thresholded;
  std::optional<ScoreMap> scores;      // cf, cf+close, lscf
  std::optional<BinaryMask> repaired;  // lscf only
  BinaryMask mask;                     // final segmentation
};

/// Vesselness response of a gray image, quantized to 8 bits.
GrayImage vesselness_image(const GrayImage& gray, const PipelineConfig& config);

/// Everything after the vesselness threshold, for one method.
Segmentation post_process(GrayImage frangi, BinaryMask thresholded, Method method,
                          const PipelineConfig& config);

/// green/gray input -> vesselness -> threshold -> method.
Segmentation segment(const GrayImage& gray, const PipelineConfig& config, Method method);
inline Segmentation segment(const GrayImage& gray, const PipelineConfig& config) {
  return segment(gray, config, config.method);
}

}  // namespace vesselkit::pipeline
