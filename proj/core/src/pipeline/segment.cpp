#include "vesselkit/pipeline/segment.hpp"

#include "vesselkit/morphology.hpp"
#include "vesselkit/vesselness.hpp"

namespace vesselkit::pipeline {

GrayImage vesselness_image(const GrayImage& gray, const PipelineConfig& config) {
  return frangi_multiscale(gray, config.frangi);
}

Segmentation post_process(GrayImage frangi, BinaryMask thresholded, Method method,
                          const PipelineConfig& config) {
  Segmentation out{std::move(frangi), thresholded, std::nullopt, std::nullopt, thresholded};
  const auto t = config.lscf.score_threshold;
  switch (method) {
    case Method::FrangiOnly:
      break;
    case Method::Cf:
      out.scores = connectivity_filter(out.thresholded, config.lscf.connectivity);
      out.mask = score_threshold(*out.scores, t);
      break;
    case Method::CfClose:
      out.scores = connectivity_filter(out.thresholded, config.lscf.connectivity);
      out.mask = dilate_then_erode(score_threshold(*out.scores, t), StructuringElement::cross(),
                                   config.morphology.dilations, config.morphology.erosions);
      break;
    case Method::Lscf: {
      auto result = ls_connectivity_filter(out.thresholded, config.lscf);
      out.mask = score_threshold(result.scores, t);
      out.scores = std::move(result.scores);
      out.repaired = std::move(result.repaired);
      break;
    }
  }
  return out;
}

Segmentation segment(const GrayImage& gray, const PipelineConfig& config, Method method) {
  GrayImage frangi = vesselness_image(gray, config);
  BinaryMask thresholded = threshold(frangi, config.frangi_threshold);
  return post_process(std::move(frangi), std::move(thresholded), method, config);
}

}  // namespace vesselkit::pipeline
