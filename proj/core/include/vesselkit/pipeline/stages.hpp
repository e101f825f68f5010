#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vesselkit/pipeline/config.hpp"
#include "vesselkit/pipeline/manifest.hpp"

namespace vesselkit::pipeline {

enum class Stage { Frangi, Threshold, Cf, Lscf, Close, Render, Eval, Segment };

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view name);

/// One file-to-file pipeline step.
///
///   frangi     image            -> <stem>_frangi
///   threshold  image            -> <stem>_mask     (gray level > frangi threshold)
///              scores (.vks)    -> <stem>_mask     (score > score threshold)
///   cf         mask             -> <stem>_cf.vks
///   lscf       mask             -> <stem>_lscf.vks, <stem>_repaired
///   close      mask             -> <stem>_closed
///   render     scores (.vks)    -> <stem>_render
///   eval       pred, gt [, fov] -> <stem>_eval.csv
///   segment    image            -> <stem>_frangi, _threshold, [_scores.vks,
///                                  _scores, _repaired,] _segmentation
///
/// Image outputs take `extension` (".png" or ".pgm").
struct StageRequest {
  Stage stage = Stage::Segment;
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir = ".";
  std::string extension = ".png";
};

/// Runs the stage, writes its outputs and records them in `manifest`
/// (the caller saves it). Throws IoError / FormatError / TypeMismatchError
/// for bad inputs and Error for a wrong input count.
std::vector<std::filesystem::path> run_stage(const StageRequest& request,
                                             const PipelineConfig& config, Manifest& manifest);

}  // namespace vesselkit::pipeline
