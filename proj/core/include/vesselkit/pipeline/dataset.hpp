#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vesselkit/metrics.hpp"
#include "vesselkit/pipeline/config.hpp"

namespace vesselkit::pipeline {

struct DatasetItem {
  std::string id;  // image file stem
  std::filesystem::path image;
  std::filesystem::path gt;
  std::optional<std::filesystem::path> fov;
};

struct ResolvedDataset {
  std::vector<DatasetItem> items;     // sorted by image file name
  std::vector<std::string> warnings;  // unpaired images, one line each
};

/// Lists images matching the layout and pairs each with its annotation (and
/// FOV mask when a FOV directory is configured). Images lacking a partner
/// are reported in `warnings` and skipped. Throws IoError if the image
/// directory is missing and Error if it holds no matching image at all.
ResolvedDataset resolve_dataset(const DatasetLayout& layout);

struct BatchOptions {
  std::vector<Method> methods = all_methods();
  std::filesystem::path out_dir = "results";
  bool save_masks = true;
  std::string extension = ".png";
};

struct MethodReport {
  Method method;
  EvalReport full;                // every pixel
  std::optional<EvalReport> fov;  // restricted to the FOV, when masks exist
};

struct BatchResult {
  std::vector<MethodReport> reports;  // in BatchOptions::methods order
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> artifacts;  // everything written, manifest last
};

/// Segments every paired image with each method, evaluates against the
/// annotation and writes per-method CSV and text reports, a summary table
/// and manifest.json into out_dir. Images run on config.workers threads;
/// rows stay in input order. Throws Error if every image was skipped.
BatchResult run_dataset(const PipelineConfig& config, const BatchOptions& options);

}  // namespace vesselkit::pipeline
