#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vesselkit/connectivity.hpp"
#include "vesselkit/errors.hpp"
#include "vesselkit/vesselness.hpp"

namespace vesselkit::pipeline {

enum class Method {
  FrangiOnly,  // thresholded vesselness
  Cf,          // + connectivity filter + score threshold
  CfClose,     // + morphological closing
  Lscf,        // local-sensitive connectivity filter + score threshold
};

std::string_view to_string(Method method);
/// Accepts "frangi-only", "cf", "cf+close", "lscf". Throws ConfigError.
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

std::string_view to_string(Polarity polarity);
Polarity parse_polarity(std::string_view name);

struct MorphologyParams {
  int dilations = 1;
  int erosions = 1;
};

/// Where a dataset lives and how images pair with annotations.
///
/// `image_pattern` is an ECMAScript regex that must match the whole file
/// stem of an image; `{1}`, `{2}`, ... in the templates are replaced by its
/// capture groups to form the annotation and FOV stems. Any of .png, .pgm,
/// .ppm is accepted for each file. Relative directories resolve against
/// `root`.
struct DatasetLayout {
  std::string preset;
  std::filesystem::path root;
  std::filesystem::path image_dir;
  std::filesystem::path gt_dir;
  std::filesystem::path fov_dir;  // empty: no FOV masks
  std::string image_pattern = "(.+)";
  std::string gt_template = "{1}";
  std::string fov_template = "{1}";

  std::filesystem::path resolve(const std::filesystem::path& dir) const;
};

/// Names: drive, stare, chase-db, iostar, osirix. Throws ConfigError.
DatasetLayout preset_layout(std::string_view name);
std::vector<std::string> preset_names();

struct PipelineConfig {
  FrangiParams frangi{};
  int frangi_threshold = 100;
  LscfParams lscf{};
  Method method = Method::Lscf;
  MorphologyParams morphology{};
  DatasetLayout dataset{};
  int workers = 1;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

/// INI text: sections [frangi], [connectivity], [morphology], [pipeline],
/// [dataset]. Keys not listed in the defaults are rejected. Throws
/// ConfigError with the source name on malformed input.
PipelineConfig parse_config(std::istream& in, std::string_view source = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);

/// Full INI rendering; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const PipelineConfig& config);

}  // namespace vesselkit::pipeline
