#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vesselkit::pipeline {

struct PipelineConfig;

struct ManifestEntry {
  std::string step;  // stage name, "segment" or "batch"
  std::string item;  // image id or input stem
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;  // relative to the manifest directory
  double seconds = 0.0;
};

/// Reproducibility record kept as `manifest.json` next to the outputs.
/// Opening an existing manifest appends to it.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  void set_config(const PipelineConfig& config);
  void record(ManifestEntry entry);

  /// Every output listed by any entry, in recording order, without repeats.
  std::vector<std::string> artifacts() const;
  const std::vector<ManifestEntry>& entries() const { return entries_; }

  /// Path as stored in an entry: relative to the manifest directory when
  /// inside it, unchanged otherwise.
  std::string relative(const std::filesystem::path& file) const;

  void save() const;

 private:
  std::filesystem::path path_;
  std::string config_ini_;
  std::vector<ManifestEntry> entries_;
};

}  // namespace vesselkit::pipeline
