#include <algorithm>
#include <regex>

#include "vesselkit/errors.hpp"
#include "vesselkit/pipeline/dataset.hpp"

namespace vesselkit::pipeline {
namespace fs = std::filesystem;

namespace {

bool is_image_file(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".pgm" || ext == ".ppm";
}

std::string expand(const std::string& pattern, const std::smatch& match) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '{') {
      const auto close = pattern.find('}', i);
      if (close != std::string::npos) {
        const std::string index = pattern.substr(i + 1, close - i - 1);
        if (!index.empty() && std::all_of(index.begin(), index.end(), ::isdigit)) {
          const auto g = static_cast<std::size_t>(std::stoul(index));
          if (g < match.size()) {
            out += match[g].str();
            i = close;
            continue;
          }
        }
      }
    }
    out += pattern[i];
  }
  return out;
}

// First file in `dir` whose stem is `stem` and whose extension is supported.
std::optional<fs::path> find_by_stem(const fs::path& dir, const std::string& stem) {
  for (const char* ext : {".png", ".pgm", ".ppm", ".PNG", ".PGM", ".PPM"}) {
    fs::path candidate = dir / (stem + ext);
    if (fs::is_regular_file(candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace

ResolvedDataset resolve_dataset(const DatasetLayout& layout) {
  const fs::path image_dir = layout.resolve(layout.image_dir);
  const fs::path gt_dir = layout.resolve(layout.gt_dir);
  const fs::path fov_dir = layout.resolve(layout.fov_dir);
  if (image_dir.empty() || !fs::is_directory(image_dir)) {
    throw IoError("image directory '" + image_dir.string() + "' does not exist");
  }
  if (gt_dir.empty() || !fs::is_directory(gt_dir)) {
    throw IoError("ground-truth directory '" + gt_dir.string() + "' does not exist");
  }
  std::regex pattern;
  try {
    pattern = std::regex(layout.image_pattern);
  } catch (const std::regex_error& e) {
    throw ConfigError("invalid image_pattern '" + layout.image_pattern + "': " + e.what());
  }

  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(image_dir)) {
    if (!entry.is_regular_file() || !is_image_file(entry.path())) continue;
    const std::string stem = entry.path().stem().string();
    if (std::regex_match(stem, pattern)) images.push_back(entry.path());
  }
  if (images.empty()) {
    throw Error("no images matching '" + layout.image_pattern + "' in '" + image_dir.string() + "'");
  }
  std::sort(images.begin(), images.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  ResolvedDataset out;
  for (const auto& image : images) {
    const std::string stem = image.stem().string();
    std::smatch match;
    std::regex_match(stem, match, pattern);
    const auto gt = find_by_stem(gt_dir, expand(layout.gt_template, match));
    if (!gt) {
      out.warnings.push_back("skipping '" + image.filename().string() + "': no ground truth '" +
                             expand(layout.gt_template, match) + ".*' in '" + gt_dir.string() + "'");
      continue;
    }
    std::optional<fs::path> fov;
    if (!fov_dir.empty()) {
      fov = find_by_stem(fov_dir, expand(layout.fov_template, match));
      if (!fov) {
        out.warnings.push_back("skipping '" + image.filename().string() + "': no FOV mask '" +
                               expand(layout.fov_template, match) + ".*' in '" +
                               fov_dir.string() + "'");
        continue;
      }
    }
    out.items.push_back({stem, image, *gt, fov});
  }
  return out;
}

}  // namespace vesselkit::pipeline
