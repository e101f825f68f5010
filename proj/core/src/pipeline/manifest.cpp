#include "vesselkit/pipeline/manifest.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "vesselkit/errors.hpp"
#include "vesselkit/pipeline/config.hpp"
#include "vesselkit/version.hpp"

namespace vesselkit::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

Manifest::Manifest(fs::path path) : path_(std::move(path)) {
  if (!fs::exists(path_)) return;
  std::ifstream in(path_);
  json doc;
  try {
    in >> doc;
    config_ini_ = doc.value("config", std::string{});
    for (const auto& e : doc.at("entries")) {
      entries_.push_back({e.at("step").get<std::string>(), e.at("item").get<std::string>(),
                          e.at("inputs").get<std::vector<std::string>>(),
                          e.at("outputs").get<std::vector<std::string>>(),
                          e.at("seconds").get<double>()});
    }
  } catch (const json::exception& e) {
    throw FormatError("corrupt manifest '" + path_.string() + "': " + e.what());
  }
}

void Manifest::set_config(const PipelineConfig& config) { config_ini_ = to_ini(config); }

void Manifest::record(ManifestEntry entry) { entries_.push_back(std::move(entry)); }

std::vector<std::string> Manifest::artifacts() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    for (const auto& o : e.outputs) {
      if (seen.insert(o).second) out.push_back(o);
    }
  }
  return out;
}

std::string Manifest::relative(const fs::path& file) const {
  const fs::path base = fs::weakly_canonical(path_.parent_path().empty() ? fs::path(".") : path_.parent_path());
  const fs::path target = fs::weakly_canonical(file);
  const fs::path rel = target.lexically_relative(base);
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return file.generic_string();
}

void Manifest::save() const {
  json doc;
  doc["tool"] = "vesselkit";
  doc["version"] = kVersion;
  doc["config"] = config_ini_;
  json entries = json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"step", e.step},
                       {"item", e.item},
                       {"inputs", e.inputs},
                       {"outputs", e.outputs},
                       {"seconds", e.seconds}});
  }
  doc["entries"] = std::move(entries);
  doc["artifacts"] = artifacts();
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest '" + path_.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace vesselkit::pipeline
