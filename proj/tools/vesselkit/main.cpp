// vesselkit: command-line front end for the segmentation pipeline.
//
//   vesselkit segment [--method M] image...
//   vesselkit frangi|threshold|cf|lscf|close|render file...
//   vesselkit eval pred gt [fov]
//   vesselkit batch --dataset-root DIR [--preset NAME] [--methods M,...]
//
// Every command accepts --config and the parameter overrides; outputs go to
// --out (default ".") together with manifest.json.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vesselkit/errors.hpp"
#include "vesselkit/pipeline/config.hpp"
#include "vesselkit/pipeline/dataset.hpp"
#include "vesselkit/pipeline/manifest.hpp"
#include "vesselkit/pipeline/stages.hpp"
#include "vesselkit/version.hpp"

namespace fs = std::filesystem;
namespace vp = vesselkit::pipeline;

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> method;
  std::optional<int> frangi_threshold;
  std::optional<int> max_score;
  std::optional<int> max_dist;
  std::optional<std::uint32_t> score_threshold;
  std::optional<int> connectivity;
  std::optional<std::string> polarity;
  std::optional<int> workers;
};

vp::PipelineConfig build_config(const Overrides& o) {
  vp::PipelineConfig c = o.config ? vp::load_config(*o.config) : vp::PipelineConfig{};
  if (o.method) c.method = vp::parse_method(*o.method);
  if (o.frangi_threshold) c.frangi_threshold = *o.frangi_threshold;
  if (o.max_score) c.lscf.max_score = *o.max_score;
  if (o.max_dist) c.lscf.max_dist = *o.max_dist;
  if (o.score_threshold) c.lscf.score_threshold = *o.score_threshold;
  if (o.connectivity) c.lscf.connectivity = static_cast<vesselkit::Connectivity>(*o.connectivity);
  if (o.polarity) c.frangi.polarity = vp::parse_polarity(*o.polarity);
  if (o.workers) c.workers = *o.workers;
  c.validate();
  return c;
}

std::vector<vp::Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<vp::Method> out;
  for (const auto& n : names) out.push_back(vp::parse_method(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised vessel segmentation: Frangi vesselness + connectivity filtering"};
  app.set_version_flag("--version", std::string(vesselkit::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  std::string out_dir = ".";
  std::string format = "png";
  app.add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "Image output format")->check(CLI::IsMember({"png", "pgm"}));
  app.add_option("--method", o.method, "frangi-only, cf, cf+close or lscf");
  app.add_option("--frangi-threshold", o.frangi_threshold, "Vesselness threshold T (0-255)");
  app.add_option("--max-score", o.max_score, "LS-CF tolerance budget");
  app.add_option("--max-dist", o.max_dist, "LS-CF ring search limit");
  app.add_option("--score-threshold", o.score_threshold, "Keep pixels with score > t");
  app.add_option("--connectivity", o.connectivity, "4 or 8")->check(CLI::IsMember({4, 8}));
  app.add_option("--polarity", o.polarity, "dark-on-bright or bright-on-dark");
  app.add_option("--workers", o.workers, "Concurrent images in batch mode");

  std::vector<std::string> inputs;
  std::vector<CLI::App*> stage_commands;
  const std::vector<std::pair<vp::Stage, std::string>> stages = {
      {vp::Stage::Segment, "Full pipeline on fundus images"},
      {vp::Stage::Frangi, "Multiscale vesselness response"},
      {vp::Stage::Threshold, "Threshold a response image or score map"},
      {vp::Stage::Cf, "Connectivity filter scores of a binary mask"},
      {vp::Stage::Lscf, "Local-sensitive connectivity filter"},
      {vp::Stage::Close, "Morphological closing with the cross element"},
      {vp::Stage::Render, "Render a score map as 8-bit gray"},
      {vp::Stage::Eval, "TP/TN/ACC of a prediction against ground truth"},
  };
  for (const auto& [stage, help] : stages) {
    auto* sub = app.add_subcommand(std::string(vp::to_string(stage)), help);
    sub->add_option("inputs", inputs, stage == vp::Stage::Eval ? "pred gt [fov]" : "Input files")
        ->required()
        ->check(CLI::ExistingFile);
    stage_commands.push_back(sub);
  }

  auto* batch = app.add_subcommand("batch", "Evaluate a dataset layout with several methods");
  std::optional<std::string> dataset_root;
  std::optional<std::string> preset;
  std::vector<std::string> method_names;
  bool no_masks = false;
  batch->add_option("--dataset-root", dataset_root, "Dataset root directory");
  batch->add_option("--preset", preset, "drive, stare, chase-db, iostar or osirix");
  batch->add_option("--methods", method_names, "Methods to evaluate (default: all)")->delimiter(',');
  batch->add_flag("--no-masks", no_masks, "Do not write per-image masks");

  CLI11_PARSE(app, argc, argv);

  try {
    vp::PipelineConfig config = build_config(o);
    const std::string ext = "." + format;

    if (batch->parsed()) {
      if (preset) {
        const auto root = config.dataset.root;
        config.dataset = vp::preset_layout(*preset);
        config.dataset.root = root;
      }
      if (dataset_root) config.dataset.root = *dataset_root;
      vp::BatchOptions options;
      if (!method_names.empty()) options.methods = parse_methods(method_names);
      options.out_dir = out_dir;
      options.save_masks = !no_masks;
      options.extension = ext;
      const auto result = vp::run_dataset(config, options);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      std::ifstream summary(fs::path(out_dir) / "summary.txt");
      std::cout << summary.rdbuf();
      return 0;
    }

    vp::Manifest manifest(fs::path(out_dir) / "manifest.json");
    for (std::size_t k = 0; k < stages.size(); ++k) {
      if (!stage_commands[k]->parsed()) continue;
      const vp::Stage stage = stages[k].first;
      std::vector<std::vector<fs::path>> runs;
      if (stage == vp::Stage::Eval) {
        runs.emplace_back(inputs.begin(), inputs.end());
      } else {
        for (const auto& in : inputs) runs.push_back({in});
      }
      for (const auto& run : runs) {
        for (const auto& written : vp::run_stage({stage, run, out_dir, ext}, config, manifest)) {
          std::cout << written.generic_string() << '\n';
        }
      }
    }
    manifest.save();
    return 0;
  } catch (const vesselkit::Error& e) {
    std::cerr << "vesselkit: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "vesselkit: " << e.what() << '\n';
    return 1;
  }
}
