#include "vesselkit/pipeline/stages.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <utility>

#include "vesselkit/image_io.hpp"
#include "vesselkit/metrics.hpp"
#include "vesselkit/morphology.hpp"
#include "vesselkit/pipeline/segment.hpp"

namespace vesselkit::pipeline {
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::pair<Stage, std::string_view>, 8> kStageNames = {{
    {Stage::Frangi, "frangi"},
    {Stage::Threshold, "threshold"},
    {Stage::Cf, "cf"},
    {Stage::Lscf, "lscf"},
    {Stage::Close, "close"},
    {Stage::Render, "render"},
    {Stage::Eval, "eval"},
    {Stage::Segment, "segment"},
}};

bool is_score_file(const fs::path& path) { return path.extension() == ".vks"; }

class StageWriter {
 public:
  StageWriter(const StageRequest& request, const fs::path& input)
      : dir_(request.out_dir), stem_(input.stem().string()), ext_(request.extension) {
    if (ext_ != ".png" && ext_ != ".pgm") {
      throw ConfigError("image output extension must be .png or .pgm, got '" + ext_ + "'");
    }
    fs::create_directories(dir_);
  }

  fs::path image_path(std::string_view suffix) const { return named(suffix, ext_); }
  fs::path named(std::string_view suffix, std::string_view ext) const {
    return dir_ / (stem_ + "_" + std::string(suffix) + std::string(ext));
  }

  void gray(std::string_view suffix, const GrayImage& image) {
    outputs_.push_back(image_path(suffix));
    save_gray(image, outputs_.back());
  }
  void mask(std::string_view suffix, const BinaryMask& m) {
    outputs_.push_back(image_path(suffix));
    save_mask(m, outputs_.back());
  }
  void scores(std::string_view suffix, const ScoreMap& s) {
    outputs_.push_back(named(suffix, ".vks"));
    save_scores(s, outputs_.back());
  }
  void file(fs::path path) { outputs_.push_back(std::move(path)); }

  const std::string& stem() const { return stem_; }
  std::vector<fs::path> take() { return std::move(outputs_); }

 private:
  fs::path dir_;
  std::string stem_;
  std::string ext_;
  std::vector<fs::path> outputs_;
};

void expect_inputs(const StageRequest& request, std::size_t min, std::size_t max) {
  const auto n = request.inputs.size();
  if (n < min || n > max) {
    throw Error("stage '" + std::string(to_string(request.stage)) + "' expects " +
                (min == max ? std::to_string(min)
                            : std::to_string(min) + " to " + std::to_string(max)) +
                " input(s), got " + std::to_string(n));
  }
}

void write_segmentation(StageWriter& out, const Segmentation& seg) {
  out.gray("frangi", seg.frangi);
  out.mask("threshold", seg.thresholded);
  if (seg.scores) {
    out.scores("scores", *seg.scores);
    out.gray("scores", render_scores(*seg.scores));
  }
  if (seg.repaired) out.mask("repaired", *seg.repaired);
  out.mask("segmentation", seg.mask);
}

}  // namespace

std::string_view to_string(Stage stage) {
  for (const auto& [s, name] : kStageNames) {
    if (s == stage) return name;
  }
  return "unknown";
}

Stage parse_stage(std::string_view name) {
  for (const auto& [s, text] : kStageNames) {
    if (text == name) return s;
  }
  throw ConfigError("unknown stage '" + std::string(name) + "'");
}

std::vector<fs::path> run_stage(const StageRequest& request, const PipelineConfig& config,
                                Manifest& manifest) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  expect_inputs(request, 1, request.stage == Stage::Eval ? 3 : 1);
  const fs::path& input = request.inputs.front();
  StageWriter out(request, input);

  switch (request.stage) {
    case Stage::Frangi:
      out.gray("frangi", vesselness_image(load_gray(input), config));
      break;
    case Stage::Threshold:
      if (is_score_file(input)) {
        out.mask("mask", score_threshold(load_scores(input), config.lscf.score_threshold));
      } else {
        out.mask("mask", threshold(load_gray(input), config.frangi_threshold));
      }
      break;
    case Stage::Cf:
      out.scores("cf", connectivity_filter(load_mask(input), config.lscf.connectivity));
      break;
    case Stage::Lscf: {
      const auto result = ls_connectivity_filter(load_mask(input), config.lscf);
      out.scores("lscf", result.scores);
      out.mask("repaired", result.repaired);
      break;
    }
    case Stage::Close:
      out.mask("closed", dilate_then_erode(load_mask(input), StructuringElement::cross(),
                                           config.morphology.dilations,
                                           config.morphology.erosions));
      break;
    case Stage::Render:
      if (!is_score_file(input)) {
        throw TypeMismatchError("render expects a .vks score map, got '" + input.string() + "'");
      }
      out.gray("render", render_scores(load_scores(input)));
      break;
    case Stage::Eval: {
      expect_inputs(request, 2, 3);
      const auto pred = load_mask(input);
      const auto gt = load_annotation(request.inputs[1]);
      const auto counts = request.inputs.size() == 3
                              ? confusion(pred, gt, load_annotation(request.inputs[2]))
                              : confusion(pred, gt);
      const auto report = aggregate({{out.stem(), counts, rates(counts)}});
      const fs::path csv = out.named("eval", ".csv");
      std::ofstream file(csv);
      if (!file) throw IoError("cannot write '" + csv.string() + "'");
      write_csv(report, file);
      out.file(csv);
      break;
    }
    case Stage::Segment:
      write_segmentation(out, segment(load_gray(input), config));
      break;
  }

  auto outputs = out.take();
  ManifestEntry entry{std::string(to_string(request.stage)), input.stem().string(), {}, {},
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()};
  for (const auto& in : request.inputs) entry.inputs.push_back(in.generic_string());
  for (const auto& o : outputs) entry.outputs.push_back(manifest.relative(o));
  manifest.set_config(config);
  manifest.record(std::move(entry));
  return outputs;
}

}  // namespace vesselkit::pipeline
