#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "vesselkit/image_io.hpp"
#include "vesselkit/pipeline/dataset.hpp"
#include "vesselkit/pipeline/manifest.hpp"
#include "vesselkit/pipeline/segment.hpp"

namespace vesselkit::pipeline {
namespace fs = std::filesystem;

namespace {

struct MethodOutcome {
  ConfusionCounts full;
  std::optional<ConfusionCounts> fov;
  std::optional<fs::path> mask_file;
};

struct ItemOutcome {
  std::vector<MethodOutcome> methods;
  double seconds = 0.0;
};

ItemOutcome process(const DatasetItem& item, const PipelineConfig& config,
                    const BatchOptions& options, const fs::path& mask_dir) {
  const auto started = std::chrono::steady_clock::now();
  const GrayImage gray = load_gray(item.image);
  const BinaryMask gt = load_annotation(item.gt);
  std::optional<BinaryMask> fov;
  if (item.fov) fov = load_annotation(*item.fov);
  if (!gt.same_shape(gray) || (fov && !fov->same_shape(gray))) {
    throw FormatError("'" + item.id + "': image, ground truth and FOV sizes differ");
  }

  const GrayImage frangi = vesselness_image(gray, config);
  const BinaryMask thresholded = threshold(frangi, config.frangi_threshold);
  ItemOutcome out;
  for (const Method method : options.methods) {
    const Segmentation seg = post_process(frangi, thresholded, method, config);
    MethodOutcome m{confusion(seg.mask, gt), std::nullopt, std::nullopt};
    if (fov) m.fov = confusion(seg.mask, gt, *fov);
    if (options.save_masks) {
      m.mask_file = mask_dir / (item.id + "_" + std::string(to_string(method)) + options.extension);
      save_mask(seg.mask, *m.mask_file);
    }
    out.methods.push_back(std::move(m));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

std::vector<ItemOutcome> process_all(const std::vector<DatasetItem>& items,
                                     const PipelineConfig& config, const BatchOptions& options,
                                     const fs::path& mask_dir) {
  std::vector<ItemOutcome> outcomes(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        outcomes[i] = process(items[i], config, options, mask_dir);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = items.size();
      }
    }
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(config.workers), items.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return outcomes;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out || !(out << text)) throw IoError("cannot write '" + path.string() + "'");
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << *v;
  return s.str();
}

std::string summary(const std::vector<MethodReport>& reports, std::size_t images) {
  std::ostringstream out;
  const bool fov = !reports.empty() && reports.front().fov.has_value();
  out << "images: " << images << "  scope: " << (fov ? "fov" : "full frame")
      << "  aggregation: mean of per-image rates\n\n";
  out << std::left << std::setw(14) << "method" << std::right << std::setw(10) << "TP" << std::setw(10)
      << "TN" << std::setw(10) << "ACC" << '\n';
  for (const auto& r : reports) {
    const Rates& m = fov ? r.fov->mean : r.full.mean;
    out << std::left << std::setw(14) << to_string(r.method) << std::right << std::setw(10)
        << cell(m.tp_rate) << std::setw(10) << cell(m.tn_rate) << std::setw(10) << cell(m.accuracy)
        << '\n';
  }
  return out.str();
}

}  // namespace

BatchResult run_dataset(const PipelineConfig& config, const BatchOptions& options) {
  config.validate();
  if (options.methods.empty()) throw ConfigError("no methods selected");
  if (options.extension != ".png" && options.extension != ".pgm") {
    throw ConfigError("mask extension must be .png or .pgm, got '" + options.extension + "'");
  }
  ResolvedDataset dataset = resolve_dataset(config.dataset);
  if (dataset.items.empty()) {
    throw Error("every image was skipped; no image has a matching ground truth");
  }

  const fs::path mask_dir = options.out_dir / "masks";
  fs::create_directories(options.save_masks ? mask_dir : options.out_dir);
  const auto outcomes = process_all(dataset.items, config, options, mask_dir);

  fs::path manifest_path = options.out_dir / "manifest.json";
  fs::remove(manifest_path);
  Manifest manifest(manifest_path);
  manifest.set_config(config);

  BatchResult result;
  result.warnings = std::move(dataset.warnings);
  for (std::size_t i = 0; i < dataset.items.size(); ++i) {
    const auto& item = dataset.items[i];
    ManifestEntry entry{"batch", item.id, {item.image.generic_string(), item.gt.generic_string()},
                        {}, outcomes[i].seconds};
    if (item.fov) entry.inputs.push_back(item.fov->generic_string());
    for (const auto& m : outcomes[i].methods) {
      if (m.mask_file) entry.outputs.push_back(manifest.relative(*m.mask_file));
    }
    manifest.record(std::move(entry));
  }

  ManifestEntry reports_entry{"report", "dataset", {}, {}, 0.0};
  auto emit = [&](const EvalReport& report, Method method, std::string_view scope) {
    const std::string base = "report_" + std::string(to_string(method)) + "_" + std::string(scope);
    std::ostringstream csv;
    write_csv(report, csv);
    std::ostringstream table;
    write_table(report, std::string(to_string(method)) + " (" + std::string(scope) + ")", table);
    for (const auto& [ext, text] : {std::pair{".csv", csv.str()}, std::pair{".txt", table.str()}}) {
      const fs::path path = options.out_dir / (base + ext);
      write_text(path, text);
      reports_entry.outputs.push_back(manifest.relative(path));
    }
  };

  for (std::size_t k = 0; k < options.methods.size(); ++k) {
    const Method method = options.methods[k];
    std::vector<ImageRow> full_rows;
    std::vector<ImageRow> fov_rows;
    for (std::size_t i = 0; i < dataset.items.size(); ++i) {
      const auto& m = outcomes[i].methods[k];
      full_rows.push_back({dataset.items[i].id, m.full, rates(m.full)});
      if (m.fov) fov_rows.push_back({dataset.items[i].id, *m.fov, rates(*m.fov)});
    }
    MethodReport report{method, aggregate(std::move(full_rows)), std::nullopt};
    if (!fov_rows.empty()) report.fov = aggregate(std::move(fov_rows));
    emit(report.full, method, "full");
    if (report.fov) emit(*report.fov, method, "fov");
    result.reports.push_back(std::move(report));
  }

  const fs::path summary_path = options.out_dir / "summary.txt";
  write_text(summary_path, summary(result.reports, dataset.items.size()));
  reports_entry.outputs.push_back(manifest.relative(summary_path));
  reports_entry.outputs.push_back(manifest.relative(manifest_path));
  manifest.record(std::move(reports_entry));
  manifest.save();

  for (const auto& a : manifest.artifacts()) result.artifacts.push_back(options.out_dir / a);
  return result;
}

}  // namespace vesselkit::pipeline
