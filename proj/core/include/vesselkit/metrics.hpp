#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vesselkit/raster.hpp"

namespace vesselkit {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& other);
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Counts over all pixels, or over fov == 1 only. Throws std::invalid_argument
/// on a dimension mismatch.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& fov);

/// Percentages. A rate whose denominator is zero is left empty.
struct Rates {
  std::optional<double> tp_rate;   // sensitivity, 100 tp / (tp + fn)
  std::optional<double> tn_rate;   // specificity, 100 tn / (tn + fp)
  std::optional<double> accuracy;  // 100 (tp + tn) / total
};

Rates rates(const ConfusionCounts& counts);

struct ImageRow {
  std::string id;
  ConfusionCounts counts;
  Rates rates;
};

struct EvalReport {
  std::vector<ImageRow> rows;
  Rates mean;    // unweighted mean of per-image rates, empty entries skipped
  Rates pooled;  // rates of the summed counts
};

/// Throws std::invalid_argument on an empty row list.
EvalReport aggregate(std::vector<ImageRow> rows);

/// One row per image, then "mean" and "pooled" rows. Rates use 4 decimals;
/// undefined rates are written as "nan".
void write_csv(const EvalReport& report, std::ostream& out);

/// Aligned plain-text table in TP / TN / ACC column order.
void write_table(const EvalReport& report, const std::string& title, std::ostream& out);

}  // namespace vesselkit
