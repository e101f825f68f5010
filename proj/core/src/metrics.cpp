#include "vesselkit/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace vesselkit {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  return *this;
}

namespace {

void check_shape(const BinaryMask& a, const BinaryMask& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string("dimension mismatch between prediction and ") + what +
                                ": " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                "x" + std::to_string(b.height()));
  }
}

ConfusionCounts count(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask* fov) {
  ConfusionCounts c;
  const auto p = pred.pixels();
  const auto g = gt.pixels();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (fov != nullptr && fov->pixels()[i] == 0) continue;
    if (p[i]) {
      (g[i] ? c.tp : c.fp) += 1;
    } else {
      (g[i] ? c.fn : c.tn) += 1;
    }
  }
  return c;
}

std::optional<double> percent(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> mean_of(const std::vector<ImageRow>& rows,
                              std::optional<double> Rates::*field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& row : rows) {
    if (const auto& v = row.rates.*field) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::string fmt(const std::optional<double>& v, int precision) {
  if (!v) return "nan";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

}  // namespace

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
  check_shape(pred, gt, "ground truth");
  return count(pred, gt, nullptr);
}

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& fov) {
  check_shape(pred, gt, "ground truth");
  check_shape(pred, fov, "field-of-view mask");
  return count(pred, gt, &fov);
}

Rates rates(const ConfusionCounts& c) {
  return {percent(c.tp, c.tp + c.fn), percent(c.tn, c.tn + c.fp), percent(c.tp + c.tn, c.total())};
}

EvalReport aggregate(std::vector<ImageRow> rows) {
  if (rows.empty()) throw std::invalid_argument("cannot aggregate an empty evaluation");
  EvalReport report;
  report.mean = {mean_of(rows, &Rates::tp_rate), mean_of(rows, &Rates::tn_rate),
                 mean_of(rows, &Rates::accuracy)};
  ConfusionCounts total;
  for (const auto& row : rows) total += row.counts;
  report.pooled = rates(total);
  report.rows = std::move(rows);
  return report;
}

void write_csv(const EvalReport& report, std::ostream& out) {
  out << "image,tp,fp,tn,fn,tp_rate,tn_rate,accuracy\n";
  for (const auto& row : report.rows) {
    out << row.id << ',' << row.counts.tp << ',' << row.counts.fp << ',' << row.counts.tn << ','
        << row.counts.fn << ',' << fmt(row.rates.tp_rate, 4) << ',' << fmt(row.rates.tn_rate, 4)
        << ',' << fmt(row.rates.accuracy, 4) << '\n';
  }
  ConfusionCounts total;
  for (const auto& row : report.rows) total += row.counts;
  out << "mean,,,,," << fmt(report.mean.tp_rate, 4) << ',' << fmt(report.mean.tn_rate, 4) << ','
      << fmt(report.mean.accuracy, 4) << '\n';
  out << "pooled," << total.tp << ',' << total.fp << ',' << total.tn << ',' << total.fn << ','
      << fmt(report.pooled.tp_rate, 4) << ',' << fmt(report.pooled.tn_rate, 4) << ','
      << fmt(report.pooled.accuracy, 4) << '\n';
}

void write_table(const EvalReport& report, const std::string& title, std::ostream& out) {
  std::size_t id_width = 6;
  for (const auto& row : report.rows) id_width = std::max(id_width, row.id.size());
  const auto line = [&](const std::string& id, const Rates& r) {
    out << std::left << std::setw(static_cast<int>(id_width)) << id << std::right << "  "
        << std::setw(7) << fmt(r.tp_rate, 2) << "  " << std::setw(7) << fmt(r.tn_rate, 2) << "  "
        << std::setw(7) << fmt(r.accuracy, 2) << '\n';
  };
  out << title << '\n';
  out << std::left << std::setw(static_cast<int>(id_width)) << "image" << std::right << "  "
      << std::setw(7) << "TP" << "  " << std::setw(7) << "TN" << "  " << std::setw(7) << "ACC"
      << '\n';
  out << std::string(id_width + 27, '-') << '\n';
  for (const auto& row : report.rows) line(row.id, row.rates);
  out << std::string(id_width + 27, '-') << '\n';
  line("mean", report.mean);
  line("pooled", report.pooled);
}

}  // namespace vesselkit
