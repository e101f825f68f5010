#include "vesselkit/pipeline/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace vesselkit::pipeline {
namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 4> kMethodNames = {{
    {Method::FrangiOnly, "frangi-only"},
    {Method::Cf, "cf"},
    {Method::CfClose, "cf+close"},
    {Method::Lscf, "lscf"},
}};

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"frangi", {"sigma_min", "sigma_max", "sigma_step", "beta", "c", "polarity", "threshold"}},
      {"connectivity",
       {"connectivity", "max_score", "max_dist", "score_threshold", "w1", "w2", "p"}},
      {"morphology", {"dilations", "erosions"}},
      {"pipeline", {"method", "workers"}},
      {"dataset",
       {"preset", "root", "image_dir", "gt_dir", "fov_dir", "image_pattern", "gt_template",
        "fov_template"}},
  };
  return keys;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key, std::string_view source) {
  T value{};
  bool ok = false;
  if constexpr (std::is_floating_point_v<T>) {
    // libstdc++ 11 lacks from_chars for double.
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    ok = static_cast<bool>(in >> value) && (in >> std::ws).eof();
  } else {
    const char* last = text.data() + text.size();
    const auto r = std::from_chars(text.data(), last, value);
    ok = r.ec == std::errc{} && r.ptr == last && !text.empty();
  }
  if (!ok) {
    throw ConfigError(std::string(source) + ": '" + key + "' expects a number, got '" + text + "'");
  }
  return value;
}

Connectivity parse_connectivity(const std::string& text, std::string_view source) {
  if (text == "4") return Connectivity::Four;
  if (text == "8") return Connectivity::Eight;
  throw ConfigError(std::string(source) + ": connectivity must be 4 or 8, got '" + text + "'");
}

std::string number(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, text] : kMethodNames) {
    if (text == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected frangi-only, cf, cf+close or lscf)");
}

std::vector<Method> all_methods() {
  return {Method::FrangiOnly, Method::Cf, Method::CfClose, Method::Lscf};
}

std::string_view to_string(Polarity polarity) {
  return polarity == Polarity::DarkOnBright ? "dark-on-bright" : "bright-on-dark";
}

Polarity parse_polarity(std::string_view name) {
  if (name == "dark-on-bright") return Polarity::DarkOnBright;
  if (name == "bright-on-dark") return Polarity::BrightOnDark;
  throw ConfigError("unknown polarity '" + std::string(name) +
                    "' (expected dark-on-bright or bright-on-dark)");
}

fs::path DatasetLayout::resolve(const fs::path& dir) const {
  if (dir.empty() || dir.is_absolute() || root.empty()) return dir;
  return root / dir;
}

DatasetLayout preset_layout(std::string_view name) {
  DatasetLayout d;
  d.preset = std::string(name);
  if (name == "drive") {
    d.image_dir = "test/images";
    d.gt_dir = "test/1st_manual";
    d.fov_dir = "test/mask";
    d.image_pattern = R"((\d+)_test)";
    d.gt_template = "{1}_manual1";
    d.fov_template = "{1}_test_mask";
  } else if (name == "stare") {
    d.image_dir = "images";
    d.gt_dir = "labels-ah";
    d.image_pattern = R"((im\d+))";
    d.gt_template = "{1}.ah";
  } else if (name == "chase-db") {
    d.image_dir = ".";
    d.gt_dir = ".";
    d.image_pattern = R"((Image_\d+[LR]))";
    d.gt_template = "{1}_1stHO";
  } else if (name == "iostar") {
    d.image_dir = "image";
    d.gt_dir = "GT";
    d.fov_dir = "mask";
    d.image_pattern = R"((STAR \d+_[A-Z]+))";
    d.gt_template = "{1}_GT";
    d.fov_template = "{1}_Mask";
  } else if (name == "osirix") {
    d.image_dir = "images";
    d.gt_dir = "ground_truth";
    d.image_pattern = "(.+)";
    d.gt_template = "{1}";
  } else {
    throw ConfigError("unknown dataset preset '" + std::string(name) +
                      "' (expected drive, stare, chase-db, iostar or osirix)");
  }
  return d;
}

std::vector<std::string> preset_names() { return {"drive", "stare", "chase-db", "iostar", "osirix"}; }

void PipelineConfig::validate() const {
  try {
    frangi.validate();
    lscf.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (frangi_threshold < 0 || frangi_threshold > 255) {
    throw ConfigError("frangi threshold must lie in [0,255]");
  }
  if (morphology.dilations < 0 || morphology.erosions < 0) {
    throw ConfigError("morphology counts must be non-negative");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

PipelineConfig parse_config(std::istream& in, std::string_view source) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string(source) + ": " + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }

  PipelineConfig c;
  const auto& keys = known_keys();
  // The dataset preset seeds the layout; explicit keys then override it.
  if (const auto preset = tree.get_optional<std::string>("dataset.preset")) {
    c.dataset = preset_layout(*preset);
  }
  for (const auto& [section, body] : tree) {
    const auto allowed = keys.find(section);
    if (allowed == keys.end() || body.data().size() > 0) {
      throw ConfigError(std::string(source) + ": unknown section or top-level key '" + section + "'");
    }
    for (const auto& [key, node] : body) {
      if (!allowed->second.contains(key)) {
        throw ConfigError(std::string(source) + ": unknown key '" + section + "." + key + "'");
      }
      const std::string& v = node.data();
      const std::string name = section + "." + key;
      if (section == "frangi") {
        if (key == "sigma_min") c.frangi.sigma_min = parse_number<double>(v, name, source);
        else if (key == "sigma_max") c.frangi.sigma_max = parse_number<double>(v, name, source);
        else if (key == "sigma_step") c.frangi.sigma_step = parse_number<double>(v, name, source);
        else if (key == "beta") c.frangi.beta = parse_number<double>(v, name, source);
        else if (key == "c") c.frangi.c = parse_number<double>(v, name, source);
        else if (key == "polarity") c.frangi.polarity = parse_polarity(v);
        else if (key == "threshold") c.frangi_threshold = parse_number<int>(v, name, source);
      } else if (section == "connectivity") {
        if (key == "connectivity") c.lscf.connectivity = parse_connectivity(v, source);
        else if (key == "max_score") c.lscf.max_score = parse_number<int>(v, name, source);
        else if (key == "max_dist") c.lscf.max_dist = parse_number<int>(v, name, source);
        else if (key == "score_threshold") c.lscf.score_threshold = parse_number<std::uint32_t>(v, name, source);
        else if (key == "w1") c.lscf.distance.w1 = parse_number<double>(v, name, source);
        else if (key == "w2") c.lscf.distance.w2 = parse_number<double>(v, name, source);
        else if (key == "p") c.lscf.distance.p = parse_number<double>(v, name, source);
      } else if (section == "morphology") {
        if (key == "dilations") c.morphology.dilations = parse_number<int>(v, name, source);
        else if (key == "erosions") c.morphology.erosions = parse_number<int>(v, name, source);
      } else if (section == "pipeline") {
        if (key == "method") c.method = parse_method(v);
        else if (key == "workers") c.workers = parse_number<int>(v, name, source);
      } else if (section == "dataset") {
        if (key == "root") c.dataset.root = v;
        else if (key == "image_dir") c.dataset.image_dir = v;
        else if (key == "gt_dir") c.dataset.gt_dir = v;
        else if (key == "fov_dir") c.dataset.fov_dir = v;
        else if (key == "image_pattern") c.dataset.image_pattern = v;
        else if (key == "gt_template") c.dataset.gt_template = v;
        else if (key == "fov_template") c.dataset.fov_template = v;
      }
    }
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  return parse_config(in, path.string());
}

std::string to_ini(const PipelineConfig& c) {
  std::ostringstream out;
  out << "[frangi]\n"
      << "sigma_min = " << number(c.frangi.sigma_min) << '\n'
      << "sigma_max = " << number(c.frangi.sigma_max) << '\n'
      << "sigma_step = " << number(c.frangi.sigma_step) << '\n'
      << "beta = " << number(c.frangi.beta) << '\n'
      << "c = " << number(c.frangi.c) << '\n'
      << "polarity = " << to_string(c.frangi.polarity) << '\n'
      << "threshold = " << c.frangi_threshold << '\n'
      << "\n[connectivity]\n"
      << "connectivity = " << static_cast<int>(c.lscf.connectivity) << '\n'
      << "max_score = " << c.lscf.max_score << '\n'
      << "max_dist = " << c.lscf.max_dist << '\n'
      << "score_threshold = " << c.lscf.score_threshold << '\n'
      << "w1 = " << number(c.lscf.distance.w1) << '\n'
      << "w2 = " << number(c.lscf.distance.w2) << '\n'
      << "p = " << number(c.lscf.distance.p) << '\n'
      << "\n[morphology]\n"
      << "dilations = " << c.morphology.dilations << '\n'
      << "erosions = " << c.morphology.erosions << '\n'
      << "\n[pipeline]\n"
      << "method = " << to_string(c.method) << '\n'
      << "workers = " << c.workers << '\n';
  const auto& d = c.dataset;
  out << "\n[dataset]\n";
  if (!d.preset.empty()) out << "preset = " << d.preset << '\n';
  if (!d.root.empty()) out << "root = " << d.root.string() << '\n';
  out << "image_dir = " << d.image_dir.string() << '\n'
      << "gt_dir = " << d.gt_dir.string() << '\n'
      << "fov_dir = " << d.fov_dir.string() << '\n';
  out << "image_pattern = " << d.image_pattern << '\n'
      << "gt_template = " << d.gt_template << '\n'
      << "fov_template = " << d.fov_template << '\n';
  return out.str();
}

}  // namespace vesselkit::pipeline
