#include "mfs/classifier.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mfs {

namespace {

void check_config(const ClassifierConfig& config) {
  if (config.delta_max < 2) {
    throw Error(Errc::invalid_delta_max,
                "delta_max " + std::to_string(config.delta_max) +
                    " is below 2");
  }
  if (config.tile_size < 8) {
    throw Error(Errc::bad_tile_spec,
                "tile_size " + std::to_string(config.tile_size) +
                    " is below 8");
  }
}

void check_tile_size(const GrayImage& tile, int tile_size,
                     const std::string& label) {
  if (tile.width != tile_size || tile.height != tile_size) {
    throw Error(Errc::tile_size_mismatch,
                "tile is " + std::to_string(tile.width) + "x" +
                    std::to_string(tile.height) + ", expected " +
                    std::to_string(tile_size) + "x" +
                    std::to_string(tile_size) +
                    (label.empty() ? "" : " (class '" + label + "')"));
  }
}

std::vector<std::pair<std::string, double>> distances_to_classes(
    const FDCurve& fd, const ClassifierModel& model) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(model.classes.size());
  for (const ClassModel& cls : model.classes) {
    out.emplace_back(cls.label, fd_distance(fd, cls.fd));
  }
  return out;
}

// Argmin in model order; flags an exact tie for the minimum.
std::pair<std::size_t, bool> argmin_with_tie(
    const std::vector<std::pair<std::string, double>>& distances) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < distances.size(); ++i) {
    if (distances[i].second < distances[best].second) best = i;
  }
  bool tie = false;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (i != best && distances[i].second == distances[best].second) {
      tie = true;
      break;
    }
  }
  return {best, tie};
}

}  // namespace

ClassifierModel train_model(const std::vector<LabeledTiles>& training,
                            const ClassifierConfig& config) {
  check_config(config);
  if (training.empty()) {
    throw Error(Errc::empty_class, "training corpus has no classes");
  }
  std::set<std::string> seen;
  for (const LabeledTiles& entry : training) {
    if (!seen.insert(entry.label).second) {
      throw Error(Errc::duplicate_label, "'" + entry.label + "'");
    }
    if (entry.tiles.empty()) {
      throw Error(Errc::empty_class, "class '" + entry.label +
                                         "' has no tiles");
    }
  }

  ClassifierModel model;
  model.config = config;
  model.classes.reserve(training.size());

  for (const LabeledTiles& entry : training) {
    std::vector<double> area_sum(static_cast<std::size_t>(config.delta_max),
                                 0.0);
    double mean_sum = 0.0;
    double std_sum = 0.0;
    for (const GrayImage& tile : entry.tiles) {
      check_tile_size(tile, config.tile_size, entry.label);
      const AreaCurve curve =
          area_curve(tile, config.delta_max, config.variant);
      for (std::size_t i = 0; i < area_sum.size(); ++i) {
        area_sum[i] += curve.values[i];
      }
      const GrayStats stats = gray_stats(tile);
      mean_sum += stats.mean;
      std_sum += stats.std;
    }
    const double n = static_cast<double>(entry.tiles.size());

    ClassModel cls;
    cls.label = entry.label;
    cls.avg_area.delta_max = config.delta_max;
    cls.avg_area.variant = config.variant;
    cls.avg_area.values.resize(area_sum.size());
    for (std::size_t i = 0; i < area_sum.size(); ++i) {
      cls.avg_area.values[i] = area_sum[i] / n;
    }
    cls.fd = fd_curve(cls.avg_area);
    cls.mean_of_means = mean_sum / n;
    cls.mean_of_stds = std_sum / n;
    cls.n_tiles = static_cast<int>(entry.tiles.size());
    model.classes.push_back(std::move(cls));
  }
  return model;
}

ClassificationResult classify_tile(const GrayImage& tile,
                                   const ClassifierModel& model) {
  check_tile_size(tile, model.config.tile_size, "");
  const FDCurve fd = fd_curve(
      area_curve(tile, model.config.delta_max, model.config.variant));

  ClassificationResult result;
  result.distances = distances_to_classes(fd, model);
  const auto [best, tie] = argmin_with_tie(result.distances);
  result.predicted = result.distances[best].first;
  result.tie = tie;
  return result;
}

EvalReport evaluate(const ClassifierModel& model,
                    const std::vector<LabeledTiles>& test) {
  if (test.empty()) {
    throw Error(Errc::empty_class, "test corpus has no classes");
  }
  std::set<std::string> model_labels;
  for (const ClassModel& cls : model.classes) model_labels.insert(cls.label);
  std::set<std::string> seen;
  for (const LabeledTiles& entry : test) {
    if (!seen.insert(entry.label).second) {
      throw Error(Errc::duplicate_label, "'" + entry.label + "'");
    }
    if (!model_labels.contains(entry.label)) {
      throw Error(Errc::unknown_test_label,
                  "'" + entry.label + "' is not a training class");
    }
    if (entry.tiles.empty()) {
      throw Error(Errc::empty_class, "test class '" + entry.label +
                                         "' has no tiles");
    }
  }

  EvalReport report;
  ConfusionMatrix& matrix = report.matrix;
  for (const ClassModel& cls : model.classes) matrix.rows.push_back(cls.label);
  for (const LabeledTiles& entry : test) matrix.cols.push_back(entry.label);
  matrix.cells.assign(matrix.rows.size() * matrix.cols.size(), 0.0);

  for (std::size_t c = 0; c < test.size(); ++c) {
    const LabeledTiles& entry = test[c];
    std::vector<double> column_sum(model.classes.size(), 0.0);
    for (const GrayImage& tile : entry.tiles) {
      check_tile_size(tile, model.config.tile_size, entry.label);
      const FDCurve fd = fd_curve(
          area_curve(tile, model.config.delta_max, model.config.variant));
      const auto distances = distances_to_classes(fd, model);
      for (std::size_t r = 0; r < distances.size(); ++r) {
        column_sum[r] += distances[r].second;
      }
      const auto [best, tie] = argmin_with_tie(distances);
      (void)tie;
      if (distances[best].first == entry.label) ++report.n_correct;
      ++report.n_tiles;
    }
    const double n = static_cast<double>(entry.tiles.size());
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
      matrix.cells[r * matrix.cols.size() + c] = column_sum[r] / n;
    }
  }

  matrix.assignments.reserve(matrix.cols.size());
  for (std::size_t c = 0; c < matrix.cols.size(); ++c) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < matrix.rows.size(); ++r) {
      if (matrix.cell(r, c) < matrix.cell(best, c)) best = r;
    }
    matrix.assignments.push_back(matrix.rows[best]);
  }

  report.accuracy = static_cast<double>(report.n_correct) /
                    static_cast<double>(report.n_tiles);
  return report;
}

std::vector<ClassStatsRow> class_stats_table(const ClassifierModel& model) {
  std::vector<ClassStatsRow> rows;
  rows.reserve(model.classes.size());
  for (const ClassModel& cls : model.classes) {
    rows.push_back({cls.label, cls.mean_of_means, cls.mean_of_stds});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// persistence

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;
constexpr int kLogBase = 2;

void require_keys(const ordered_json& obj,
                  const std::set<std::string>& allowed, const char* where) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw Error(Errc::bad_model_file, "unknown field '" + item.key() +
                                            "' in " + where);
    }
  }
  for (const std::string& key : allowed) {
    if (!obj.contains(key)) {
      throw Error(Errc::bad_model_file,
                  "missing field '" + key + "' in " + where);
    }
  }
}

std::vector<double> number_array(const ordered_json& arr, const char* what) {
  if (!arr.is_array()) {
    throw Error(Errc::bad_model_file, std::string(what) + " is not an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw Error(Errc::bad_model_file,
                  std::string(what) + " holds a non-number");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string model_to_json(const ClassifierModel& model) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["delta_max"] = model.config.delta_max;
  doc["area_variant"] = to_string(model.config.variant);
  doc["tile_size"] = model.config.tile_size;
  doc["log_base"] = kLogBase;
  doc["classes"] = ordered_json::array();
  for (const ClassModel& cls : model.classes) {
    ordered_json entry;
    entry["label"] = cls.label;
    entry["n_tiles"] = cls.n_tiles;
    entry["avg_area"] = cls.avg_area.values;
    entry["fd"] = cls.fd.values;
    entry["mean_of_means"] = cls.mean_of_means;
    entry["mean_of_stds"] = cls.mean_of_stds;
    doc["classes"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

ClassifierModel model_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::bad_model_file, e.what());
  }
  if (!doc.is_object()) {
    throw Error(Errc::bad_model_file, "document is not an object");
  }
  require_keys(doc,
               {"format_version", "delta_max", "area_variant", "tile_size",
                "log_base", "classes"},
               "model");

  if (!doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kFormatVersion) {
    throw Error(Errc::bad_model_file, "unsupported format_version");
  }
  if (!doc["log_base"].is_number_integer() ||
      doc["log_base"].get<int>() != kLogBase) {
    throw Error(Errc::bad_model_file, "unsupported log_base");
  }

  ClassifierModel model;
  if (!doc["delta_max"].is_number_integer()) {
    throw Error(Errc::bad_model_file, "delta_max is not an integer");
  }
  model.config.delta_max = doc["delta_max"].get<int>();
  if (!doc["tile_size"].is_number_integer()) {
    throw Error(Errc::bad_model_file, "tile_size is not an integer");
  }
  model.config.tile_size = doc["tile_size"].get<int>();
  if (!doc["area_variant"].is_string()) {
    throw Error(Errc::bad_model_file, "area_variant is not a string");
  }
  const auto variant =
      area_variant_from_string(doc["area_variant"].get<std::string>());
  if (!variant) {
    throw Error(Errc::bad_model_file,
                "area_variant '" + doc["area_variant"].get<std::string>() +
                    "'");
  }
  model.config.variant = *variant;
  try {
    check_config(model.config);
  } catch (const Error& e) {
    throw Error(Errc::bad_model_file, e.what());
  }

  const ordered_json& classes = doc["classes"];
  if (!classes.is_array() || classes.empty()) {
    throw Error(Errc::bad_model_file, "classes must be a nonempty array");
  }
  std::set<std::string> seen;
  for (const auto& entry : classes) {
    if (!entry.is_object()) {
      throw Error(Errc::bad_model_file, "class entry is not an object");
    }
    require_keys(entry,
                 {"label", "n_tiles", "avg_area", "fd", "mean_of_means",
                  "mean_of_stds"},
                 "class entry");
    ClassModel cls;
    if (!entry["label"].is_string()) {
      throw Error(Errc::bad_model_file, "label is not a string");
    }
    cls.label = entry["label"].get<std::string>();
    if (cls.label.empty() || !seen.insert(cls.label).second) {
      throw Error(Errc::bad_model_file,
                  "empty or duplicate label '" + cls.label + "'");
    }
    if (!entry["n_tiles"].is_number_integer() ||
        entry["n_tiles"].get<int>() < 1) {
      throw Error(Errc::bad_model_file,
                  "n_tiles must be a positive integer");
    }
    cls.n_tiles = entry["n_tiles"].get<int>();

    cls.avg_area.values = number_array(entry["avg_area"], "avg_area");
    cls.avg_area.delta_max = model.config.delta_max;
    cls.avg_area.variant = model.config.variant;
    if (cls.avg_area.values.size() !=
        static_cast<std::size_t>(model.config.delta_max)) {
      throw Error(Errc::bad_model_file,
                  "avg_area length does not match delta_max in class '" +
                      cls.label + "'");
    }
    for (double a : cls.avg_area.values) {
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(Errc::bad_model_file,
                    "non-positive avg_area value in class '" + cls.label +
                        "'");
      }
    }

    cls.fd.values = number_array(entry["fd"], "fd");
    cls.fd.delta_max = model.config.delta_max;
    cls.fd.source_variant = model.config.variant;
    if (cls.fd.values.size() !=
        static_cast<std::size_t>(model.config.delta_max - 1)) {
      throw Error(Errc::bad_model_file,
                  "fd length does not match delta_max in class '" +
                      cls.label + "'");
    }
    // The stored fd must be consistent with the stored area curve. A small
    // tolerance absorbs sub-ulp libm differences across platforms.
    const FDCurve recomputed = fd_curve(cls.avg_area);
    for (std::size_t i = 0; i < cls.fd.values.size(); ++i) {
      if (std::abs(cls.fd.values[i] - recomputed.values[i]) > 1e-9) {
        throw Error(Errc::bad_model_file,
                    "fd curve is inconsistent with avg_area in class '" +
                        cls.label + "'");
      }
    }

    if (!entry["mean_of_means"].is_number() ||
        !entry["mean_of_stds"].is_number()) {
      throw Error(Errc::bad_model_file, "gray statistics must be numbers");
    }
    cls.mean_of_means = entry["mean_of_means"].get<double>();
    cls.mean_of_stds = entry["mean_of_stds"].get<double>();
    model.classes.push_back(std::move(cls));
  }
  return model;
}

void save_model(const std::filesystem::path& path,
                const ClassifierModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_error, "cannot open '" + path.string() +
                                    "' for writing");
  }
  out << model_to_json(model);
  if (!out) {
    throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
  }
}

ClassifierModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::missing_file, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace mfs
