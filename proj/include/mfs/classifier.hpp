#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mfs/gray_image.hpp"
#include "mfs/signature.hpp"

namespace mfs {

struct ClassifierConfig {
  int delta_max = kDefaultDeltaMax;  // >= 2, dimension curves need delta 2
  AreaVariant variant = AreaVariant::difference;
  int tile_size = 128;               // square tiles, >= 8
};

/// One terrain class: the element-wise mean of its training tiles' area
/// curves (averaged in the linear area domain), the dimension curve
/// derived from that mean, and averaged first-order gray statistics.
struct ClassModel {
  std::string label;
  AreaCurve avg_area;
  FDCurve fd;  // == fd_curve(avg_area), stored for convenience
  double mean_of_means = 0.0;
  double mean_of_stds = 0.0;
  int n_tiles = 0;
};

struct ClassifierModel {
  ClassifierConfig config;
  std::vector<ClassModel> classes;  // distinct labels, order fixed at training
};

/// Training or test corpus entry: a class label with its tiles.
struct LabeledTiles {
  std::string label;
  std::vector<GrayImage> tiles;
};

struct ClassificationResult {
  std::string predicted;  // argmin over distances; earliest class on a tie
  std::vector<std::pair<std::string, double>> distances;  // model order
  bool tie = false;       // >= 2 classes attained the minimum exactly
};

/// rows = training classes, cols = test classes; each cell is the mean
/// distance from the test class's tiles to the training class curve.
struct ConfusionMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<double> cells;  // rows.size() x cols.size(), row-major
  std::vector<std::string> assignments;  // per column, argmin row label

  double cell(std::size_t row, std::size_t col) const {
    return cells[row * cols.size() + col];
  }
};

struct EvalReport {
  ConfusionMatrix matrix;
  double accuracy = 0.0;  // fraction of individual tiles classified right
  int n_tiles = 0;
  int n_correct = 0;
};

struct ClassStatsRow {
  std::string label;
  double mean_of_means = 0.0;
  double mean_of_stds = 0.0;
};

ClassifierModel train_model(const std::vector<LabeledTiles>& training,
                            const ClassifierConfig& config);

ClassificationResult classify_tile(const GrayImage& tile,
                                   const ClassifierModel& model);

/// Classifies every test tile individually; cell (r,c) is the mean
/// distance over the tiles of test class c to training class r.
EvalReport evaluate(const ClassifierModel& model,
                    const std::vector<LabeledTiles>& test);

std::vector<ClassStatsRow> class_stats_table(const ClassifierModel& model);

/// Model persistence: a single JSON document,
///   {format_version: 1, delta_max, area_variant, tile_size, log_base: 2,
///    classes: [{label, n_tiles, avg_area, fd, mean_of_means,
///               mean_of_stds}]}
/// Numbers round-trip at full double precision; unknown fields are
/// rejected on load.
std::string model_to_json(const ClassifierModel& model);
ClassifierModel model_from_json(const std::string& text);
void save_model(const std::filesystem::path& path,
                const ClassifierModel& model);
ClassifierModel load_model(const std::filesystem::path& path);

}  // namespace mfs
