// Command-line front end: texture signature curves, model training,
// classification, evaluation, and synthetic data generation.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfs/classifier.hpp"
#include "mfs/synth.hpp"

namespace fs = std::filesystem;

namespace {

// Shortest decimal that reparses to the exact double; integers print bare.
std::string fmt(double value) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw mfs::Error(mfs::Errc::io_error,
                     "cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool dirs_only) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (dirs_only ? entry.is_directory() : entry.is_regular_file()) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Corpus layout: one subdirectory per class label, holding .pgm tiles.
// Directories and files are visited in sorted order so runs are
// reproducible byte for byte.
std::vector<mfs::LabeledTiles> load_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw mfs::Error(mfs::Errc::missing_file,
                     "'" + dir.string() + "' is not a directory");
  }
  std::vector<mfs::LabeledTiles> corpus;
  for (const fs::path& class_dir : sorted_entries(dir, true)) {
    mfs::LabeledTiles entry;
    entry.label = class_dir.filename().string();
    for (const fs::path& file : sorted_entries(class_dir, false)) {
      if (file.extension() == ".pgm") {
        entry.tiles.push_back(mfs::load_pgm(file));
      }
    }
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

struct RunConfig {
  int delta_max = mfs::kDefaultDeltaMax;
  std::string variant_name = "difference";
  int tile_size = 128;
  int stride = 0;  // 0: follow tile_size

  mfs::AreaVariant variant() const {
    return *mfs::area_variant_from_string(variant_name);
  }
  mfs::ClassifierConfig classifier_config() const {
    return {delta_max, variant(), tile_size};
  }
};

void add_curve_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--delta-max", config.delta_max,
                  "Largest dilation scale (>= 2)")
      ->check(CLI::Range(2, 1 << 16));
  cmd->add_option("--variant", config.variant_name,
                  "Area formula: volume quotient or volume difference")
      ->check(CLI::IsMember({"quotient", "difference"}));
}

void print_stats_table(std::ostream& out, const mfs::ClassifierModel& model) {
  out << "label,n_tiles,mean_of_means,mean_of_stds\n";
  for (const auto& cls : model.classes) {
    out << cls.label << "," << cls.n_tiles << "," << fmt(cls.mean_of_means)
        << "," << fmt(cls.mean_of_stds) << "\n";
  }
}

void cmd_signature(const fs::path& image_path, const RunConfig& config,
                   const fs::path& out_path) {
  const mfs::GrayImage img = mfs::load_pgm(image_path);
  const mfs::AreaCurve area =
      mfs::area_curve(img, config.delta_max, config.variant());
  const mfs::FDCurve fd = mfs::fd_curve(area);

  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;

  out << "delta,area,fd\n";
  for (int delta = 1; delta <= config.delta_max; ++delta) {
    out << delta << "," << fmt(area.at_delta(delta)) << ",";
    if (delta >= 2) out << fmt(fd.at_delta(delta));
    out << "\n";
  }
}

void cmd_train(const fs::path& corpus_dir, const RunConfig& config,
               const fs::path& model_path) {
  const auto corpus = load_corpus(corpus_dir);
  const mfs::ClassifierModel model =
      mfs::train_model(corpus, config.classifier_config());
  mfs::save_model(model_path, model);
  print_stats_table(std::cout, model);
}

void cmd_classify(const fs::path& model_path,
                  const std::vector<fs::path>& tile_paths, bool csv) {
  const mfs::ClassifierModel model = mfs::load_model(model_path);
  if (csv) std::cout << "tile,predicted,tie,label,distance\n";
  for (const fs::path& tile_path : tile_paths) {
    const mfs::GrayImage tile = mfs::load_pgm(tile_path);
    mfs::ClassificationResult result = mfs::classify_tile(tile, model);
    std::stable_sort(result.distances.begin(), result.distances.end(),
                     [](const auto& a, const auto& b) {
                       return a.second < b.second;
                     });
    if (csv) {
      for (const auto& [label, dist] : result.distances) {
        std::cout << tile_path.string() << "," << result.predicted << ","
                  << (result.tie ? 1 : 0) << "," << label << "," << fmt(dist)
                  << "\n";
      }
    } else {
      std::cout << tile_path.string() << " -> " << result.predicted
                << (result.tie ? " (tie)" : "") << "\n";
      for (const auto& [label, dist] : result.distances) {
        std::cout << "  " << label << " " << fmt(dist) << "\n";
      }
    }
  }
}

void write_matrix_csv(std::ostream& out, const mfs::ConfusionMatrix& m) {
  out << "train_class";
  for (const auto& col : m.cols) out << "," << col;
  out << "\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    out << m.rows[r];
    for (std::size_t c = 0; c < m.cols.size(); ++c) {
      out << "," << fmt(m.cell(r, c));
    }
    out << "\n";
  }
}

void cmd_evaluate(const fs::path& model_path, const fs::path& corpus_dir,
                  const fs::path& out_path) {
  const mfs::ClassifierModel model = mfs::load_model(model_path);
  const auto corpus = load_corpus(corpus_dir);
  const mfs::EvalReport report = mfs::evaluate(model, corpus);
  const mfs::ConfusionMatrix& m = report.matrix;

  std::cout << "rows: training classes, cols: test classes, "
               "cells: mean distance\n";
  write_matrix_csv(std::cout, m);
  std::cout << "\nassignments:\n";
  for (std::size_t c = 0; c < m.cols.size(); ++c) {
    std::cout << "  " << m.cols[c] << " -> " << m.assignments[c] << "\n";
  }
  std::cout << "\ntiles," << report.n_tiles << "\ncorrect,"
            << report.n_correct << "\naccuracy," << fmt(report.accuracy)
            << "\n";

  if (!out_path.empty()) {
    auto file = open_out(out_path);
    write_matrix_csv(file, m);
  }
}

void cmd_tiles(const fs::path& image_path, const RunConfig& config,
               const fs::path& out_dir) {
  const mfs::GrayImage img = mfs::load_pgm(image_path);
  const int stride = config.stride > 0 ? config.stride : config.tile_size;
  const auto tiles = mfs::extract_tiles(img, {config.tile_size, stride});
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "tile_%04zu.pgm", i);
    mfs::save_pgm(out_dir / name, tiles[i]);
  }
  std::cout << "wrote " << tiles.size() << " tiles\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mfs - multiresolution texture signatures and terrain classification"};
  app.require_subcommand(1);
  app.footer(
      "Numbers are printed as the shortest decimal string that reparses to\n"
      "the exact double value, so identical inputs give identical bytes.");

  RunConfig config;

  auto* sig = app.add_subcommand(
      "signature", "Per-scale area and dimension curve of one image (CSV)");
  fs::path sig_image, sig_out;
  sig->add_option("image", sig_image, "PGM image")->required();
  add_curve_flags(sig, config);
  sig->add_option("--out", sig_out, "Write CSV here instead of stdout");
  sig->callback([&] { cmd_signature(sig_image, config, sig_out); });

  auto* train = app.add_subcommand(
      "train", "Build a classifier model from a labeled tile corpus");
  fs::path train_corpus, train_out;
  train->add_option("corpus", train_corpus,
                    "Directory with one subdirectory of PGM tiles per class")
      ->required();
  train->add_option("--out", train_out, "Model JSON path")->required();
  add_curve_flags(train, config);
  train->add_option("--tile-size", config.tile_size,
                    "Expected square tile side")
      ->check(CLI::Range(8, 1 << 16));
  train->callback([&] { cmd_train(train_corpus, config, train_out); });

  auto* classify =
      app.add_subcommand("classify", "Classify tiles against a model");
  fs::path classify_model;
  std::vector<fs::path> classify_tiles;
  bool classify_csv = false;
  classify->add_option("model", classify_model, "Model JSON")->required();
  classify->add_option("tiles", classify_tiles, "PGM tiles")->required();
  classify->add_flag("--csv", classify_csv,
                     "Machine-readable output, one row per (tile, class)");
  classify->callback(
      [&] { cmd_classify(classify_model, classify_tiles, classify_csv); });

  auto* evaluate = app.add_subcommand(
      "evaluate", "Confusion matrix and accuracy over a labeled corpus");
  fs::path eval_model, eval_corpus, eval_out;
  evaluate->add_option("model", eval_model, "Model JSON")->required();
  evaluate->add_option("corpus", eval_corpus, "Labeled test corpus")
      ->required();
  evaluate->add_option("--out", eval_out, "Also write the matrix CSV here");
  evaluate->callback([&] { cmd_evaluate(eval_model, eval_corpus, eval_out); });

  auto* tiles = app.add_subcommand(
      "tiles", "Cut an image into square tiles, written as PGM files");
  fs::path tiles_image, tiles_out;
  tiles->add_option("image", tiles_image, "PGM image")->required();
  tiles->add_option("--out-dir", tiles_out, "Output directory")->required();
  tiles->add_option("--tile-size", config.tile_size, "Tile side in pixels")
      ->check(CLI::Range(8, 1 << 16));
  tiles->add_option("--stride", config.stride,
                    "Offset between tiles (default: tile size)")
      ->check(CLI::Range(1, 1 << 16));
  tiles->callback([&] { cmd_tiles(tiles_image, config, tiles_out); });

  auto* synth = app.add_subcommand("synth", "Generate synthetic textures");
  synth->require_subcommand(1);
  fs::path synth_out;
  int width = 128, height = 128, level = 128, period = 4, lo = 0, hi = 255;
  int fbm_size = 257;
  double hurst = 0.5;
  std::uint64_t seed = 0;

  auto* s_const = synth->add_subcommand("constant", "Uniform gray level");
  s_const->add_option("--width", width);
  s_const->add_option("--height", height);
  s_const->add_option("--level", level, "Gray level in [0,255]");
  s_const->add_option("--out", synth_out, "Output PGM")->required();
  s_const->callback([&] {
    mfs::save_pgm(synth_out, mfs::constant_image(width, height, level));
  });

  auto* s_board = synth->add_subcommand("checkerboard", "Two-level blocks");
  s_board->add_option("--width", width);
  s_board->add_option("--height", height);
  s_board->add_option("--period", period, "Block side in pixels");
  s_board->add_option("--lo", lo);
  s_board->add_option("--hi", hi);
  s_board->add_option("--out", synth_out, "Output PGM")->required();
  s_board->callback([&] {
    mfs::save_pgm(synth_out,
                  mfs::checkerboard(width, height, period, lo, hi));
  });

  auto* s_fbm = synth->add_subcommand(
      "fbm", "Seeded midpoint-displacement fractal surface");
  s_fbm->add_option("--size", fbm_size, "Side length, must be 2^k + 1");
  s_fbm->add_option("--hurst", hurst, "Roughness exponent in (0,1)");
  s_fbm->add_option("--seed", seed, "64-bit generator seed");
  s_fbm->add_option("--out", synth_out, "Output PGM")->required();
  s_fbm->callback([&] {
    mfs::save_pgm(synth_out, mfs::fbm_surface({fbm_size, hurst, seed}));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "mfs: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
