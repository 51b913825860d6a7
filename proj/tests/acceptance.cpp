// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances and runtime budgets are pinned in the checks themselves.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mfs/classifier.hpp"
#include "mfs/synth.hpp"
#include "test_util.hpp"

using namespace mfs;

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {  // keep the first failure's context
      ok = false;
      detail << message;
    }
  }
};

GrayImage random_image(int width, int height, std::uint64_t seed) {
  SplitMix64 rng(seed);
  GrayImage img;
  img.width = width;
  img.height = height;
  img.levels.resize(static_cast<std::size_t>(width) * height);
  for (auto& v : img.levels) v = static_cast<std::uint8_t>(rng.next() % 256);
  return img;
}

GrayImage noisy_constant(int size, int level, int amplitude,
                         std::uint64_t seed) {
  SplitMix64 rng(seed);
  GrayImage img = constant_image(size, size, level);
  for (auto& v : img.levels) {
    const int noise =
        static_cast<int>(rng.next() % (2 * amplitude + 1)) - amplitude;
    v = static_cast<std::uint8_t>(
        std::clamp(static_cast<int>(v) + noise, 0, 255));
  }
  return img;
}

GrayImage crop(const GrayImage& img, int ox, int oy, int size) {
  GrayImage out;
  out.width = out.height = size;
  out.levels.resize(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) out.set(x, y, img.at(ox + x, oy + y));
  }
  return out;
}

GrayImage transpose(const GrayImage& img) {
  GrayImage out;
  out.width = img.height;
  out.height = img.width;
  out.levels.resize(img.levels.size());
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) out.set(y, x, img.at(x, y));
  }
  return out;
}

GrayImage flip_x(const GrayImage& img) {
  GrayImage out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out.set(img.width - 1 - x, y, img.at(x, y));
    }
  }
  return out;
}

GrayImage flip_y(const GrayImage& img) {
  GrayImage out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out.set(x, img.height - 1 - y, img.at(x, y));
    }
  }
  return out;
}

std::int64_t volume_after(const GrayImage& img, int delta) {
  BlanketState state = init_blanket(img);
  for (int i = 0; i < delta; ++i) state = dilate_step(state);
  return blanket_volume(state);
}

// --------------------------------------------------------------------------
// criteria

void oracle_equivalence(Checker& c) {
  const auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GrayImage img = random_image(16, 16, 7000 + seed);
    BlanketState state = init_blanket(img);
    for (int delta = 1; delta <= 8; ++delta) {
      state = dilate_step(state);
      const BlanketState oracle = oracle_surfaces(img, delta);
      c.require(state.upper == oracle.upper && state.lower == oracle.lower,
                "surfaces diverge at seed " + std::to_string(seed) +
                    ", delta " + std::to_string(delta));
      if (!c.ok) return;
    }
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  c.require(seconds <= 5.0,
            "runtime " + std::to_string(seconds) + " s exceeds 5 s");
}

void flat_surface_dimension(Checker& c) {
  for (int size : {8, 64, 128}) {
    const GrayImage img = constant_image(size, size, 120);
    for (AreaVariant variant :
         {AreaVariant::quotient, AreaVariant::difference}) {
      const FDCurve fd = fd_curve(area_curve(img, kDefaultDeltaMax, variant));
      for (double v : fd.values) {
        c.require(std::abs(v - 2.0) <= 1e-12,
                  "size " + std::to_string(size) + " gives F=" +
                      std::to_string(v));
      }
    }
  }
}

void impulse_micro_case(Checker& c) {
  const GrayImage impulse = test_util::impulse3x3();

  // Establish the oracle first, then hold the iteration to it.
  const BlanketState oracle = oracle_surfaces(impulse, 1);
  std::int64_t oracle_vol = 0;
  for (std::size_t i = 0; i < oracle.upper.size(); ++i) {
    oracle_vol += oracle.upper[i] - oracle.lower[i];
  }
  c.require(oracle_vol == 63,
            "oracle volume " + std::to_string(oracle_vol) + " != 63");

  BlanketState state = dilate_step(init_blanket(impulse));
  c.require(state.upper == oracle.upper && state.lower == oracle.lower,
            "iterated surfaces disagree with the oracle");
  c.require(blanket_volume(state) == 63,
            "Vol_1 = " + std::to_string(blanket_volume(state)));

  for (AreaVariant variant :
       {AreaVariant::quotient, AreaVariant::difference}) {
    const AreaCurve curve = area_curve(impulse, 1, variant);
    c.require(curve.values[0] == 31.5,
              std::string(to_string(variant)) + " A_1 = " +
                  std::to_string(curve.values[0]));
  }
}

void power_law_inversion(Checker& c) {
  for (double target : {2.0, 2.3, 2.7, 3.0}) {
    for (double beta : {1.0, 100.0}) {
      AreaCurve curve;
      curve.delta_max = 10;
      curve.variant = AreaVariant::difference;
      for (int d = 1; d <= 10; ++d) {
        curve.values.push_back(beta * std::pow(d, 2.0 - target));
      }
      const FDCurve fd = fd_curve(curve);
      for (double v : fd.values) {
        c.require(std::abs(v - target) <= 1e-12,
                  "F " + std::to_string(target) + ", beta " +
                      std::to_string(beta) + " recovered as " +
                      std::to_string(v));
      }
    }
  }
}

void metric_properties(Checker& c) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = 2 + static_cast<int>(rng.next() % 8);
    FDCurve a, b;
    a.delta_max = b.delta_max = len + 1;
    for (int i = 0; i < len; ++i) {
      a.values.push_back(2.0 + rng.next_unit());
      b.values.push_back(2.0 + rng.next_unit());
    }
    const double dab = fd_distance(a, b);
    c.require(dab >= 0.0, "negative distance");
    c.require(dab == fd_distance(b, a), "asymmetric distance");
    c.require(fd_distance(a, a) == 0.0, "nonzero self-distance");
    if (a.values != b.values) {
      c.require(dab > 0.0, "distinct curves at distance zero");
    }
    if (!c.ok) return;
  }

  FDCurve a, b;
  a.delta_max = b.delta_max = 3;
  a.values = {2.0, 2.0};
  b.values = {2.5, 2.0};
  const double expected = 0.25 * std::log2(5.0 / 3.0);
  c.require(std::abs(fd_distance(a, b) - expected) <= 1e-9,
            "single-term value " + std::to_string(fd_distance(a, b)));
}

void fbm_monotonicity(Checker& c) {
  const auto start = Clock::now();
  double previous = 10.0;
  for (double hurst : {0.2, 0.5, 0.8}) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const GrayImage img = fbm_surface({257, hurst, 4000 + seed});
      const FDCurve fd =
          fd_curve(area_curve(img, 6, AreaVariant::difference));
      double curve_mean = 0.0;
      for (double v : fd.values) curve_mean += v;
      sum += curve_mean / static_cast<double>(fd.values.size());
    }
    const double mean = sum / 10.0;
    c.require(mean > 2.0 && mean < 3.0,
              "H " + std::to_string(hurst) + " mean " + std::to_string(mean) +
                  " outside (2,3)");
    c.require(mean < previous,
              "mean not decreasing at H " + std::to_string(hurst));
    previous = mean;
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  c.require(seconds <= 60.0,
            "runtime " + std::to_string(seconds) + " s exceeds 60 s");
}

void synthetic_classification(Checker& c) {
  const int tile = 128;
  const auto noise_tiles = [&](std::uint64_t seed0) {
    std::vector<GrayImage> tiles;
    for (int i = 0; i < 4; ++i) {
      tiles.push_back(noisy_constant(tile, 128, 3, seed0 + i));
    }
    return tiles;
  };
  const auto board_tiles = [&](int phase0) {
    const GrayImage big = checkerboard(2 * tile + 8, 2 * tile + 8, 4, 0, 255);
    std::vector<GrayImage> tiles;
    for (int i = 0; i < 4; ++i) {
      const int phase = phase0 + i;
      tiles.push_back(crop(big, phase + (i % 2) * tile,
                           phase + (i / 2) * tile, tile));
    }
    return tiles;
  };
  const auto fbm_tiles = [&](std::uint64_t seed) {
    return extract_tiles(fbm_surface({257, 0.3, seed}), {tile, tile});
  };

  const std::vector<LabeledTiles> training = {
      {"smooth", noise_tiles(500)},
      {"board", board_tiles(0)},
      {"rough", fbm_tiles(600)}};
  const std::vector<LabeledTiles> holdout = {
      {"smooth", noise_tiles(510)},
      {"board", board_tiles(4)},
      {"rough", fbm_tiles(601)}};

  const ClassifierModel model = train_model(
      training, {kDefaultDeltaMax, AreaVariant::difference, tile});

  const EvalReport self = evaluate(model, training);
  c.require(self.accuracy == 1.0,
            "training reclassification accuracy " +
                std::to_string(self.accuracy));

  const EvalReport held = evaluate(model, holdout);
  c.require(held.accuracy >= 0.9,
            "holdout accuracy " + std::to_string(held.accuracy));
  for (const EvalReport* report : {&self, &held}) {
    const ConfusionMatrix& m = report->matrix;
    for (std::size_t k = 0; k < m.cols.size(); ++k) {
      for (std::size_t r = 0; r < m.rows.size(); ++r) {
        if (r != k) {
          c.require(m.cell(k, k) < m.cell(r, k),
                    "diagonal cell " + m.cols[k] +
                        " is not its column minimum");
        }
      }
    }
  }
}

void invariance_suite(Checker& c) {
  const std::vector<GrayImage> images = {
      random_image(24, 16, 1), random_image(16, 24, 2),
      noisy_constant(16, 90, 20, 3),
      crop(fbm_surface({65, 0.4, 4}), 0, 0, 33)};

  for (const GrayImage& img : images) {
    // shift both members of a pair by the same offset
    GrayImage base = img;
    for (auto& v : base.levels) v = static_cast<std::uint8_t>(v % 200);
    GrayImage other = base;
    std::reverse(other.levels.begin(), other.levels.end());
    GrayImage base_up = base, other_up = other;
    for (auto& v : base_up.levels) v = static_cast<std::uint8_t>(v + 55);
    for (auto& v : other_up.levels) v = static_cast<std::uint8_t>(v + 55);

    for (AreaVariant variant :
         {AreaVariant::quotient, AreaVariant::difference}) {
      const AreaCurve area = area_curve(base, 8, variant);
      const AreaCurve area_shifted = area_curve(base_up, 8, variant);
      c.require(area.values == area_shifted.values,
                "gray shift changed the area curve");
      const FDCurve fd = fd_curve(area);
      c.require(fd == fd_curve(area_shifted),
                "gray shift changed the dimension curve");
      const double d = fd_distance(fd, fd_curve(area_curve(other, 8,
                                                           variant)));
      const double d_shifted = fd_distance(
          fd_curve(area_shifted),
          fd_curve(area_curve(other_up, 8, variant)));
      c.require(d == d_shifted, "gray shift changed a distance");
    }

    for (int delta : {1, 4, 8}) {
      const std::int64_t base_vol = volume_after(img, delta);
      c.require(volume_after(transpose(img), delta) == base_vol,
                "transpose changed the volume");
      c.require(volume_after(flip_x(img), delta) == base_vol,
                "horizontal flip changed the volume");
      c.require(volume_after(flip_y(img), delta) == base_vol,
                "vertical flip changed the volume");
    }

    const std::int64_t n = img.pixel_count();
    BlanketState state = init_blanket(img);
    std::int64_t prev = 0;
    for (int delta = 1; delta <= 8; ++delta) {
      state = dilate_step(state);
      const std::int64_t vol = blanket_volume(state);
      c.require(vol - prev >= 2 * n, "volume grew by less than 2N");
      prev = vol;
    }
  }
}

void performance_envelope(Checker& c) {
  const GrayImage img = random_image(512, 512, 9001);
  const auto start = Clock::now();
  const FDCurve fd =
      fd_curve(area_curve(img, kDefaultDeltaMax, AreaVariant::difference));
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  c.require(fd.values.size() == kDefaultDeltaMax - 1, "curve length wrong");
  c.require(seconds <= 1.0,
            "512x512 curve took " + std::to_string(seconds) + " s");
}

void round_trips(Checker& c) {
  test_util::TempDir dir;

  for (std::uint64_t seed : {1u, 2u}) {
    const GrayImage img = random_image(96, 64, 3000 + seed);
    save_pgm(dir.file("rt.pgm"), img, PgmFormat::binary);
    c.require(load_pgm(dir.file("rt.pgm")) == img, "P5 round trip changed pixels");
    save_pgm(dir.file("rt2.pgm"), img, PgmFormat::ascii);
    c.require(load_pgm(dir.file("rt2.pgm")) == img,
              "P2 round trip changed pixels");
  }

  const ClassifierModel model = train_model(
      {{"smooth", {noisy_constant(32, 100, 4, 11)}},
       {"board",
        {checkerboard(32, 32, 4, 0, 255), checkerboard(32, 32, 4, 5, 250)}}},
      {6, AreaVariant::difference, 32});
  save_model(dir.file("model.json"), model);
  const ClassifierModel loaded = load_model(dir.file("model.json"));
  c.require(model_to_json(loaded) == model_to_json(model),
            "model JSON is not stable across save/load");

  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const GrayImage probe = noisy_constant(32, 120, 40, seed);
    const auto a = classify_tile(probe, model);
    const auto b = classify_tile(probe, loaded);
    c.require(a.predicted == b.predicted && a.tie == b.tie,
              "loaded model predicts differently");
    for (std::size_t i = 0; i < a.distances.size(); ++i) {
      c.require(a.distances[i].second == b.distances[i].second,
                "loaded model distance differs");
    }
  }
}

}  // namespace

int main() {
  const std::vector<
      std::pair<std::string, std::function<void(Checker&)>>>
      criteria = {
          {"oracle equivalence: 100 random 16x16 images, delta <= 8, "
           "exact surface equality, <= 5 s",
           oracle_equivalence},
          {"flat-surface dimension: constant 8/64/128 squares give F = 2 "
           "within 1e-12 for delta in [2,10]",
           flat_surface_dimension},
          {"hand-derived micro-case: 3x3 impulse, Vol_1 = 63, A_1 = 31.5 "
           "under both variants, oracle-checked",
           impulse_micro_case},
          {"power-law inversion: F in {2.0,2.3,2.7,3.0}, beta in {1,100}, "
           "recovered within 1e-12",
           power_law_inversion},
          {"distance metric: 1000 random pairs nonnegative/symmetric/"
           "separating, single-term value within 1e-9",
           metric_properties},
          {"fbm monotonicity: 257x257, H in {0.2,0.5,0.8}, 10 seeds, "
           "strictly decreasing means in (2,3), <= 60 s",
           fbm_monotonicity},
          {"synthetic classification: 3 classes, training accuracy 100%, "
           "holdout >= 90%, diagonal minima",
           synthetic_classification},
          {"invariance suite: gray shift, transpose/flips, volume growth "
           ">= 2N",
           invariance_suite},
          {"performance envelope: 512x512, delta_max 10, area+dimension "
           "curve <= 1 s",
           performance_envelope},
          {"round trips: PGM write/read and model save/load are "
           "behavior-identical",
           round_trips},
      };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Checker checker;
    const auto start = Clock::now();
    fn(checker);
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (checker.ok) {
      std::printf("PASS (%6.2f s)  %s\n", seconds, name.c_str());
    } else {
      ++failures;
      std::printf("FAIL (%6.2f s)  %s\n                [%s]\n", seconds,
                  name.c_str(), checker.detail.str().c_str());
    }
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
