#include "mfs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mfs {

GrayImage constant_image(int width, int height, int level) {
  if (level < 0 || level > 255) {
    throw Error(Errc::level_out_of_range,
                "level " + std::to_string(level));
  }
  GrayImage img;
  img.width = width;
  img.height = height;
  img.levels.assign(static_cast<std::size_t>(width) * height,
                    static_cast<std::uint8_t>(level));
  return img;
}

GrayImage checkerboard(int width, int height, int period, int lo, int hi) {
  if (period < 1) {
    throw Error(Errc::bad_period, "period " + std::to_string(period));
  }
  if (lo < 0 || hi > 255 || lo >= hi) {
    throw Error(Errc::bad_levels,
                "lo " + std::to_string(lo) + ", hi " + std::to_string(hi));
  }
  GrayImage img;
  img.width = width;
  img.height = height;
  img.levels.resize(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool even = ((x / period + y / period) % 2) == 0;
      img.set(x, y, static_cast<std::uint8_t>(even ? hi : lo));
    }
  }
  return img;
}

GrayImage fbm_surface(const FbmSpec& spec) {
  const int size = spec.size;
  const int span = size - 1;
  if (span < 8 || (span & (span - 1)) != 0) {
    throw Error(Errc::bad_size,
                "size " + std::to_string(size) + " is not 2^k + 1, k >= 3");
  }
  if (!(spec.hurst > 0.0) || !(spec.hurst < 1.0)) {
    throw Error(Errc::bad_hurst, "hurst " + std::to_string(spec.hurst));
  }

  std::vector<double> field(static_cast<std::size_t>(size) * size, 0.0);
  auto at = [&](int x, int y) -> double& {
    return field[static_cast<std::size_t>(y) * size + x];
  };

  SplitMix64 rng(spec.seed);
  const double decay = std::pow(2.0, -spec.hurst);

  at(0, 0) = rng.next_symmetric();
  at(span, 0) = rng.next_symmetric();
  at(0, span) = rng.next_symmetric();
  at(span, span) = rng.next_symmetric();

  double amp = 1.0;
  for (int step = span; step > 1; step /= 2) {
    const int half = step / 2;
    amp *= decay;

    // diamond pass: centers of the current squares
    for (int y = half; y < size; y += step) {
      for (int x = half; x < size; x += step) {
        const double avg = (at(x - half, y - half) + at(x + half, y - half) +
                            at(x - half, y + half) + at(x + half, y + half)) /
                           4.0;
        at(x, y) = avg + amp * rng.next_symmetric();
      }
    }

    // square pass: edge midpoints; border points average their 3 in-grid
    // neighbors
    for (int y = 0; y < size; y += half) {
      const int x_start = ((y / half) % 2 == 0) ? half : 0;
      for (int x = x_start; x < size; x += step) {
        double sum = 0.0;
        int count = 0;
        if (x - half >= 0) { sum += at(x - half, y); ++count; }
        if (x + half < size) { sum += at(x + half, y); ++count; }
        if (y - half >= 0) { sum += at(x, y - half); ++count; }
        if (y + half < size) { sum += at(x, y + half); ++count; }
        at(x, y) = sum / count + amp * rng.next_symmetric();
      }
    }
  }

  const auto [lo_it, hi_it] = std::minmax_element(field.begin(), field.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;

  GrayImage img;
  img.width = size;
  img.height = size;
  img.levels.resize(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double unit = range > 0.0 ? (field[i] - lo) / range : 0.0;
    img.levels[i] = static_cast<std::uint8_t>(std::lround(unit * 255.0));
  }
  return img;
}

}  // namespace mfs
