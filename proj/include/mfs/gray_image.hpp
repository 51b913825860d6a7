#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mfs/error.hpp"

namespace mfs {

/// 8-bit grayscale image, row-major. The image is treated throughout the
/// library as a height field g(x,y) over the pixel grid.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> levels;  // size == width * height

  std::uint8_t at(int x, int y) const {
    return levels[static_cast<std::size_t>(y) * width + x];
  }
  void set(int x, int y, std::uint8_t v) {
    levels[static_cast<std::size_t>(y) * width + x] = v;
  }
  std::int64_t pixel_count() const {
    return static_cast<std::int64_t>(width) * height;
  }

  bool operator==(const GrayImage&) const = default;
};

/// Square sliding-window geometry for cutting a large image into tiles.
struct TileSpec {
  int tile_size = 128;  // pixels per side, >= 8
  int stride = 128;     // offset between consecutive tiles, >= 1
};

struct GrayStats {
  double mean = 0.0;
  double std = 0.0;  // population form (divide by N)
};

enum class PgmFormat { ascii, binary };  // P2 / P5

/// Reads a PGM file (magic "P2" ASCII or "P5" binary), maxval <= 255.
/// Header tokens are whitespace-separated; '#' starts a comment line.
/// In P5 files exactly one whitespace byte separates the maxval from the
/// raster.
GrayImage load_pgm(const std::filesystem::path& path);

void save_pgm(const std::filesystem::path& path, const GrayImage& img,
              PgmFormat format = PgmFormat::binary);

/// All full tiles at offsets (i*stride, j*stride) that fit entirely inside
/// the image, in row-major offset order. Partial tiles at the right/bottom
/// edges are discarded.
std::vector<GrayImage> extract_tiles(const GrayImage& img,
                                     const TileSpec& spec);

GrayStats gray_stats(const GrayImage& img);

}  // namespace mfs
