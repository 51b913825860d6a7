#include "mfs/gray_image.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

namespace mfs {

namespace {

// Next whitespace-separated token, treating '#'..end-of-line as a comment.
bool next_token(std::istream& in, std::string& tok) {
  tok.clear();
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) {
      tok.push_back(c);
      break;
    }
  }
  if (tok.empty()) return false;
  while (in.get(c)) {
    if (std::isspace(static_cast<unsigned char>(c))) break;
    if (c == '#') {  // token ends at a comment too
      in.unget();
      break;
    }
    tok.push_back(c);
  }
  return true;
}

int parse_header_int(std::istream& in, const char* what) {
  std::string tok;
  if (!next_token(in, tok)) {
    throw Error(Errc::malformed_header, std::string("missing ") + what);
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(Errc::malformed_header,
                std::string("bad ") + what + " token '" + tok + "'");
  }
  return value;
}

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::missing_file, "cannot open '" + path.string() + "'");
  }

  std::string magic;
  if (!next_token(in, magic)) {
    throw Error(Errc::malformed_header, "empty file '" + path.string() + "'");
  }
  if (magic != "P2" && magic != "P5") {
    throw Error(Errc::bad_magic,
                "'" + path.string() + "' starts with '" + magic +
                    "', expected P2 or P5");
  }

  const int width = parse_header_int(in, "width");
  const int height = parse_header_int(in, "height");
  const int maxval = parse_header_int(in, "maxval");
  if (width < 1 || height < 1) {
    throw Error(Errc::malformed_header, "nonpositive dimensions in '" +
                                            path.string() + "'");
  }
  if (maxval < 1) {
    throw Error(Errc::malformed_header,
                "nonpositive maxval in '" + path.string() + "'");
  }
  if (maxval > 255) {
    throw Error(Errc::maxval_unsupported,
                "maxval " + std::to_string(maxval) + " in '" + path.string() +
                    "' exceeds 255");
  }

  GrayImage img;
  img.width = width;
  img.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  img.levels.resize(n);

  if (magic == "P2") {
    std::string tok;
    for (std::size_t i = 0; i < n; ++i) {
      if (!next_token(in, tok)) {
        throw Error(Errc::truncated_data,
                    "'" + path.string() + "' has " + std::to_string(i) +
                        " of " + std::to_string(n) + " samples");
      }
      int v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0 ||
          v > maxval) {
        throw Error(Errc::bad_sample,
                    "sample '" + tok + "' in '" + path.string() + "'");
      }
      img.levels[i] = static_cast<std::uint8_t>(v);
    }
  } else {
    // Exactly one whitespace byte between maxval and the raster; next_token
    // has already consumed it while looking for the end of the maxval token.
    in.read(reinterpret_cast<char*>(img.levels.data()),
            static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n)) {
      throw Error(Errc::truncated_data,
                  "'" + path.string() + "' has " +
                      std::to_string(in.gcount()) + " of " +
                      std::to_string(n) + " raster bytes");
    }
    if (maxval < 255) {
      for (std::uint8_t v : img.levels) {
        if (v > maxval) {
          throw Error(Errc::bad_sample,
                      "raster byte " + std::to_string(v) + " in '" +
                          path.string() + "' exceeds maxval");
        }
      }
    }
  }
  return img;
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img,
              PgmFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_error, "cannot open '" + path.string() +
                                    "' for writing");
  }
  if (format == PgmFormat::binary) {
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.levels.data()),
              static_cast<std::streamsize>(img.levels.size()));
  } else {
    out << "P2\n" << img.width << " " << img.height << "\n255\n";
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        out << static_cast<int>(img.at(x, y))
            << (x + 1 == img.width ? '\n' : ' ');
      }
    }
  }
  if (!out) {
    throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
  }
}

std::vector<GrayImage> extract_tiles(const GrayImage& img,
                                     const TileSpec& spec) {
  if (spec.tile_size < 8 || spec.stride < 1) {
    throw Error(Errc::bad_tile_spec,
                "tile_size must be >= 8 and stride >= 1");
  }
  if (img.width < spec.tile_size || img.height < spec.tile_size) {
    throw Error(Errc::image_too_small,
                std::to_string(img.width) + "x" + std::to_string(img.height) +
                    " image cannot hold a " + std::to_string(spec.tile_size) +
                    "-pixel tile");
  }
  const int t = spec.tile_size;
  std::vector<GrayImage> tiles;
  for (int oy = 0; oy + t <= img.height; oy += spec.stride) {
    for (int ox = 0; ox + t <= img.width; ox += spec.stride) {
      GrayImage tile;
      tile.width = t;
      tile.height = t;
      tile.levels.resize(static_cast<std::size_t>(t) * t);
      for (int y = 0; y < t; ++y) {
        const std::uint8_t* src =
            img.levels.data() +
            static_cast<std::size_t>(oy + y) * img.width + ox;
        std::copy(src, src + t,
                  tile.levels.begin() + static_cast<std::size_t>(y) * t);
      }
      tiles.push_back(std::move(tile));
    }
  }
  return tiles;
}

GrayStats gray_stats(const GrayImage& img) {
  const std::int64_t n = img.pixel_count();
  std::int64_t sum = 0;
  for (std::uint8_t v : img.levels) sum += v;
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  double sq = 0.0;
  for (std::uint8_t v : img.levels) {
    const double d = static_cast<double>(v) - mean;
    sq += d * d;
  }
  return GrayStats{mean, std::sqrt(sq / static_cast<double>(n))};
}

}  // namespace mfs
