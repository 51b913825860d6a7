#pragma once

#include <cstdint>

#include "mfs/gray_image.hpp"

namespace mfs {

/// SplitMix64: the published 64-bit shift-multiply generator (Steele,
/// Lea & Flood). Implemented in-repo so every generated image is
/// reproducible bit-for-bit across platforms and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), from the top 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

 private:
  std::uint64_t state_;
};

/// Parameters for a midpoint-displacement fractional Brownian surface.
/// The surface's roughness is controlled by the Hurst exponent: lower
/// hurst means rougher, with nominal surface dimension 3 - hurst.
struct FbmSpec {
  int size = 257;             // 2^k + 1 for some k >= 3
  double hurst = 0.5;         // in (0, 1)
  std::uint64_t seed = 0;
};

GrayImage constant_image(int width, int height, int level);

/// pixel(x,y) = hi when floor(x/period) + floor(y/period) is even, else lo.
GrayImage checkerboard(int width, int height, int period, int lo, int hi);

/// Diamond-square midpoint displacement driven by SplitMix64(spec.seed),
/// visiting lattice points in a fixed row-major order per subdivision
/// level. The displacement amplitude is multiplied by 2^(-hurst) at each
/// subdivision. The final field is affinely rescaled to [0, 255] and
/// rounded, so the output always attains both 0 and 255.
GrayImage fbm_surface(const FbmSpec& spec);

}  // namespace mfs
