#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mfs/gray_image.hpp"

namespace mfs {

/// Paired covering surfaces around the gray-level height field after
/// `delta` dilation steps. At delta = 0 both surfaces equal the image;
/// every step pushes the upper surface up and the lower surface down by
/// at least one gray unit, so upper - lower >= 2*delta pointwise.
struct BlanketState {
  int width = 0;
  int height = 0;
  int delta = 0;
  std::vector<std::int32_t> upper;  // row-major, size == width * height
  std::vector<std::int32_t> lower;

  bool operator==(const BlanketState&) const = default;
};

/// Selects how a volume sequence is turned into per-scale areas.
enum class AreaVariant {
  quotient,    // A(delta) = Vol(delta) / (2*delta)
  difference,  // A(delta) = (Vol(delta) - Vol(delta-1)) / 2
};

const char* to_string(AreaVariant variant);
std::optional<AreaVariant> area_variant_from_string(std::string_view name);

/// Surface area measured at scales delta = 1..delta_max. values[i] holds
/// A(i+1); every entry is >= the image pixel count.
struct AreaCurve {
  std::vector<double> values;
  int delta_max = 0;
  AreaVariant variant = AreaVariant::difference;

  double at_delta(int delta) const { return values[delta - 1]; }

  bool operator==(const AreaCurve&) const = default;
};

inline constexpr int kDefaultDeltaMax = 10;

BlanketState init_blanket(const GrayImage& img);

/// One dilation step: at each pixel the new upper value is
/// max(old upper + 1, old upper over the in-image 4-neighbors), and the
/// new lower value is min(old lower - 1, old lower over the in-image
/// 4-neighbors). Out-of-image neighbors are excluded, not padded.
BlanketState dilate_step(const BlanketState& state);

/// Sum of (upper - lower) over all pixels. Exact integer arithmetic.
std::int64_t blanket_volume(const BlanketState& state);

AreaCurve area_curve(const GrayImage& img, int delta_max,
                     AreaVariant variant);

/// Closed-form reference for the iterated surfaces, computed by direct
/// enumeration of the city-block ball of radius delta around each pixel:
///   upper(x,y) = max over d((x,y),(m,n)) <= delta of g(m,n) + delta - d
///   lower(x,y) = min over d((x,y),(m,n)) <= delta of g(m,n) - delta + d
/// No iteration is involved; this is the test oracle for dilate_step.
BlanketState oracle_surfaces(const GrayImage& img, int delta);

}  // namespace mfs
