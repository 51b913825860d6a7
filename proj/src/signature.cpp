#include "mfs/signature.hpp"

#include <cmath>
#include <string>

namespace mfs {

FDCurve fd_curve(const AreaCurve& area) {
  if (area.delta_max < 2) {
    throw Error(Errc::curve_too_short,
                "need delta_max >= 2, got " + std::to_string(area.delta_max));
  }
  for (double a : area.values) {
    if (!(a > 0.0)) {
      throw Error(Errc::non_positive_area,
                  "area value " + std::to_string(a));
    }
  }

  FDCurve fd;
  fd.delta_max = area.delta_max;
  fd.source_variant = area.variant;
  fd.values.reserve(static_cast<std::size_t>(area.delta_max) - 1);

  const double log_a1 = std::log2(area.at_delta(1));
  for (int delta = 2; delta <= area.delta_max; ++delta) {
    const double slope =
        (log_a1 - std::log2(area.at_delta(delta))) / std::log2(delta);
    fd.values.push_back(2.0 + slope);
  }
  return fd;
}

double fd_distance(const FDCurve& a, const FDCurve& b) {
  if (a.delta_max != b.delta_max || a.values.size() != b.values.size()) {
    throw Error(Errc::curve_length_mismatch,
                std::to_string(a.delta_max) + " vs " +
                    std::to_string(b.delta_max));
  }
  if (a.source_variant != b.source_variant) {
    throw Error(Errc::variant_mismatch,
                std::string(to_string(a.source_variant)) + " vs " +
                    to_string(b.source_variant));
  }
  double sum = 0.0;
  for (int delta = 2; delta <= a.delta_max; ++delta) {
    const double diff = a.at_delta(delta) - b.at_delta(delta);
    const double weight = std::log2((delta + 0.5) / (delta - 0.5));
    sum += diff * diff * weight;
  }
  return sum;
}

}  // namespace mfs
