#pragma once

#include "mfs/blanket.hpp"

namespace mfs {

/// Multiresolution dimension estimates F(delta) for delta = 2..delta_max.
/// values[i] holds F(i+2). A flat surface sits at 2 everywhere; rough
/// surfaces approach 3.
struct FDCurve {
  std::vector<double> values;
  int delta_max = 0;
  AreaVariant source_variant = AreaVariant::difference;

  double at_delta(int delta) const { return values[delta - 2]; }

  bool operator==(const FDCurve&) const = default;
};

/// Log-log slope of the area curve between scale 1 and each scale
/// delta >= 2, all logarithms base 2:
///   F(delta) = 2 + (log2 A(1) - log2 A(delta)) / log2 delta
FDCurve fd_curve(const AreaCurve& area);

/// Weighted squared-difference functional between two curves over their
/// common scale range:
///   D = sum over delta of (a(delta) - b(delta))^2 * log2((delta + 1/2) /
///       (delta - 1/2))
/// Nonnegative, symmetric, zero exactly for element-wise equal curves.
/// The weight shrinks as delta grows, so fine scales dominate. Terms
/// accumulate in ascending delta order, which keeps the sum deterministic.
double fd_distance(const FDCurve& a, const FDCurve& b);

}  // namespace mfs
