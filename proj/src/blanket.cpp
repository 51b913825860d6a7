#include "mfs/blanket.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace mfs {

const char* to_string(AreaVariant variant) {
  return variant == AreaVariant::quotient ? "quotient" : "difference";
}

std::optional<AreaVariant> area_variant_from_string(std::string_view name) {
  if (name == "quotient") return AreaVariant::quotient;
  if (name == "difference") return AreaVariant::difference;
  return std::nullopt;
}

BlanketState init_blanket(const GrayImage& img) {
  BlanketState state;
  state.width = img.width;
  state.height = img.height;
  state.delta = 0;
  state.upper.assign(img.levels.begin(), img.levels.end());
  state.lower = state.upper;
  return state;
}

BlanketState dilate_step(const BlanketState& state) {
  const int w = state.width;
  const int h = state.height;
  BlanketState next;
  next.width = w;
  next.height = h;
  next.delta = state.delta + 1;
  next.upper.resize(state.upper.size());
  next.lower.resize(state.lower.size());

  const std::int32_t* up = state.upper.data();
  const std::int32_t* lo = state.lower.data();
  std::int32_t* nu = next.upper.data();
  std::int32_t* nl = next.lower.data();

  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    const std::int32_t* u_c = up + row;
    const std::int32_t* u_n = y > 0 ? u_c - w : nullptr;
    const std::int32_t* u_s = y + 1 < h ? u_c + w : nullptr;
    const std::int32_t* l_c = lo + row;
    const std::int32_t* l_n = y > 0 ? l_c - w : nullptr;
    const std::int32_t* l_s = y + 1 < h ? l_c + w : nullptr;
    std::int32_t* out_u = nu + row;
    std::int32_t* out_l = nl + row;

    for (int x = 0; x < w; ++x) {
      std::int32_t u = u_c[x] + 1;
      if (x > 0 && u_c[x - 1] > u) u = u_c[x - 1];
      if (x + 1 < w && u_c[x + 1] > u) u = u_c[x + 1];
      if (u_n && u_n[x] > u) u = u_n[x];
      if (u_s && u_s[x] > u) u = u_s[x];
      out_u[x] = u;

      std::int32_t b = l_c[x] - 1;
      if (x > 0 && l_c[x - 1] < b) b = l_c[x - 1];
      if (x + 1 < w && l_c[x + 1] < b) b = l_c[x + 1];
      if (l_n && l_n[x] < b) b = l_n[x];
      if (l_s && l_s[x] < b) b = l_s[x];
      out_l[x] = b;
    }
  }
  return next;
}

std::int64_t blanket_volume(const BlanketState& state) {
  std::int64_t vol = 0;
  const std::size_t n = state.upper.size();
  for (std::size_t i = 0; i < n; ++i) {
    vol += static_cast<std::int64_t>(state.upper[i]) - state.lower[i];
  }
  return vol;
}

AreaCurve area_curve(const GrayImage& img, int delta_max,
                     AreaVariant variant) {
  if (delta_max < 1) {
    throw Error(Errc::invalid_delta_max,
                "delta_max " + std::to_string(delta_max) + " is below 1");
  }
  AreaCurve curve;
  curve.delta_max = delta_max;
  curve.variant = variant;
  curve.values.reserve(static_cast<std::size_t>(delta_max));

  BlanketState state = init_blanket(img);
  std::int64_t prev_vol = 0;  // Vol(0) = 0
  for (int delta = 1; delta <= delta_max; ++delta) {
    state = dilate_step(state);
    const std::int64_t vol = blanket_volume(state);
    const double area =
        variant == AreaVariant::quotient
            ? static_cast<double>(vol) / (2.0 * delta)
            : static_cast<double>(vol - prev_vol) / 2.0;
    curve.values.push_back(area);
    prev_vol = vol;
  }
  return curve;
}

BlanketState oracle_surfaces(const GrayImage& img, int delta) {
  const int w = img.width;
  const int h = img.height;
  BlanketState state;
  state.width = w;
  state.height = h;
  state.delta = delta;
  state.upper.resize(img.levels.size());
  state.lower.resize(img.levels.size());

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int32_t best_u = img.at(x, y);  // d = 0 term
      std::int32_t best_l = best_u;
      for (int dy = -delta; dy <= delta; ++dy) {
        const int ny = y + dy;
        if (ny < 0 || ny >= h) continue;
        const int reach = delta - std::abs(dy);
        for (int dx = -reach; dx <= reach; ++dx) {
          const int nx = x + dx;
          if (nx < 0 || nx >= w) continue;
          const int d = std::abs(dx) + std::abs(dy);
          const std::int32_t g = img.at(nx, ny);
          best_u = std::max(best_u, g + delta - d);
          best_l = std::min(best_l, g - delta + d);
        }
      }
      state.upper[static_cast<std::size_t>(y) * w + x] = best_u;
      state.lower[static_cast<std::size_t>(y) * w + x] = best_l;
    }
  }
  return state;
}

}  // namespace mfs
