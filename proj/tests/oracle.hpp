#pragma once

// Brute-force reference filters for tests. Written directly from the filter
// definitions with no calls into the library's kernel code: every neighbor in
// the full (2r+1)^2 window is visited, out-of-image and invalid neighbors are
// skipped, and the normalized weighted mean is returned.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "depthfill/image.hpp"

namespace oracle {

struct Params {
  double sigma_s, sigma_c, sigma_d, sigma_x, sigma_y;
  int radius;
};

enum class Spatial { Isotropic, Directional };

struct Result {
  double value = 0.0;
  double weight_sum = 0.0;
  int contributors = 0;
  double min_depth = 0.0;
  double max_depth = 0.0;
};

inline double rgb_distance(depthfill::Rgb a, depthfill::Rgb b) {
  const double r = double(a.r) - double(b.r);
  const double g = double(a.g) - double(b.g);
  const double bl = double(a.b) - double(b.b);
  return std::sqrt(r * r + g * g + bl * bl);
}

/// valid == nullptr means "non-zero depth is valid". use_depth_range adds the
/// depth similarity factor against the center's depth.
inline Result brute_force(int px, int py, const depthfill::DepthField& depth,
                          const depthfill::ColorImage& guide, const depthfill::BinaryMask* valid,
                          const Params& prm, Spatial spatial, double theta, bool use_depth_range) {
  Result res;
  double num = 0.0;
  bool first = true;
  for (int dy = -prm.radius; dy <= prm.radius; ++dy) {
    for (int dx = -prm.radius; dx <= prm.radius; ++dx) {
      const int qx = px + dx;
      const int qy = py + dy;
      if (qx < 0 || qy < 0 || qx >= depth.width() || qy >= depth.height()) continue;
      const bool ok = valid ? (*valid)(qx, qy) != 0 : depth(qx, qy) != 0.0;
      if (!ok) continue;
      double ws;
      if (spatial == Spatial::Isotropic) {
        ws = std::exp(-(dx * dx + dy * dy) / (2.0 * prm.sigma_s * prm.sigma_s));
      } else {
        const double u = dx * std::cos(theta) + dy * std::sin(theta);
        const double v = -dx * std::sin(theta) + dy * std::cos(theta);
        ws = std::exp(-(u * u) / (2.0 * prm.sigma_x * prm.sigma_x) -
                      (v * v) / (2.0 * prm.sigma_y * prm.sigma_y));
      }
      const double dc = rgb_distance(guide(px, py), guide(qx, qy));
      double w = ws * std::exp(-(dc * dc) / (2.0 * prm.sigma_c * prm.sigma_c));
      if (use_depth_range) {
        const double dd = depth(px, py) - depth(qx, qy);
        w *= std::exp(-(dd * dd) / (2.0 * prm.sigma_d * prm.sigma_d));
      }
      if (w <= 0.0) continue;
      const double d = depth(qx, qy);
      num += w * d;
      res.weight_sum += w;
      ++res.contributors;
      if (first || d < res.min_depth) res.min_depth = d;
      if (first || d > res.max_depth) res.max_depth = d;
      first = false;
    }
  }
  if (res.contributors > 0) res.value = num / res.weight_sum;
  return res;
}

inline double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

/// Random depth field with roughly `hole_fraction` holes and a guide whose
/// channels are drawn independently from 128 +/- color_spread.
struct Instance {
  depthfill::DepthField depth;
  depthfill::ColorImage guide;
};

inline Instance random_instance(std::mt19937_64& rng, int w, int h, double hole_fraction,
                                int color_spread = 40) {
  std::uniform_real_distribution<double> depth_dist(500.0, 4000.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> color_dist(128 - color_spread, 127 + color_spread);
  Instance inst{depthfill::DepthField(w, h), depthfill::ColorImage(w, h)};
  for (std::size_t i = 0; i < inst.depth.size(); ++i) {
    inst.depth[i] = unit(rng) < hole_fraction ? 0.0 : std::round(depth_dist(rng));
    const auto channel = [&] { return static_cast<std::uint8_t>(color_dist(rng)); };
    inst.guide[i] = depthfill::Rgb{channel(), channel(), channel()};
  }
  return inst;
}

}  // namespace oracle
