#include "depthfill/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "depthfill/parallel.hpp"

namespace depthfill {
namespace {

class Accumulator {
 public:
  void add(double depth, double weight) noexcept {
    if (!(weight > 0.0)) return;
    num_ += weight * depth;
    den_ += weight;
    ++count_;
    lo_ = std::min(lo_, depth);
    hi_ = std::max(hi_, depth);
  }

  // The clamp only absorbs last-ulp rounding of num/den.
  FilterOutcome finish() const noexcept {
    if (count_ == 0) return {};
    return {std::clamp(num_ / den_, lo_, hi_), den_, count_};
  }

 private:
  double num_ = 0.0;
  double den_ = 0.0;
  int count_ = 0;
  double lo_ = std::numeric_limits<double>::infinity();
  double hi_ = -std::numeric_limits<double>::infinity();
};

struct Window {
  int x0, x1, y0, y1;
};

Window clamp_window(Pixel p, int radius, int width, int height) {
  return {std::max(0, p.x - radius), std::min(width - 1, p.x + radius), std::max(0, p.y - radius),
          std::min(height - 1, p.y + radius)};
}

void check_inputs(Pixel p, const DepthField& depth, const ColorImage& guide, const char* who) {
  require_same_shape(depth, guide, who);
  if (!depth.contains(p.x, p.y)) {
    throw ContractViolation(std::string(who) + ": pixel (" + std::to_string(p.x) + "," +
                            std::to_string(p.y) + ") outside the image");
  }
}

void check_non_hole_center(Pixel p, const DepthField& depth, const ColorImage& guide,
                           const char* who) {
  check_inputs(p, depth, guide, who);
  if (is_hole(depth.at(p))) {
    throw ContractViolation(std::string(who) + ": pixel (" + std::to_string(p.x) + "," +
                            std::to_string(p.y) + ") is a hole");
  }
}

void check_hole_center(Pixel p, const DepthField& depth, const BinaryMask& valid,
                       const ColorImage& guide, const char* who) {
  check_inputs(p, depth, guide, who);
  require_same_shape(depth, valid, who);
  if (valid.at(p)) {
    throw ContractViolation(std::string(who) + ": pixel (" + std::to_string(p.x) + "," +
                            std::to_string(p.y) + ") already holds valid depth");
  }
}

}  // namespace

FilterOutcome jbf_pixel(Pixel p, const DepthField& depth, const ColorImage& guide,
                        const KernelParams& params) {
  check_non_hole_center(p, depth, guide, "jbf_pixel");
  const Window win = clamp_window(p, params.window_radius, depth.width(), depth.height());
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      const double dq = depth(qx, qy);
      if (is_hole(dq)) continue;
      const double w = spatial_weight(qx - p.x, qy - p.y, params.sigma_s) *
                       color_range_weight(guide.at(p), guide(qx, qy), params.sigma_r_color);
      acc.add(dq, w);
    }
  }
  return acc.finish();
}

FilterOutcome tjbf_pixel(Pixel p, const DepthField& depth, const ColorImage& guide,
                         const KernelParams& params) {
  check_non_hole_center(p, depth, guide, "tjbf_pixel");
  const Window win = clamp_window(p, params.window_radius, depth.width(), depth.height());
  const double dp = depth.at(p);
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      const double dq = depth(qx, qy);
      if (is_hole(dq)) continue;
      const double w = spatial_weight(qx - p.x, qy - p.y, params.sigma_s) *
                       color_range_weight(guide.at(p), guide(qx, qy), params.sigma_r_color) *
                       depth_range_weight(dp, dq, params.sigma_r_depth);
      acc.add(dq, w);
    }
  }
  return acc.finish();
}

FilterOutcome djbf_pixel(Pixel p, const DepthField& depth, const ColorImage& guide, double theta,
                         const KernelParams& params) {
  check_non_hole_center(p, depth, guide, "djbf_pixel");
  const Window win = clamp_window(p, params.window_radius, depth.width(), depth.height());
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      const double dq = depth(qx, qy);
      if (is_hole(dq)) continue;
      const double w =
          dgf_weight(qx - p.x, qy - p.y, theta, params.sigma_x, params.sigma_y) *
          color_range_weight(guide.at(p), guide(qx, qy), params.sigma_r_color);
      acc.add(dq, w);
    }
  }
  return acc.finish();
}

FilterOutcome pdjbf_pixel(Pixel p, const DepthField& depth, const BinaryMask& valid,
                          const ColorImage& guide, double theta, const KernelParams& params) {
  check_hole_center(p, depth, valid, guide, "pdjbf_pixel");
  const Window win = clamp_window(p, params.window_radius, depth.width(), depth.height());
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      if (!valid(qx, qy)) continue;
      const double w =
          dgf_weight(qx - p.x, qy - p.y, theta, params.sigma_x, params.sigma_y) *
          color_range_weight(guide.at(p), guide(qx, qy), params.sigma_r_color);
      acc.add(depth(qx, qy), w);
    }
  }
  return acc.finish();
}

// ---------------------------------------------------------------------------

FilterEngine::FilterEngine(const ColorImage& guide, const KernelParams& params)
    : guide_(guide), params_(params) {
  params_.validate();
  const int r = params_.window_radius;
  const int side = 2 * r + 1;
  isotropic_.resize(static_cast<std::size_t>(side) * side);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      isotropic_[(dy + r) * side + (dx + r)] = spatial_weight(dx, dy, params_.sigma_s);
    }
  }
  constexpr int kMaxSquaredRgbDistance = 3 * 255 * 255;
  color_lut_.resize(kMaxSquaredRgbDistance + 1);
  const double inv_var = 1.0 / (params_.sigma_r_color * params_.sigma_r_color);
  for (int d2 = 0; d2 <= kMaxSquaredRgbDistance; ++d2) {
    color_lut_[d2] = std::exp(-0.5 * (d2 * inv_var));
  }
}

double FilterEngine::color_weight(Rgb a, Rgb b) const noexcept {
  const int dr = int(a.r) - b.r;
  const int dg = int(a.g) - b.g;
  const int db = int(a.b) - b.b;
  return color_lut_[dr * dr + dg * dg + db * db];
}

FilterOutcome FilterEngine::jbf(Pixel p, const DepthField& depth) const {
  check_non_hole_center(p, depth, guide_, "FilterEngine::jbf");
  const int r = params_.window_radius;
  const int side = 2 * r + 1;
  const Window win = clamp_window(p, r, depth.width(), depth.height());
  const Rgb cp = guide_.at(p);
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    const double* spatial = &isotropic_[(qy - p.y + r) * side + r];
    const auto drow = depth.row(qy);
    const auto grow = guide_.row(qy);
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      const double dq = drow[qx];
      if (is_hole(dq)) continue;
      acc.add(dq, spatial[qx - p.x] * color_weight(cp, grow[qx]));
    }
  }
  return acc.finish();
}

FilterOutcome FilterEngine::tjbf(Pixel p, const DepthField& depth) const {
  check_non_hole_center(p, depth, guide_, "FilterEngine::tjbf");
  const int r = params_.window_radius;
  const int side = 2 * r + 1;
  const Window win = clamp_window(p, r, depth.width(), depth.height());
  const Rgb cp = guide_.at(p);
  const double dp = depth.at(p);
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    const double* spatial = &isotropic_[(qy - p.y + r) * side + r];
    const auto drow = depth.row(qy);
    const auto grow = guide_.row(qy);
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      const double dq = drow[qx];
      if (is_hole(dq)) continue;
      acc.add(dq, spatial[qx - p.x] * color_weight(cp, grow[qx]) *
                      depth_range_weight(dp, dq, params_.sigma_r_depth));
    }
  }
  return acc.finish();
}

FilterOutcome FilterEngine::djbf(Pixel p, const DepthField& depth, double theta) const {
  check_non_hole_center(p, depth, guide_, "FilterEngine::djbf");
  const Window win = clamp_window(p, params_.window_radius, depth.width(), depth.height());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double inv_x = 1.0 / (params_.sigma_x * params_.sigma_x);
  const double inv_y = 1.0 / (params_.sigma_y * params_.sigma_y);
  const Rgb cp = guide_.at(p);
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    const double dy = qy - p.y;
    const auto drow = depth.row(qy);
    const auto grow = guide_.row(qy);
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      const double dq = drow[qx];
      if (is_hole(dq)) continue;
      const double dx = qx - p.x;
      const double xr = dx * c + dy * s;
      const double yr = -dx * s + dy * c;
      const double spatial = std::exp(-0.5 * (xr * xr * inv_x + yr * yr * inv_y));
      acc.add(dq, spatial * color_weight(cp, grow[qx]));
    }
  }
  return acc.finish();
}

FilterOutcome FilterEngine::pdjbf(Pixel p, const DepthField& depth, const BinaryMask& valid,
                                  double theta) const {
  check_hole_center(p, depth, valid, guide_, "FilterEngine::pdjbf");
  const Window win = clamp_window(p, params_.window_radius, depth.width(), depth.height());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double inv_x = 1.0 / (params_.sigma_x * params_.sigma_x);
  const double inv_y = 1.0 / (params_.sigma_y * params_.sigma_y);
  const Rgb cp = guide_.at(p);
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    const double dy = qy - p.y;
    const auto drow = depth.row(qy);
    const auto vrow = valid.row(qy);
    const auto grow = guide_.row(qy);
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      if (!vrow[qx]) continue;
      const double dx = qx - p.x;
      const double xr = dx * c + dy * s;
      const double yr = -dx * s + dy * c;
      const double spatial = std::exp(-0.5 * (xr * xr * inv_x + yr * yr * inv_y));
      acc.add(drow[qx], spatial * color_weight(cp, grow[qx]));
    }
  }
  return acc.finish();
}

FilterOutcome FilterEngine::partial_jbf(Pixel p, const DepthField& depth,
                                        const BinaryMask& valid) const {
  check_hole_center(p, depth, valid, guide_, "FilterEngine::partial_jbf");
  const int r = params_.window_radius;
  const int side = 2 * r + 1;
  const Window win = clamp_window(p, r, depth.width(), depth.height());
  const Rgb cp = guide_.at(p);
  Accumulator acc;
  for (int qy = win.y0; qy <= win.y1; ++qy) {
    const double* spatial = &isotropic_[(qy - p.y + r) * side + r];
    const auto drow = depth.row(qy);
    const auto vrow = valid.row(qy);
    const auto grow = guide_.row(qy);
    for (int qx = win.x0; qx <= win.x1; ++qx) {
      if (!vrow[qx]) continue;
      acc.add(drow[qx], spatial[qx - p.x] * color_weight(cp, grow[qx]));
    }
  }
  return acc.finish();
}

// ---------------------------------------------------------------------------

DepthField filter_non_hole(const DepthField& depth, const ColorImage& guide,
                           const RegionLabels& labels, const RealGrid& orientation,
                           const KernelParams& params, FilterOptions options) {
  require_same_shape(depth, guide, "filter_non_hole");
  require_same_shape(depth, labels, "filter_non_hole");
  require_same_shape(depth, orientation, "filter_non_hole");
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (is_hole(labels[i]) != is_hole(depth[i])) {
      throw ContractViolation("filter_non_hole: region labels disagree with depth holes at index " +
                              std::to_string(i));
    }
  }
  const FilterEngine engine(guide, params);
  DepthField out(depth.width(), depth.height());
  parallel_rows(depth.height(), options.threads, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < depth.width(); ++x) {
        const Pixel p{x, y};
        switch (labels.at(p)) {
          case Region::NonHoleNonEdge:
            out.at(p) = engine.tjbf(p, depth).value;
            break;
          case Region::NonHoleEdge:
            out.at(p) = options.directional ? engine.djbf(p, depth, orientation.at(p)).value
                                            : engine.jbf(p, depth).value;
            break;
          case Region::HoleNonEdge:
          case Region::HoleEdge:
            out.at(p) = 0.0;
            break;
        }
      }
    }
  });
  return out;
}

}  // namespace depthfill
