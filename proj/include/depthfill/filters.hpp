#pragma once

#include <vector>

#include "depthfill/edges.hpp"
#include "depthfill/image.hpp"
#include "depthfill/kernels.hpp"

namespace depthfill {

/// Normalized filter result at one pixel. When weight_sum > 0 the value is a
/// convex combination of the contributing depths.
struct FilterOutcome {
  double value = 0.0;
  double weight_sum = 0.0;
  int contributors = 0;

  bool filled() const noexcept { return contributors > 0; }
};

// Naive per-pixel evaluators. Each walks the clamped window around p and calls
// the kernel functions directly; hole neighbors (depth 0) carry zero weight.
// These are the reference the optimized FilterEngine is checked against.

/// Joint bilateral: spatial Gaussian times guidance range weight.
FilterOutcome jbf_pixel(Pixel p, const DepthField& depth, const ColorImage& guide,
                        const KernelParams& params);

/// Joint bilateral with an extra depth range factor against D(p).
FilterOutcome tjbf_pixel(Pixel p, const DepthField& depth, const ColorImage& guide,
                         const KernelParams& params);

/// Joint bilateral whose spatial term is the directional Gaussian rotated by
/// theta (sigma_x along theta, sigma_y across).
FilterOutcome djbf_pixel(Pixel p, const DepthField& depth, const ColorImage& guide, double theta,
                         const KernelParams& params);

/// Directional joint bilateral over the `valid` subset only, evaluated at a
/// pixel that has no depth of its own. No depth range term. Returns an empty
/// outcome when nothing valid is in reach.
FilterOutcome pdjbf_pixel(Pixel p, const DepthField& depth, const BinaryMask& valid,
                          const ColorImage& guide, double theta, const KernelParams& params);

/// Same filters with per-window work hoisted: the isotropic spatial kernel is
/// tabulated once and the guidance range weight is looked up by squared RGB
/// distance. Agrees with the naive forms to ~1e-15 relative.
class FilterEngine {
 public:
  FilterEngine(const ColorImage& guide, const KernelParams& params);

  const KernelParams& params() const noexcept { return params_; }

  FilterOutcome jbf(Pixel p, const DepthField& depth) const;
  FilterOutcome tjbf(Pixel p, const DepthField& depth) const;
  FilterOutcome djbf(Pixel p, const DepthField& depth, double theta) const;
  FilterOutcome pdjbf(Pixel p, const DepthField& depth, const BinaryMask& valid,
                      double theta) const;
  /// pdjbf with the isotropic sigma_s kernel (theta = 0, sigma_x = sigma_y = sigma_s).
  FilterOutcome partial_jbf(Pixel p, const DepthField& depth, const BinaryMask& valid) const;

 private:
  double color_weight(Rgb a, Rgb b) const noexcept;

  const ColorImage& guide_;
  KernelParams params_;
  std::vector<double> isotropic_;
  std::vector<double> color_lut_;
};

struct FilterOptions {
  int threads = 1;
  /// When false, edge-region pixels use the isotropic JBF instead of the
  /// directional one (ablation).
  bool directional = true;
};

/// Denoises every non-hole pixel: depth-augmented JBF on non-edge pixels,
/// directional JBF on edge pixels. Hole pixels stay 0. Every output reads the
/// unmodified input, so row bands can run concurrently.
DepthField filter_non_hole(const DepthField& depth, const ColorImage& guide,
                           const RegionLabels& labels, const RealGrid& orientation,
                           const KernelParams& params, FilterOptions options = {});

}  // namespace depthfill
