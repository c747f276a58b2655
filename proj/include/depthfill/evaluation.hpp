#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "depthfill/image.hpp"

namespace depthfill {

enum class SceneKind { Step, Ramp, Occluder };

std::optional<SceneKind> parse_scene(std::string_view name);
const char* scene_name(SceneKind kind) noexcept;

struct Scene {
  DepthMap depth;
  ColorImage color;
};

/// Synthetic ground truth with a co-registered guide.
///   step      x < w/2 at 1000 mm (gray 64), the rest at 2000 mm (gray 192)
///   ramp      500 -> 2500 mm linearly across columns, constant gray 128
///   occluder  1500 mm background with a centered w/2 x h/2 box at 800 mm,
///             box and background in distinct colors
Scene make_scene(SceneKind kind, int width, int height);

struct DegradeSpec {
  double noise_sigma = 0.0;  // mm, additive Gaussian on valid pixels
  double speckle_hole_fraction = 0.0;
  int edge_hole_radius = 0;  // 0 disables edge holes
  std::uint64_t seed = 0;

  void validate() const;
};

/// Depth difference to a 4-neighbor above which a pixel counts as lying on a
/// discontinuity.
inline constexpr double kDiscontinuityStep = 100.0;

/// Pixels with a valid 4-neighbor whose depth differs by more than 100 mm.
BinaryMask discontinuity_mask(const DepthMap& depth);

/// Sensor-style degradation, in this order over one Xoshiro256pp stream:
///  1. every valid pixel in row-major order draws gaussian(); the sample
///     becomes round(d + sigma * g) clamped to [1, 65535],
///  2. every pixel in row-major order draws uniform(); it becomes a hole when
///     the draw is below speckle_hole_fraction,
///  3. pixels within Chebyshev distance edge_hole_radius of a discontinuity of
///     the clean map become holes (no draws).
DepthMap degrade(const DepthMap& clean, const DegradeSpec& spec);

/// Sum in a fixed binary-tree order, so the result does not depend on how
/// the terms were produced.
double pairwise_sum(std::span<const double> values);

inline constexpr double kPeakDepth = 65535.0;

/// Metrics run over pixels valid in both maps and set in `mask` (all pixels
/// when no mask is given). They throw ContractViolation when nothing is left
/// to evaluate.
double psnr(const DepthMap& a, const DepthMap& b, const BinaryMask* mask = nullptr);
double mae(const DepthMap& a, const DepthMap& b, const BinaryMask* mask = nullptr);
double bad_pixel_rate(const DepthMap& a, const DepthMap& b, double tau,
                      const BinaryMask* mask = nullptr);

struct QualityReport {
  double psnr_db = 0.0;
  double mae_mm = 0.0;
  double bad_pixel_rate = 0.0;
  std::size_t evaluated_pixels = 0;
  /// Pixels valid in the reference but holes in the test map.
  std::size_t holes_unfilled = 0;

  std::string to_text() const;
  static std::string csv_header();
  std::string csv_row(std::string_view scene, std::uint64_t seed) const;
};

QualityReport evaluate(const DepthMap& reference, const DepthMap& test, double tau,
                       const BinaryMask* mask = nullptr);

/// "inf" for +infinity, otherwise fixed with six decimals.
std::string format_metric(double v);

}  // namespace depthfill
