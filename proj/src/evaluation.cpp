#include "depthfill/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "depthfill/preprocess.hpp"
#include "depthfill/rng.hpp"

namespace depthfill {

std::optional<SceneKind> parse_scene(std::string_view name) {
  if (name == "step") return SceneKind::Step;
  if (name == "ramp") return SceneKind::Ramp;
  if (name == "occluder") return SceneKind::Occluder;
  return std::nullopt;
}

const char* scene_name(SceneKind kind) noexcept {
  switch (kind) {
    case SceneKind::Step: return "step";
    case SceneKind::Ramp: return "ramp";
    case SceneKind::Occluder: return "occluder";
  }
  return "unknown";
}

Scene make_scene(SceneKind kind, int width, int height) {
  if (width < 16 || height < 16) {
    throw ContractViolation("make_scene: scenes must be at least 16x16, got " +
                            shape_string(width, height));
  }
  Scene s{DepthMap(width, height), ColorImage(width, height)};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      switch (kind) {
        case SceneKind::Step: {
          const bool left = x < width / 2;
          s.depth(x, y) = left ? 1000 : 2000;
          const std::uint8_t g = left ? 64 : 192;
          s.color(x, y) = Rgb{g, g, g};
          break;
        }
        case SceneKind::Ramp: {
          const double d = 500.0 + 2000.0 * x / (width - 1);
          s.depth(x, y) = static_cast<std::uint16_t>(std::round(d));
          s.color(x, y) = Rgb{128, 128, 128};
          break;
        }
        case SceneKind::Occluder: {
          const bool inside = x >= width / 4 && x < width / 4 + width / 2 && y >= height / 4 &&
                              y < height / 4 + height / 2;
          s.depth(x, y) = inside ? 800 : 1500;
          s.color(x, y) = inside ? Rgb{200, 120, 40} : Rgb{60, 90, 160};
          break;
        }
      }
    }
  }
  return s;
}

void DegradeSpec::validate() const {
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ContractViolation("noise_sigma must be >= 0, got " + std::to_string(noise_sigma));
  }
  if (!(speckle_hole_fraction >= 0.0 && speckle_hole_fraction < 1.0)) {
    throw ContractViolation("speckle fraction must be in [0, 1), got " +
                            std::to_string(speckle_hole_fraction));
  }
  if (edge_hole_radius < 0) {
    throw ContractViolation("edge_hole_radius must be >= 0, got " +
                            std::to_string(edge_hole_radius));
  }
}

BinaryMask discontinuity_mask(const DepthMap& depth) {
  BinaryMask mask(depth.width(), depth.height());
  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      const std::uint16_t d = depth(x, y);
      if (is_hole(d)) continue;
      for (int k = 0; k < 4; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (!depth.contains(nx, ny) || is_hole(depth(nx, ny))) continue;
        if (std::abs(double(d) - depth(nx, ny)) > kDiscontinuityStep) {
          mask(x, y) = 1;
          break;
        }
      }
    }
  }
  return mask;
}

DepthMap degrade(const DepthMap& clean, const DegradeSpec& spec) {
  spec.validate();
  Xoshiro256pp rng(spec.seed);
  DepthMap out = clean;
  for (auto& d : out.samples()) {
    if (is_hole(d)) continue;
    const double noisy = std::round(d + spec.noise_sigma * rng.gaussian());
    d = static_cast<std::uint16_t>(std::clamp(noisy, 1.0, 65535.0));
  }
  for (auto& d : out.samples()) {
    if (rng.uniform() < spec.speckle_hole_fraction) d = kHoleDepth;
  }
  if (spec.edge_hole_radius > 0) {
    const BinaryMask band = chebyshev_dilate(discontinuity_mask(clean), spec.edge_hole_radius);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (band[i]) out[i] = kHoleDepth;
    }
  }
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

std::vector<double> signed_errors(const DepthMap& a, const DepthMap& b, const BinaryMask* mask,
                                  const char* who) {
  require_same_shape(a, b, who);
  if (mask) require_same_shape(a, *mask, who);
  std::vector<double> errors;
  errors.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_hole(a[i]) || is_hole(b[i])) continue;
    if (mask && !(*mask)[i]) continue;
    errors.push_back(double(a[i]) - double(b[i]));
  }
  if (errors.empty()) {
    throw ContractViolation(std::string(who) + ": no pixel is valid in both maps");
  }
  return errors;
}

double mse_of(std::vector<double> errors) {
  for (auto& e : errors) e *= e;
  return pairwise_sum(errors) / static_cast<double>(errors.size());
}

double psnr_from_mse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeakDepth * kPeakDepth / mse);
}

double mae_of(std::vector<double> errors) {
  for (auto& e : errors) e = std::abs(e);
  return pairwise_sum(errors) / static_cast<double>(errors.size());
}

double bad_rate_of(const std::vector<double>& errors, double tau) {
  const auto bad = std::count_if(errors.begin(), errors.end(),
                                 [tau](double e) { return std::abs(e) > tau; });
  return static_cast<double>(bad) / static_cast<double>(errors.size());
}

}  // namespace

double psnr(const DepthMap& a, const DepthMap& b, const BinaryMask* mask) {
  return psnr_from_mse(mse_of(signed_errors(a, b, mask, "psnr")));
}

double mae(const DepthMap& a, const DepthMap& b, const BinaryMask* mask) {
  return mae_of(signed_errors(a, b, mask, "mae"));
}

double bad_pixel_rate(const DepthMap& a, const DepthMap& b, double tau, const BinaryMask* mask) {
  if (!(tau >= 0.0)) throw ContractViolation("tau must be >= 0, got " + std::to_string(tau));
  return bad_rate_of(signed_errors(a, b, mask, "bad_pixel_rate"), tau);
}

QualityReport evaluate(const DepthMap& reference, const DepthMap& test, double tau,
                       const BinaryMask* mask) {
  if (!(tau >= 0.0)) throw ContractViolation("tau must be >= 0, got " + std::to_string(tau));
  const std::vector<double> errors = signed_errors(reference, test, mask, "evaluate");
  QualityReport q;
  q.psnr_db = psnr_from_mse(mse_of(errors));
  q.mae_mm = mae_of(errors);
  q.bad_pixel_rate = bad_rate_of(errors, tau);
  q.evaluated_pixels = errors.size();
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    if (!is_hole(reference[i]) && is_hole(test[i])) ++q.holes_unfilled;
  }
  return q;
}

std::string format_metric(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << v;
  return out.str();
}

std::string QualityReport::to_text() const {
  std::ostringstream out;
  out << "psnr_db: " << format_metric(psnr_db) << "\n"
      << "mae_mm: " << format_metric(mae_mm) << "\n"
      << "bad_pixel_rate: " << format_metric(bad_pixel_rate) << "\n"
      << "evaluated_pixels: " << evaluated_pixels << "\n"
      << "holes_unfilled: " << holes_unfilled << "\n";
  return out.str();
}

std::string QualityReport::csv_header() {
  return "scene,seed,psnr_db,mae_mm,bad_pixel_rate,holes_unfilled";
}

std::string QualityReport::csv_row(std::string_view scene, std::uint64_t seed) const {
  std::ostringstream out;
  out << scene << "," << seed << "," << format_metric(psnr_db) << "," << format_metric(mae_mm)
      << "," << format_metric(bad_pixel_rate) << "," << holes_unfilled;
  return out.str();
}

}  // namespace depthfill
