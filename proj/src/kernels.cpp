#include "depthfill/kernels.hpp"

#include <cmath>
#include <string>

namespace depthfill {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ContractViolation(std::string(name) + " must be > 0, got " + std::to_string(v));
  }
}

}  // namespace

void KernelParams::validate() const {
  require_positive(sigma_s, "sigma_s");
  require_positive(sigma_r_color, "sigma_r_color");
  require_positive(sigma_r_depth, "sigma_r_depth");
  require_positive(sigma_x, "sigma_x");
  require_positive(sigma_y, "sigma_y");
  if (window_radius < 1) {
    throw ContractViolation("window_radius must be >= 1, got " + std::to_string(window_radius));
  }
  if (sigma_x < sigma_y) {
    throw ContractViolation("sigma_x (" + std::to_string(sigma_x) + ") must be >= sigma_y (" +
                            std::to_string(sigma_y) + ")");
  }
}

double spatial_weight(double dx, double dy, double sigma_s) noexcept {
  return std::exp(-0.5 * ((dx * dx + dy * dy) / (sigma_s * sigma_s)));
}

double color_range_weight(double ip, double iq, double sigma_r) noexcept {
  const double t = (ip - iq) / sigma_r;
  return std::exp(-0.5 * t * t);
}

double color_range_weight(Rgb ip, Rgb iq, double sigma_r) noexcept {
  const double dr = double(ip.r) - iq.r;
  const double dg = double(ip.g) - iq.g;
  const double db = double(ip.b) - iq.b;
  return color_range_weight(std::sqrt(dr * dr + dg * dg + db * db), 0.0, sigma_r);
}

double depth_range_weight(double dp, double dq, double sigma_r) noexcept {
  if (sigma_r >= kUnboundedSigma) return 1.0;
  const double t = (dp - dq) / sigma_r;
  return std::exp(-0.5 * t * t);
}

double dgf_weight(double dx, double dy, double theta, double sigma_x, double sigma_y) noexcept {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double xr = dx * c + dy * s;
  const double yr = -dx * s + dy * c;
  return std::exp(-0.5 * (xr * xr / (sigma_x * sigma_x) + yr * yr / (sigma_y * sigma_y)));
}

}  // namespace depthfill
