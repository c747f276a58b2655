#pragma once

// Weight functions shared by every filter. All return values in (0, 1] and
// equal exactly 1 at zero argument (subject to exp underflow for very large
// arguments, where they return 0).

#include "depthfill/image.hpp"

namespace depthfill {

struct KernelParams {
  double sigma_s = 3.0;         // isotropic spatial width, pixels
  double sigma_r_color = 25.0;  // guidance range width, intensity units
  double sigma_r_depth = 30.0;  // depth range width, millimeters
  double sigma_x = 5.0;         // directional kernel, along the edge
  double sigma_y = 1.5;         // directional kernel, across the edge
  int window_radius = 5;

  void validate() const;
};

/// Depth range widths at or above this behave as an infinitely wide kernel.
inline constexpr double kUnboundedSigma = 1e9;

double spatial_weight(double dx, double dy, double sigma_s) noexcept;

/// Scalar guidance intensities.
double color_range_weight(double ip, double iq, double sigma_r) noexcept;
/// RGB guidance; the difference is the Euclidean distance of the triples.
double color_range_weight(Rgb ip, Rgb iq, double sigma_r) noexcept;

double depth_range_weight(double dp, double dq, double sigma_r) noexcept;

/// Anisotropic Gaussian whose sigma_x axis points along angle theta:
///   x' =  dx cos(theta) + dy sin(theta)
///   y' = -dx sin(theta) + dy cos(theta)
///   w  = exp(-(x'^2 / sigma_x^2 + y'^2 / sigma_y^2) / 2)
double dgf_weight(double dx, double dy, double theta, double sigma_x, double sigma_y) noexcept;

}  // namespace depthfill
