#pragma once

#include <array>
#include <cstdint>

#include "depthfill/image.hpp"

namespace depthfill {

struct GradientField {
  RealGrid gx;  // positive rightward
  RealGrid gy;  // positive downward
  RealGrid magnitude;
};

struct EdgeMap {
  BinaryMask edge;
  /// edge_theta(gx, gy) at every pixel, in (-pi/2, pi/2].
  RealGrid theta;
  double threshold = 0.0;
};

enum class Region : std::uint8_t {
  NonHoleNonEdge = 0,
  NonHoleEdge = 1,
  HoleNonEdge = 2,
  HoleEdge = 3,
};

inline bool is_hole(Region r) noexcept {
  return r == Region::HoleNonEdge || r == Region::HoleEdge;
}
inline bool is_edge(Region r) noexcept {
  return r == Region::NonHoleEdge || r == Region::HoleEdge;
}
const char* region_name(Region r) noexcept;

using RegionLabels = Grid<Region>;

/// 3x3 Sobel with replicated borders. Requires at least 3x3.
GradientField sobel_gradients(const GrayImage& gray);

EdgeMap detect_edges(const GradientField& grad, double threshold);

/// atan(gx / gy) folded into (-pi/2, pi/2]: pi/2 when gy == 0 and gx != 0,
/// 0 when both vanish. With Sobel's sign conventions this is the orientation
/// of the edge contour mirrored about the x axis; see contour_angle().
double edge_theta(double gx, double gy) noexcept;

/// Direction of the edge contour in pixel coordinates (x right, y down) for
/// an orientation produced by edge_theta(). A directional kernel rotated by
/// this angle has its long axis running along the edge.
inline double contour_angle(double theta) noexcept { return -theta; }

RegionLabels classify_regions(const BinaryMask& holes, const EdgeMap& edges, int r_edge);

/// Per-pixel kernel rotation for directional filtering, already converted by
/// contour_angle(). Each pixel takes the orientation of the nearest edge
/// pixel (Euclidean) within Chebyshev radius r_edge, first in row-major order
/// on ties; pixels with no edge in reach keep their own orientation.
RealGrid orientation_field(const EdgeMap& edges, int r_edge);

std::array<std::size_t, 4> region_counts(const RegionLabels& labels);

}  // namespace depthfill
