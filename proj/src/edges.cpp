#include "depthfill/edges.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "depthfill/preprocess.hpp"

namespace depthfill {

const char* region_name(Region r) noexcept {
  switch (r) {
    case Region::NonHoleNonEdge: return "nonhole_nonedge";
    case Region::NonHoleEdge: return "nonhole_edge";
    case Region::HoleNonEdge: return "hole_nonedge";
    case Region::HoleEdge: return "hole_edge";
  }
  return "unknown";
}

GradientField sobel_gradients(const GrayImage& gray) {
  const int w = gray.width();
  const int h = gray.height();
  if (w < 3 || h < 3) {
    throw ContractViolation("sobel_gradients: image must be at least 3x3, got " +
                            shape_string(w, h));
  }
  GradientField g{RealGrid(w, h), RealGrid(w, h), RealGrid(w, h)};
  auto at = [&](int x, int y) {
    return gray(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (at(x + 1, y - 1) - at(x - 1, y - 1)) +
                        2.0 * (at(x + 1, y) - at(x - 1, y)) +
                        (at(x + 1, y + 1) - at(x - 1, y + 1));
      const double gy = (at(x - 1, y + 1) - at(x - 1, y - 1)) +
                        2.0 * (at(x, y + 1) - at(x, y - 1)) +
                        (at(x + 1, y + 1) - at(x + 1, y - 1));
      g.gx(x, y) = gx;
      g.gy(x, y) = gy;
      g.magnitude(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

double edge_theta(double gx, double gy) noexcept {
  if (gx == 0.0) return 0.0;
  if (gy == 0.0) return std::numbers::pi / 2.0;
  return std::atan(gx / gy);
}

EdgeMap detect_edges(const GradientField& grad, double threshold) {
  if (!(threshold > 0.0)) {
    throw ContractViolation("edge threshold must be > 0, got " + std::to_string(threshold));
  }
  require_same_shape(grad.gx, grad.gy, "detect_edges");
  require_same_shape(grad.gx, grad.magnitude, "detect_edges");
  EdgeMap e{BinaryMask(grad.gx.width(), grad.gx.height()),
            RealGrid(grad.gx.width(), grad.gx.height()), threshold};
  for (std::size_t i = 0; i < grad.gx.size(); ++i) {
    e.edge[i] = grad.magnitude[i] >= threshold ? 1 : 0;
    e.theta[i] = edge_theta(grad.gx[i], grad.gy[i]);
  }
  return e;
}

RegionLabels classify_regions(const BinaryMask& holes, const EdgeMap& edges, int r_edge) {
  require_same_shape(holes, edges.edge, "classify_regions");
  if (r_edge < 0) throw ContractViolation("r_edge must be >= 0");
  const BinaryMask near_edge = chebyshev_dilate(edges.edge, r_edge);
  RegionLabels labels(holes.width(), holes.height());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int code = (holes[i] ? 2 : 0) + (near_edge[i] ? 1 : 0);
    labels[i] = static_cast<Region>(code);
  }
  return labels;
}

RealGrid orientation_field(const EdgeMap& edges, int r_edge) {
  if (r_edge < 0) throw ContractViolation("r_edge must be >= 0");
  const int w = edges.edge.width();
  const int h = edges.edge.height();
  RealGrid out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double theta = edges.theta(x, y);
      int best = -1;
      for (int qy = std::max(0, y - r_edge); qy <= std::min(h - 1, y + r_edge); ++qy) {
        for (int qx = std::max(0, x - r_edge); qx <= std::min(w - 1, x + r_edge); ++qx) {
          if (!edges.edge(qx, qy)) continue;
          const int d2 = (qx - x) * (qx - x) + (qy - y) * (qy - y);
          if (best < 0 || d2 < best) {
            best = d2;
            theta = edges.theta(qx, qy);
          }
        }
      }
      out(x, y) = contour_angle(theta);
    }
  }
  return out;
}

std::array<std::size_t, 4> region_counts(const RegionLabels& labels) {
  std::array<std::size_t, 4> counts{};
  for (const Region r : labels.samples()) ++counts[static_cast<std::size_t>(r)];
  return counts;
}

}  // namespace depthfill
