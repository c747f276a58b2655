#include "depthfill/preprocess.hpp"

#include <algorithm>

namespace depthfill {
namespace {

// A clamped square window is the product of two clamped 1-D windows, so the
// square max/min factors into a row pass and a column pass.
template <typename T, typename Op>
Grid<T> separable_extremum(const Grid<T>& in, int radius, Op pick) {
  const int w = in.width();
  const int h = in.height();
  Grid<T> rows(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      T best = in(x, y);
      for (int k = std::max(0, x - radius); k <= std::min(w - 1, x + radius); ++k) {
        best = pick(best, in(k, y));
      }
      rows(x, y) = best;
    }
  }
  Grid<T> out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      T best = rows(x, y);
      for (int k = std::max(0, y - radius); k <= std::min(h - 1, y + radius); ++k) {
        best = pick(best, rows(x, k));
      }
      out(x, y) = best;
    }
  }
  return out;
}

constexpr auto kMax = [](auto a, auto b) { return std::max(a, b); };
constexpr auto kMin = [](auto a, auto b) { return std::min(a, b); };

}  // namespace

void StructuringElement::validate() const {
  if (radius < 1) {
    throw ContractViolation("closing radius must be >= 1, got " + std::to_string(radius));
  }
}

DepthMap dilate_depth(const DepthMap& depth, int radius) {
  return separable_extremum(depth, radius, kMax);
}

DepthMap erode_depth(const DepthMap& depth, int radius) {
  return separable_extremum(depth, radius, kMin);
}

DepthMap close_depth(const DepthMap& depth, StructuringElement se) {
  se.validate();
  return erode_depth(dilate_depth(depth, se.radius), se.radius);
}

DepthMap fill_small_holes(const DepthMap& depth, StructuringElement se) {
  const DepthMap closed = close_depth(depth, se);
  DepthMap out = depth;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (is_hole(out[i])) out[i] = closed[i];
  }
  return out;
}

BinaryMask hole_mask(const DepthMap& depth) {
  BinaryMask mask(depth.width(), depth.height());
  for (std::size_t i = 0; i < depth.size(); ++i) mask[i] = is_hole(depth[i]) ? 1 : 0;
  return mask;
}

BinaryMask chebyshev_dilate(const BinaryMask& mask, int radius) {
  if (radius < 0) throw ContractViolation("dilation radius must be >= 0");
  if (radius == 0) return mask;
  return separable_extremum(mask, radius, kMax);
}

BinaryMask expand_holes(const BinaryMask& holes, const BinaryMask& edges, int radius) {
  require_same_shape(holes, edges, "expand_holes");
  if (radius < 0) throw ContractViolation("hole expansion radius must be >= 0");
  const BinaryMask near_hole = chebyshev_dilate(holes, radius);
  BinaryMask out = holes;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (near_hole[i] && edges[i]) out[i] = 1;
  }
  return out;
}

}  // namespace depthfill
