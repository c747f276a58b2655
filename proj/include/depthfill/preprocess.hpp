#pragma once

#include "depthfill/image.hpp"

namespace depthfill {

/// Square structuring element of side 2*radius+1.
struct StructuringElement {
  int radius = 2;

  void validate() const;
};

/// Grayscale closing: windowed max followed by windowed min, holes taken as
/// depth 0, windows clamped to the image.
DepthMap close_depth(const DepthMap& depth, StructuringElement se);

/// Windowed max / min over a clamped square window. Exposed for testing.
DepthMap dilate_depth(const DepthMap& depth, int radius);
DepthMap erode_depth(const DepthMap& depth, int radius);

/// Replaces hole pixels by their closed value and leaves measured pixels
/// untouched. This is how the restoration pipeline applies the closing.
DepthMap fill_small_holes(const DepthMap& depth, StructuringElement se);

BinaryMask hole_mask(const DepthMap& depth);

/// Grows `holes` into edge pixels lying within Chebyshev distance `radius`
/// of an existing hole. Original holes are always kept.
BinaryMask expand_holes(const BinaryMask& holes, const BinaryMask& edges, int radius);

/// Set where any set pixel of `mask` lies within Chebyshev distance `radius`.
BinaryMask chebyshev_dilate(const BinaryMask& mask, int radius);

}  // namespace depthfill
