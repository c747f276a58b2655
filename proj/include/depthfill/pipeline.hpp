#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "depthfill/edges.hpp"
#include "depthfill/filters.hpp"
#include "depthfill/image.hpp"
#include "depthfill/kernels.hpp"
#include "depthfill/preprocess.hpp"

namespace depthfill {

struct PipelineConfig {
  KernelParams kernel;
  StructuringElement se;
  double edge_threshold = 100.0;
  int r_edge = 5;
  int hole_expand_radius = 1;
  int max_fill_passes = 64;
  /// Worker count for the per-pixel stages; never changes the output.
  int threads = 1;
  /// false forces isotropic kernels in edge regions (ablation).
  bool directional = true;

  void validate() const;
};

struct RestorationReport {
  std::size_t holes_input = 0;     // holes in the depth handed to restore()
  std::size_t holes_closed = 0;    // of those, filled by the morphological closing
  std::size_t holes_expanded = 0;  // edge pixels demoted to holes next to existing holes
  std::size_t holes_initial = 0;   // holes entering the fill stage
  std::size_t holes_filled = 0;
  std::size_t holes_unfilled = 0;
  int fill_passes_used = 0;
  std::array<std::size_t, 4> region_counts{};  // indexed by Region

  /// `key: value` lines in a fixed order.
  std::string to_text() const;
};

struct FillResult {
  DepthField depth;
  RestorationReport report;
};

/// Onion-peel hole filling. Non-edge holes are filled first with the isotropic
/// partial filter, then edge holes with the directional one. Each pass reads
/// the validity and depth left by the previous pass; a pass that fills nothing
/// (or the pass budget) ends the phase. Unfillable pixels stay 0.
FillResult fill_holes(const DepthField& filtered, const ColorImage& guide,
                      const RegionLabels& labels, const RealGrid& orientation,
                      const PipelineConfig& cfg);

struct Restoration {
  DepthMap depth;
  RegionLabels labels;
  RestorationReport report;
};

Restoration restore(const DepthMap& depth, const ColorImage& guide, const PipelineConfig& cfg);

}  // namespace depthfill
