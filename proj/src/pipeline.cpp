#include "depthfill/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "depthfill/parallel.hpp"

namespace depthfill {

void PipelineConfig::validate() const {
  kernel.validate();
  se.validate();
  if (!(edge_threshold > 0.0) || !std::isfinite(edge_threshold)) {
    throw ContractViolation("edge_threshold must be > 0, got " + std::to_string(edge_threshold));
  }
  if (r_edge < 0) throw ContractViolation("r_edge must be >= 0, got " + std::to_string(r_edge));
  if (hole_expand_radius < 0) {
    throw ContractViolation("hole_expand_radius must be >= 0, got " +
                            std::to_string(hole_expand_radius));
  }
  if (max_fill_passes < 1) {
    throw ContractViolation("max_fill_passes must be >= 1, got " +
                            std::to_string(max_fill_passes));
  }
  if (threads < 0) throw ContractViolation("threads must be >= 0, got " + std::to_string(threads));
}

std::string RestorationReport::to_text() const {
  std::ostringstream out;
  out << "holes_input: " << holes_input << "\n"
      << "holes_closed: " << holes_closed << "\n"
      << "holes_expanded: " << holes_expanded << "\n"
      << "holes_initial: " << holes_initial << "\n"
      << "holes_filled: " << holes_filled << "\n"
      << "holes_unfilled: " << holes_unfilled << "\n"
      << "fill_passes_used: " << fill_passes_used << "\n";
  for (std::size_t r = 0; r < region_counts.size(); ++r) {
    out << region_name(static_cast<Region>(r)) << ": " << region_counts[r] << "\n";
  }
  return out.str();
}

FillResult fill_holes(const DepthField& filtered, const ColorImage& guide,
                      const RegionLabels& labels, const RealGrid& orientation,
                      const PipelineConfig& cfg) {
  cfg.validate();
  require_same_shape(filtered, guide, "fill_holes");
  require_same_shape(filtered, labels, "fill_holes");
  require_same_shape(filtered, orientation, "fill_holes");

  FillResult result{filtered, {}};
  DepthField& depth = result.depth;
  RestorationReport& report = result.report;
  report.region_counts = region_counts(labels);

  BinaryMask valid(filtered.width(), filtered.height());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (is_hole(labels[i])) {
      depth[i] = 0.0;
      ++report.holes_initial;
    } else {
      valid[i] = 1;
    }
  }

  const FilterEngine engine(guide, cfg.kernel);
  const int width = filtered.width();

  auto run_phase = [&](Region target, bool directional) {
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == target) pending.push_back(i);
    }
    int passes = 0;
    std::vector<FilterOutcome> outcomes;
    while (!pending.empty() && passes < cfg.max_fill_passes) {
      outcomes.assign(pending.size(), FilterOutcome{});
      // Every evaluation in a pass sees the state left by the previous pass.
      parallel_rows(static_cast<int>(pending.size()), cfg.threads, [&](int k0, int k1) {
        for (int k = k0; k < k1; ++k) {
          const std::size_t i = pending[k];
          const Pixel p{static_cast<int>(i % width), static_cast<int>(i / width)};
          outcomes[k] = directional ? engine.pdjbf(p, depth, valid, orientation.at(p))
                                    : engine.partial_jbf(p, depth, valid);
        }
      });
      std::vector<std::size_t> still_pending;
      std::size_t filled = 0;
      for (std::size_t k = 0; k < pending.size(); ++k) {
        if (outcomes[k].filled()) {
          depth[pending[k]] = outcomes[k].value;
          valid[pending[k]] = 1;
          ++filled;
        } else {
          still_pending.push_back(pending[k]);
        }
      }
      if (filled == 0) break;
      ++passes;
      report.holes_filled += filled;
      pending = std::move(still_pending);
    }
    return passes;
  };

  report.fill_passes_used = run_phase(Region::HoleNonEdge, false);
  report.fill_passes_used += run_phase(Region::HoleEdge, cfg.directional);
  report.holes_unfilled = report.holes_initial - report.holes_filled;
  return result;
}

Restoration restore(const DepthMap& depth, const ColorImage& guide, const PipelineConfig& cfg) {
  cfg.validate();
  if (!depth.same_shape(guide)) {
    throw ContractViolation("restore: depth is " + shape_string(depth.width(), depth.height()) +
                            " but color is " + shape_string(guide.width(), guide.height()));
  }
  if (depth.width() < 3 || depth.height() < 3) {
    throw ContractViolation("restore: images must be at least 3x3, got " +
                            shape_string(depth.width(), depth.height()));
  }

  RestorationReport counts;
  counts.holes_input = count_set(hole_mask(depth));

  const DepthMap closed = fill_small_holes(depth, cfg.se);
  const BinaryMask holes = hole_mask(closed);
  const std::size_t holes_after_closing = count_set(holes);
  counts.holes_closed = counts.holes_input - holes_after_closing;

  const EdgeMap edges = detect_edges(sobel_gradients(to_grayscale(guide)), cfg.edge_threshold);
  const BinaryMask expanded = expand_holes(holes, edges.edge, cfg.hole_expand_radius);
  counts.holes_expanded = count_set(expanded) - holes_after_closing;

  RegionLabels labels = classify_regions(expanded, edges, cfg.r_edge);
  const RealGrid orientation = orientation_field(edges, cfg.r_edge);

  DepthField field = to_field(closed);
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (expanded[i]) field[i] = 0.0;
  }

  const DepthField filtered = filter_non_hole(field, guide, labels, orientation, cfg.kernel,
                                              {cfg.threads, cfg.directional});
  FillResult filled = fill_holes(filtered, guide, labels, orientation, cfg);

  RestorationReport report = filled.report;
  report.holes_input = counts.holes_input;
  report.holes_closed = counts.holes_closed;
  report.holes_expanded = counts.holes_expanded;
  return {round_to_depth(filled.depth), std::move(labels), report};
}

}  // namespace depthfill
