#include <doctest.h>

#include <random>

#include "depthfill/evaluation.hpp"
#include "depthfill/pipeline.hpp"
#include "oracle.hpp"

using namespace depthfill;

namespace {

PipelineConfig small_window(int radius) {
  PipelineConfig cfg;
  cfg.kernel.window_radius = radius;
  return cfg;
}

}  // namespace

TEST_CASE("fill_holes with no holes does nothing") {
  std::mt19937_64 rng(1);
  const auto inst = oracle::random_instance(rng, 8, 8, 0.0);
  const FillResult r = fill_holes(inst.depth, inst.guide, RegionLabels(8, 8), RealGrid(8, 8), {});
  CHECK(r.depth == inst.depth);
  CHECK(r.report.fill_passes_used == 0);
  CHECK(r.report.holes_initial == 0);
  CHECK(r.report.holes_unfilled == 0);
}

TEST_CASE("a single hole in a constant field fills in one pass") {
  DepthField d(7, 7, 1200.0);
  d(3, 3) = 0.0;
  RegionLabels labels(7, 7);
  labels(3, 3) = Region::HoleNonEdge;
  const FillResult r = fill_holes(d, ColorImage(7, 7, Rgb{30, 30, 30}), labels, RealGrid(7, 7), {});
  CHECK(r.depth(3, 3) == 1200.0);
  CHECK(r.report.fill_passes_used == 1);
  CHECK(r.report.holes_filled == 1);
}

TEST_CASE("a 3x3 block with window radius 1 takes exactly two passes") {
  DepthField d(9, 9, 1500.0);
  RegionLabels labels(9, 9);
  for (int y = 3; y <= 5; ++y)
    for (int x = 3; x <= 5; ++x) {
      d(x, y) = 0.0;
      labels(x, y) = Region::HoleNonEdge;
    }
  const FillResult r = fill_holes(d, ColorImage(9, 9), labels, RealGrid(9, 9), small_window(1));
  CHECK(r.report.fill_passes_used == 2);
  CHECK(r.report.holes_filled == 9);
  CHECK(r.report.holes_unfilled == 0);
  for (const double v : r.depth.samples()) CHECK(v == 1500.0);
}

TEST_CASE("the pass budget stops the onion peel") {
  DepthField d(9, 9, 1500.0);
  RegionLabels labels(9, 9);
  for (int y = 3; y <= 5; ++y)
    for (int x = 3; x <= 5; ++x) {
      d(x, y) = 0.0;
      labels(x, y) = Region::HoleNonEdge;
    }
  PipelineConfig cfg = small_window(1);
  cfg.max_fill_passes = 1;
  const FillResult r = fill_holes(d, ColorImage(9, 9), labels, RealGrid(9, 9), cfg);
  CHECK(r.report.fill_passes_used == 1);
  CHECK(r.report.holes_filled == 8);
  CHECK(r.report.holes_unfilled == 1);
  CHECK(r.depth(4, 4) == 0.0);
}

TEST_CASE("edge holes are filled after non-edge holes") {
  // Edge hole (1,0) sits next to a non-edge hole (2,0) and only (0,0) is valid
  // otherwise within reach, so its value must include the phase-one result.
  DepthField d(5, 1, std::vector<double>{1000.0, 0.0, 0.0, 3000.0, 3000.0});
  RegionLabels labels(5, 1);
  labels(1, 0) = Region::HoleEdge;
  labels(2, 0) = Region::HoleNonEdge;
  PipelineConfig cfg = small_window(1);
  const FillResult r = fill_holes(d, ColorImage(5, 1), labels, RealGrid(5, 1), cfg);
  CHECK(r.depth(2, 0) == 3000.0);
  CHECK(r.depth(1, 0) > 1000.0);
  CHECK(r.depth(1, 0) < 3000.0);
  CHECK(r.report.fill_passes_used == 2);
}

TEST_CASE("an all-hole map terminates with every hole unfilled") {
  const DepthMap d(12, 10, 0);
  const Restoration r = restore(d, ColorImage(12, 10, Rgb{1, 2, 3}), {});
  CHECK(r.report.holes_unfilled == 120);
  CHECK(r.report.fill_passes_used == 0);
  CHECK(r.depth == d);
}

TEST_CASE("restore leaves a constant depth map unchanged") {
  std::mt19937_64 rng(2);
  const auto inst = oracle::random_instance(rng, 20, 16, 0.0, 120);
  const DepthMap d(20, 16, 1750);
  const Restoration r = restore(d, inst.guide, {});
  CHECK(r.depth == d);
  CHECK(r.report.holes_initial == 0);
}

TEST_CASE("restore rejects mismatched and tiny inputs") {
  try {
    restore(DepthMap(640, 480, 1), ColorImage(320, 240), {});
    FAIL("expected ContractViolation");
  } catch (const ContractViolation& e) {
    const std::string msg = e.what();
    CHECK(msg.find("640x480") != std::string::npos);
    CHECK(msg.find("320x240") != std::string::npos);
  }
  CHECK_THROWS_AS(restore(DepthMap(2, 5, 1), ColorImage(2, 5), {}), ContractViolation);
  PipelineConfig bad;
  bad.kernel.sigma_s = 0.0;
  CHECK_THROWS_AS(restore(DepthMap(5, 5, 1), ColorImage(5, 5), bad), ContractViolation);
}

TEST_CASE("restore on degraded scenes") {
  for (const SceneKind kind : {SceneKind::Step, SceneKind::Ramp, SceneKind::Occluder}) {
    CAPTURE(scene_name(kind));
    const Scene s = make_scene(kind, 64, 48);
    const DepthMap noisy = degrade(s.depth, {15.0, 0.05, 2, 11});
    PipelineConfig cfg;
    const Restoration one = restore(noisy, s.color, cfg);
    cfg.threads = 4;
    const Restoration four = restore(noisy, s.color, cfg);
    CHECK(one.depth == four.depth);
    CHECK(one.labels == four.labels);

    const RestorationReport& rep = one.report;
    CHECK(rep.holes_input == count_set(hole_mask(noisy)));
    CHECK(rep.holes_filled + rep.holes_unfilled == rep.holes_initial);
    CHECK(rep.region_counts[2] + rep.region_counts[3] == rep.holes_initial);
    CHECK(rep.holes_initial == rep.holes_input - rep.holes_closed + rep.holes_expanded);
    std::size_t zeros = 0;
    for (const auto v : one.depth.samples()) zeros += v == 0;
    CHECK(zeros == rep.holes_unfilled);

    // Outputs stay within the range of the valid input depths.
    std::uint16_t lo = 65535, hi = 0;
    for (const auto v : noisy.samples()) {
      if (v == 0) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (const auto v : one.depth.samples()) {
      if (v == 0) continue;
      CHECK(v >= lo);
      CHECK(v <= hi);
    }

    // Region labels partition the image and agree with the output holes.
    std::size_t total = 0;
    for (const auto c : rep.region_counts) total += c;
    CHECK(total == noisy.size());
  }
}

TEST_CASE("restoration improves a noisy step scene") {
  const Scene s = make_scene(SceneKind::Step, 96, 64);
  const DepthMap noisy = degrade(s.depth, {20.0, 0.0, 0, 3});
  const Restoration r = restore(noisy, s.color, {});
  CHECK(psnr(s.depth, r.depth) > psnr(s.depth, noisy) + 3.0);
}

TEST_CASE("report text lists every counter") {
  RestorationReport rep;
  rep.holes_input = 4;
  rep.fill_passes_used = 2;
  rep.region_counts = {1, 2, 3, 4};
  const std::string t = rep.to_text();
  for (const char* key : {"holes_input: 4", "holes_closed: 0", "holes_expanded: 0",
                          "holes_initial: 0", "holes_filled: 0", "holes_unfilled: 0",
                          "fill_passes_used: 2", "nonhole_nonedge: 1", "nonhole_edge: 2",
                          "hole_nonedge: 3", "hole_edge: 4"}) {
    CHECK(t.find(key) != std::string::npos);
  }
}

TEST_CASE("PipelineConfig validation") {
  CHECK_NOTHROW(PipelineConfig{}.validate());
  PipelineConfig c;
  c.edge_threshold = 0.0;
  CHECK_THROWS_AS(c.validate(), ContractViolation);
  c = {};
  c.max_fill_passes = 0;
  CHECK_THROWS_AS(c.validate(), ContractViolation);
  c = {};
  c.r_edge = -1;
  CHECK_THROWS_AS(c.validate(), ContractViolation);
}
