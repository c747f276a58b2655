#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "depthfill/preprocess.hpp"

using namespace depthfill;

namespace {

// Direct 2-D windowed max then min, no separability.
DepthMap naive_close(const DepthMap& d, int r) {
  auto pass = [&](const DepthMap& in, bool take_max) {
    DepthMap out(in.width(), in.height());
    for (int y = 0; y < in.height(); ++y) {
      for (int x = 0; x < in.width(); ++x) {
        std::uint16_t best = in(x, y);
        for (int qy = y - r; qy <= y + r; ++qy) {
          for (int qx = x - r; qx <= x + r; ++qx) {
            if (!in.contains(qx, qy)) continue;
            best = take_max ? std::max(best, in(qx, qy)) : std::min(best, in(qx, qy));
          }
        }
        out(x, y) = best;
      }
    }
    return out;
  };
  return pass(pass(d, true), false);
}

DepthMap random_map(std::mt19937_64& rng, int w, int h, double hole_fraction) {
  std::uniform_int_distribution<int> depth(1, 5000);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DepthMap m(w, h);
  for (auto& v : m.samples()) {
    v = unit(rng) < hole_fraction ? 0 : static_cast<std::uint16_t>(depth(rng));
  }
  return m;
}

}  // namespace

TEST_CASE("closing is the identity on constant maps") {
  const DepthMap m(9, 7, 1000);
  CHECK(close_depth(m, {2}) == m);
}

TEST_CASE("closing fills a single hole smaller than the element") {
  DepthMap m(7, 7, 1000);
  m(3, 3) = 0;
  const DepthMap closed = close_depth(m, {2});
  CHECK(closed(3, 3) == 1000);
  CHECK(closed == DepthMap(7, 7, 1000));
}

TEST_CASE("closing keeps holes larger than the element") {
  DepthMap m(15, 15, 1000);
  for (int y = 3; y < 12; ++y)
    for (int x = 3; x < 12; ++x) m(x, y) = 0;
  const DepthMap closed = close_depth(m, {2});
  CHECK(closed(7, 7) == 0);
}

TEST_CASE("separable closing matches the direct 2-D definition") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const DepthMap m = random_map(rng, 13 + trial % 5, 9 + trial % 7, 0.2);
    for (int r : {1, 2, 3}) CHECK(close_depth(m, {r}) == naive_close(m, r));
  }
}

TEST_CASE("closing is idempotent and draws values from the 2r neighborhood") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DepthMap m = random_map(rng, 32, 32, 0.1);
    const DepthMap once = close_depth(m, {2});
    CHECK(close_depth(once, {2}) == once);
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) {
        CHECK(once(x, y) >= m(x, y));
        std::set<std::uint16_t> near;
        for (int qy = std::max(0, y - 4); qy <= std::min(31, y + 4); ++qy)
          for (int qx = std::max(0, x - 4); qx <= std::min(31, x + 4); ++qx) near.insert(m(qx, qy));
        CHECK(near.count(once(x, y)) == 1);
      }
    }
  }
}

TEST_CASE("fill_small_holes only changes hole pixels") {
  std::mt19937_64 rng(8);
  const DepthMap m = random_map(rng, 20, 20, 0.05);
  const DepthMap closed = close_depth(m, {2});
  const DepthMap filled = fill_small_holes(m, {2});
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(filled[i] == (m[i] == 0 ? closed[i] : m[i]));
  }
}

TEST_CASE("structuring element radius must be positive") {
  CHECK_THROWS_AS(close_depth(DepthMap(3, 3, 1), {0}), ContractViolation);
}

TEST_CASE("hole_mask marks exactly the zero samples") {
  CHECK(hole_mask(DepthMap(3, 2, 0)) == BinaryMask(3, 2, 1));
  CHECK(hole_mask(DepthMap(3, 2, 7)) == BinaryMask(3, 2, 0));
  const DepthMap m(4, 1, std::vector<std::uint16_t>{0, 5, 0, 9});
  CHECK(hole_mask(m) == BinaryMask(4, 1, std::vector<std::uint8_t>{1, 0, 1, 0}));
}

TEST_CASE("expand_holes") {
  BinaryMask holes(5, 5, 0);
  holes(2, 2) = 1;
  const BinaryMask all_edges(5, 5, 1);

  SUBCASE("radius 0 keeps the input") { CHECK(expand_holes(holes, all_edges, 0) == holes); }
  SUBCASE("no edges keeps the input") {
    CHECK(expand_holes(holes, BinaryMask(5, 5, 0), 3) == holes);
  }
  SUBCASE("full edge mask grows a 3x3 block") {
    const BinaryMask out = expand_holes(holes, all_edges, 1);
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 5; ++x) {
        const bool inside = std::abs(x - 2) <= 1 && std::abs(y - 2) <= 1;
        CHECK(out(x, y) == (inside ? 1 : 0));
      }
  }
  SUBCASE("shape mismatch is a contract violation") {
    CHECK_THROWS_AS(expand_holes(holes, BinaryMask(4, 5, 0), 1), ContractViolation);
  }
}

TEST_CASE("expand_holes is monotone in the input and in the radius") {
  std::mt19937_64 rng(21);
  std::bernoulli_distribution hole(0.08), edge(0.4);
  for (int trial = 0; trial < 30; ++trial) {
    BinaryMask holes(16, 12), edges(16, 12);
    for (std::size_t i = 0; i < holes.size(); ++i) {
      holes[i] = hole(rng);
      edges[i] = edge(rng);
    }
    BinaryMask prev = holes;
    for (int r = 0; r <= 4; ++r) {
      const BinaryMask out = expand_holes(holes, edges, r);
      for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i] >= holes[i]);
        CHECK(out[i] >= prev[i]);
        if (out[i] && !holes[i]) CHECK(edges[i] == 1);
      }
      prev = out;
    }
  }
}
