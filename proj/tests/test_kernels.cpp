#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "depthfill/kernels.hpp"

using namespace depthfill;

TEST_CASE("spatial_weight") {
  CHECK(spatial_weight(0, 0, 0.7) == 1.0);
  CHECK(std::abs(spatial_weight(3.0, 0.0, 3.0) - 0.6065306597126334) <= 1e-12);
  CHECK(spatial_weight(2, 5, 2.5) == spatial_weight(5, 2, 2.5));
  CHECK(spatial_weight(2, 5, 2.5) == spatial_weight(-2, -5, 2.5));
}

TEST_CASE("color_range_weight") {
  CHECK(color_range_weight(80.0, 80.0, 10.0) == 1.0);
  CHECK(std::abs(color_range_weight(100.0, 75.0, 25.0) - 0.6065306597126334) <= 1e-12);
  CHECK(color_range_weight(3.0, 90.0, 20.0) == color_range_weight(90.0, 3.0, 20.0));
  CHECK(color_range_weight(Rgb{1, 2, 3}, Rgb{1, 2, 3}, 5.0) == 1.0);
}

TEST_CASE("rgb color weight reduces to the scalar form on gray triples") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(0, 255);
  for (int i = 0; i < 500; ++i) {
    const auto a = static_cast<std::uint8_t>(d(rng));
    const auto b = static_cast<std::uint8_t>(d(rng));
    // A gray difference of t has Euclidean length sqrt(3) t.
    const double scalar = color_range_weight(std::sqrt(3.0) * a, std::sqrt(3.0) * b, 30.0);
    CHECK(color_range_weight(Rgb{a, a, a}, Rgb{b, b, b}, 30.0) ==
          doctest::Approx(scalar).epsilon(1e-12));
  }
}

TEST_CASE("depth_range_weight") {
  CHECK(depth_range_weight(1500, 1500, 30) == 1.0);
  CHECK(std::abs(depth_range_weight(1000, 1060, 30) - 0.1353352832366127) <= 1e-12);
  double prev = 1.0;
  for (int d = 1; d < 200; ++d) {
    const double w = depth_range_weight(1000, 1000 + d, 30);
    CHECK(w < prev);
    prev = w;
  }
  CHECK(depth_range_weight(0, 60000, kUnboundedSigma) == 1.0);
}

TEST_CASE("dgf_weight") {
  CHECK(dgf_weight(0, 0, 1.1, 4.0, 2.0) == 1.0);
  CHECK(std::abs(dgf_weight(1, 0, 0.0, 2.0, 1.0) - 0.8824969025845955) <= 1e-12);
}

TEST_CASE("isotropic dgf equals the spatial Gaussian for every angle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> off(-6.0, 6.0), ang(-4.0, 4.0), sig(0.5, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double dx = off(rng), dy = off(rng), t = ang(rng), s = sig(rng);
    CHECK(std::abs(dgf_weight(dx, dy, t, s, s) - spatial_weight(dx, dy, s)) <= 1e-12);
  }
}

TEST_CASE("dgf is a rotated axis-aligned Gaussian and pi-periodic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> off(-6.0, 6.0), ang(-4.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const double dx = off(rng), dy = off(rng), t = ang(rng);
    // Rotating the offset by -theta aligns it with the kernel axes.
    const double xr = dx * std::cos(-t) - dy * std::sin(-t);
    const double yr = dx * std::sin(-t) + dy * std::cos(-t);
    CHECK(std::abs(dgf_weight(dx, dy, t, 4.0, 1.5) - dgf_weight(xr, yr, 0.0, 4.0, 1.5)) <= 1e-12);
    CHECK(std::abs(dgf_weight(dx, dy, t, 4.0, 1.5) -
                   dgf_weight(dx, dy, t + std::numbers::pi, 4.0, 1.5)) <= 1e-12);
  }
}

TEST_CASE("all weights lie in [0, 1]") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> v(-300.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    for (const double w : {spatial_weight(v(rng), v(rng), 3.0),
                           color_range_weight(v(rng), v(rng), 25.0),
                           depth_range_weight(v(rng), v(rng), 30.0),
                           dgf_weight(v(rng), v(rng), v(rng), 5.0, 1.5)}) {
      CHECK(w >= 0.0);
      CHECK(w <= 1.0);
    }
  }
}

TEST_CASE("KernelParams validation") {
  CHECK_NOTHROW(KernelParams{}.validate());
  KernelParams p;
  p.sigma_s = 0.0;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = {};
  p.window_radius = 0;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = {};
  p.sigma_x = 1.0;
  p.sigma_y = 2.0;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
}
