#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zerodrag/metrics.hpp"
#include "zerodrag/profile.hpp"

using namespace zerodrag;

TEST_CASE("volume: B_pi6 is 10 pi / 9, edge-exact") {
  const auto p = triangle_pair_profile(kPi / 6.0);
  CHECK(volume_of_solid(p) == Catch::Approx(10.0 * kPi / 9.0).epsilon(1e-13));
  CHECK(triangle_pair_volume_formula(kPi / 6.0) ==
        Catch::Approx(10.0 * kPi / 9.0).epsilon(1e-13));
}

TEST_CASE("volume: closed form matches edge-exact integration on a grid") {
  for (int i = 1; i <= 20; ++i) {
    const double a = (kPi / 4.0) * i / 21.0;
    const double v = volume_of_solid(triangle_pair_profile(a));
    CHECK(v == Catch::Approx(triangle_pair_volume_formula(a)).epsilon(1e-12));
  }
}

TEST_CASE("volume: cylinder and translational slab") {
  CHECK(volume_of_solid(cylinder_profile(1.0, 2.0)) ==
        Catch::Approx(2.0 * kPi).epsilon(1e-13));
  auto p = triangle_pair_profile(0.3);
  p.symmetry = {SymmetryMode::translational, 2.5};
  double area = 0.0;
  for (const auto& poly : p.polygons) area += signed_area(poly);
  CHECK(volume_of_solid(p) == Catch::Approx(area * 2.5).epsilon(1e-13));
}

TEST_CASE("shape_metrics: B_pi6 has kappa 5/12 and relative height sqrt(3)") {
  const auto m = shape_metrics(triangle_pair_profile(kPi / 6.0));
  CHECK(m.kappa == Catch::Approx(5.0 / 12.0).margin(1e-12));
  CHECK(m.h == Catch::Approx(std::sqrt(3.0)).margin(1e-12));
  CHECK(m.H == Catch::Approx(2.0));
  CHECK(m.L == Catch::Approx(2.0 / std::sqrt(3.0)).margin(1e-12));
}

TEST_CASE("shape_metrics: small-alpha limit kappa -> 14/27, tall hull") {
  const auto m = shape_metrics(triangle_pair_profile(0.01));
  CHECK(std::fabs(m.kappa - 14.0 / 27.0) <= 0.01);
  CHECK(m.h == Catch::Approx(4.0 / (3.0 * 0.01)).epsilon(0.01));
}

TEST_CASE("shape_metrics: alpha near pi/4 gives a thin sliver") {
  const double eps = 0.1;
  const auto m = shape_metrics(triangle_pair_profile((kPi - eps) / 4.0));
  CHECK(m.kappa < 0.15);
  CHECK(m.kappa == Catch::Approx(eps).epsilon(0.25));
}

TEST_CASE("shape_metrics: kappa <= 1, equality for the convex cylinder") {
  CHECK(shape_metrics(cylinder_profile(1.0, 2.0)).kappa ==
        Catch::Approx(1.0).margin(1e-12));
  for (double a : {0.1, 0.4, 0.7})
    CHECK(shape_metrics(triangle_pair_profile(a)).kappa <= 1.0);
}

TEST_CASE("shape_metrics: doubling doubles the volume") {
  const auto p = trapezoid_pair_profile(0.3, 2.0);
  const auto d = double_profile(p);
  CHECK(shape_metrics(d).volume ==
        Catch::Approx(2.0 * shape_metrics(p).volume).epsilon(1e-12));
}

TEST_CASE("trapezoid family: hull fill ratio rises along alpha -> 0, k = 1/alpha") {
  double prev = 0.0;
  for (double a : {0.35, 0.2, 0.1, 0.05, 0.02}) {
    const auto m = shape_metrics(
        trapezoid_pair_profile(a, std::floor(1.0 / a)));
    CHECK(m.kappa > prev);
    prev = m.kappa;
  }
  CHECK(prev > 0.8);  // approaching 1
}

TEST_CASE("newton_functional: flat disk and constant heights give pi") {
  CHECK(newton_functional([](double) { return 0.0; }, 4096) ==
        Catch::Approx(kPi).margin(1e-6));
  for (double h : {0.5, 1.0, 7.0})
    CHECK(newton_functional([h](double) { return h; }, 4096) ==
          Catch::Approx(kPi).margin(1e-6));
}

TEST_CASE("newton_functional: 45 degree cone gives pi/2") {
  CHECK(newton_functional([](double r) { return 1.0 - r; }, 4096) ==
        Catch::Approx(kPi / 2.0).margin(1e-6));
}

TEST_CASE("newton_functional: second-order convergence") {
  // paraboloid: 2 pi * int r/(1+4r^2) dr = pi/4 ln 5
  const double exact = kPi / 4.0 * std::log(5.0);
  auto f = [](double r) { return 1.0 - r * r; };
  const double e1 = std::fabs(newton_functional(f, 64) - exact);
  const double e2 = std::fabs(newton_functional(f, 128) - exact);
  const double e3 = std::fabs(newton_functional(f, 256) - exact);
  CHECK(std::log2(e1 / e2) >= 1.9);
  CHECK(std::log2(e2 / e3) >= 1.9);
}

TEST_CASE("newton_functional: rejects non-finite samples and tiny grids") {
  NewtonProfile p;
  p.f = {0.0, std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS(newton_functional(p), std::invalid_argument);
  CHECK_THROWS_AS(sample_newton_profile([](double) { return 0.0; }, 4),
                  std::invalid_argument);
}

TEST_CASE("volume: straddling polygon without mirror symmetry is rejected") {
  Profile p;
  p.symmetry = {SymmetryMode::rotational, 1.0};
  p.polygons.push_back({{-1.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {-1.0, 1.0}});
  CHECK_THROWS_AS(volume_of_solid(p), std::invalid_argument);
}
