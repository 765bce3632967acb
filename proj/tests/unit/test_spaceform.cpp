#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "catenoid/errors.hpp"
#include "catenoid/spaceform.hpp"
#include "support/generators.hpp"

using namespace catenoid;

TEST_CASE("space form validation") {
  CHECK_THROWS_AS(SpaceForm(0.0, 1), DomainError);
  CHECK_THROWS_AS(SpaceForm(std::numeric_limits<double>::quiet_NaN(), 3), DomainError);
  CHECK_THROWS_AS(SpaceForm(std::numeric_limits<double>::infinity(), 3), DomainError);
  CHECK_NOTHROW(SpaceForm(-2.5, 2));
}

TEST_CASE("warp function in the three geometries") {
  const auto h = warp(SpaceForm(-1.0, 3), 1.0);
  CHECK(h.f == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  CHECK(h.df == doctest::Approx(1.5430806348152437).epsilon(1e-15));
  CHECK(h.ddf == doctest::Approx(h.f).epsilon(1e-15));

  const auto e = warp(SpaceForm(0.0, 3), 2.5);
  CHECK(e.f == 2.5);
  CHECK(e.df == 1.0);
  CHECK(e.ddf == 0.0);

  const auto s = warp(SpaceForm(4.0, 3), 0.3);
  CHECK(s.f == doctest::Approx(std::sin(0.6) / 2).epsilon(1e-15));
  CHECK(s.df == doctest::Approx(std::cos(0.6)).epsilon(1e-15));
  CHECK(s.ddf == doctest::Approx(-4.0 * s.f).epsilon(1e-15));

  const auto origin = warp(SpaceForm(-3.0, 4), 0.0);
  CHECK(origin.f == 0.0);
  CHECK(origin.df == 1.0);
}

TEST_CASE("warp domain") {
  CHECK_THROWS_AS(warp(SpaceForm(0.0, 3), -0.1), DomainError);
  CHECK_THROWS_AS(warp(SpaceForm(1.0, 3), std::numbers::pi / 2 + 1e-9), DomainError);
  CHECK_NOTHROW(warp(SpaceForm(1.0, 3), std::numbers::pi / 2));
  CHECK(max_axis_distance(SpaceForm(4.0, 3)) == doctest::Approx(std::numbers::pi / 4));
  CHECK(std::isinf(max_axis_distance(SpaceForm(0.0, 3))));
  CHECK(std::isinf(max_axis_distance(SpaceForm(-1.0, 3))));
}

TEST_CASE("property: warp branches join continuously at the series switch") {
  catenoid::testing::Gen gen(7);
  for (int i = 0; i < 300; ++i) {
    const double y = gen.uniform(0.01, 2.0);
    const double sign = gen.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
    const double threshold = 1e-8 / (y * y);
    const auto below = warp(SpaceForm(sign * threshold * (1 - 1e-9), 3), y);
    const auto above = warp(SpaceForm(sign * threshold * (1 + 1e-9), 3), y);
    CHECK(std::abs(below.f - above.f) <= 1e-15 * y);
    CHECK(std::abs(below.df - above.df) <= 1e-15);
    const auto flat = warp(SpaceForm(0.0, 3), y);
    CHECK(std::abs(below.f - flat.f) <= 2e-8 * y);
  }
}

TEST_CASE("property: inverse warp round trip and f'' + c f = 0") {
  catenoid::testing::Gen gen(8);
  for (int i = 0; i < 300; ++i) {
    const double c = gen.uniform(-3, 3);
    const SpaceForm sf(c, 3);
    const double ymax = c > 0 ? 0.99 * max_axis_distance(sf) : 3.0;
    const double y = gen.uniform(0.0, ymax);
    const auto w = warp(sf, y);
    CHECK(std::abs(inverse_warp(sf, w.f) - y) <= 1e-9 * (1 + y));
    CHECK(std::abs(w.ddf + c * w.f) <= 1e-14 * (1 + std::abs(w.ddf)));
    CHECK(std::abs(w.df * w.df + c * w.f * w.f - 1.0) <= 1e-13 * (1 + w.df * w.df));
  }
}

TEST_CASE("Clifford radii and curvatures, worked example") {
  const CliffordSpec spec(1, 3, 1.0);
  const auto r = clifford_radii(spec);
  CHECK(r.r1 == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-15));
  CHECK(r.r2 == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-15));
  const auto k = clifford_sff(spec);
  CHECK(k.lambda == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(k.lambda_multiplicity == 1);
  CHECK(k.nu == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(k.nu_multiplicity == 2);
  CHECK(std::abs(k.norm_sq - 3.0) <= 1e-13);
}

TEST_CASE("Clifford suite: |A|^2 = n c and exact trace") {
  for (double c : {0.5, 1.0, 2.0}) {
    for (int n = 2; n <= 8; ++n) {
      for (int m = 1; m < n; ++m) {
        const CliffordSpec spec(m, n, c);
        const auto k = clifford_sff(spec);
        CHECK(std::abs(k.norm_sq - n * c) <= 1e-12);
        CHECK(k.trace() == 0.0);
        const double lam2 = k.lambda_multiplicity * k.lambda * k.lambda +
                            k.nu_multiplicity * k.nu * k.nu;
        CHECK(std::abs(lam2 - k.norm_sq) <= 1e-12);
        // lambda nu = -c, and the radii lie on the sphere of radius 1/sqrt(c).
        CHECK(std::abs(k.lambda * k.nu + c) <= 1e-13);
        const auto r = clifford_radii(spec);
        CHECK(std::abs(r.r1 * r.r1 + r.r2 * r.r2 - 1.0 / c) <= 1e-14);
      }
    }
  }
}

TEST_CASE("Clifford validation") {
  CHECK_THROWS_AS(CliffordSpec(0, 3, 1.0), DomainError);
  CHECK_THROWS_AS(CliffordSpec(3, 3, 1.0), DomainError);
  CHECK_THROWS_AS(CliffordSpec(1, 3, 0.0), DomainError);
  CHECK_THROWS_AS(CliffordSpec(1, 3, -1.0), DomainError);
}
