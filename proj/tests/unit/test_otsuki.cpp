#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catenoid/errors.hpp"
#include "catenoid/otsuki.hpp"
#include "support/generators.hpp"

using namespace catenoid;
using namespace catenoid::otsuki;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0) * kPi;
}  // namespace

TEST_CASE("C(a) and the Clifford value") {
  CHECK(clifford_value(4) == 0.5);
  CHECK(std::abs(capital_c(3, 0.42231) - 0.493795338451) <= 1e-11);
  CHECK(std::abs(capital_c(3, 1 / std::sqrt(3.0)) - 0.5291336839893998) <= 1e-14);
  CHECK_THROWS_AS(capital_c(3, 0.0), DomainError);
  CHECK_THROWS_AS(capital_c(3, 1.0), DomainError);
  CHECK_THROWS_AS(capital_c(1, 0.3), DomainError);
}

TEST_CASE("upper root a1") {
  CHECK(std::abs(upper_root_a1(3, 0.42231) - 0.7195655262188) <= 1e-12);
  CHECK(std::abs(upper_root_a1(3, 0.2) - 0.8848857801796105) <= 1e-12);
  CHECK_THROWS_AS(upper_root_a1(3, 0.6), DomainError);
  CHECK_THROWS_AS(upper_root_a1(3, -0.1), DomainError);
}

TEST_CASE("property: n = 3 upper root has a closed form") {
  catenoid::testing::Gen gen(31);
  for (int i = 0; i < 500; ++i) {
    const double a = gen.uniform(1e-4, clifford_value(3) - 1e-4);
    const double closed = (-a + std::sqrt(4.0 - 3.0 * a * a)) / 2.0;
    CHECK(std::abs(upper_root_a1(3, a) - closed) <= 1e-10);
  }
}

TEST_CASE("property: the radicand vanishes at both roots and is positive between") {
  catenoid::testing::Gen gen(32);
  for (int i = 0; i < 300; ++i) {
    const int n = gen.integer(2, 8);
    const double a = gen.uniform(0.01, clifford_value(n) - 1e-3);
    const double a1 = upper_root_a1(n, a);
    CHECK(std::abs(period_radicand(n, a, a)) == 0.0);
    CHECK(std::abs(period_radicand(n, a, a1)) <= 1e-14);
    const double x = gen.uniform(a, a1);
    if (x > a && x < a1) {
      CHECK(period_radicand(n, a, x) > 0.0);
      CHECK(std::abs(period_radicand(n, a, x) - period_radicand(n, a1, x)) <=
            1e-13);
    }
  }
}

TEST_CASE("period against high-precision reference values") {
  CHECK(std::abs(period(3, 0.42231).period - 4.398228828335614) <= 1e-11);
  CHECK(std::abs(period(3, 0.2).period - 4.152544982336066) <= 1e-11);
  CHECK(std::abs(period(3, 1e-4).period - 3.167811132575737) <= 1e-11);
  CHECK(std::abs(period(3, 1 / std::sqrt(3.0) - 1e-4).period - 4.442882918721875) <= 1e-9);
  CHECK(std::abs(period(4, 1e-4).period - 3.207590900385047) <= 1e-11);
  CHECK(std::abs(period(4, 0.4999).period - 4.442882916767183) <= 1e-9);
  CHECK(std::abs(period(5, 1e-4).period - 3.24115286534184) <= 1e-11);
  CHECK(std::abs(period(5, 1 / std::sqrt(5.0) - 1e-4).period - 4.44288291386135) <= 1e-9);
  const auto r = period(3, 0.42231);
  CHECK(r.a0 == 0.42231);
  CHECK(r.quadrature_error < 1e-10);
}

TEST_CASE("period rejects degenerate input") {
  CHECK_THROWS_AS(period(3, 0.0), DomainError);
  CHECK_THROWS_AS(period(3, clifford_value(3)), DomainError);
  CHECK_THROWS_AS(period(3, clifford_value(3) - 5e-7), DomainError);
  CHECK_THROWS_AS(period(3, 0.7), DomainError);
  CHECK_NOTHROW(period(3, clifford_value(3) - 2e-6));
}

TEST_CASE("property: T(a) lies strictly between pi and sqrt(2) pi and increases") {
  for (int n : {3, 4, 5}) {
    const auto as = catenoid::testing::linspace(1e-4, clifford_value(n) - 1e-4, 100);
    double prev = kPi;
    for (double a : as) {
      const double t = period(n, a).period;
      CHECK(t > kPi);
      CHECK(t < kSqrt2Pi);
      CHECK(t > prev);
      prev = t;
    }
  }
}

TEST_CASE("first integral at the initial point") {
  catenoid::testing::Gen gen(33);
  for (int i = 0; i < 100; ++i) {
    const int n = gen.integer(2, 7);
    const double a = gen.uniform(0.01, 0.99);
    CHECK(std::abs(first_integral(n, a, {0.0, a, 0.0}) - 1.0) <= 1e-14);
  }
}

TEST_CASE("support ODE conserves the first integral over 10 periods") {
  for (int n : {3, 4, 5}) {
    for (double frac : {0.05, 0.3, 0.7, 0.95}) {
      const double a = frac * clifford_value(n);
      const double t = period(n, a).period;
      double drift = 0.0;
      for (const auto& s : integrate_support(n, a, 10.0 * t)) {
        drift = std::max(drift, std::abs(first_integral(n, a, s) - 1.0));
      }
      CAPTURE(n);
      CAPTURE(a);
      CHECK(drift <= 1e-8);
    }
  }
}

TEST_CASE("support solution is even in theta") {
  for (int n : {3, 5}) {
    const double a = 0.6 * clifford_value(n);
    SupportOptions opts;
    opts.output_step = 0.05;
    const auto fwd = integrate_support(n, a, 6.0, opts);
    const auto bwd = integrate_support(n, a, -6.0, opts);
    REQUIRE(fwd.size() == bwd.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      CHECK(bwd[i].theta == -fwd[i].theta);
      CHECK(std::abs(bwd[i].h - fwd[i].h) <= 1e-10);
      CHECK(std::abs(bwd[i].dh + fwd[i].dh) <= 1e-10);
    }
  }
}

TEST_CASE("Clifford value gives the constant solution") {
  const double a = clifford_value(4);
  for (const auto& s : integrate_support(4, a, 10.0)) {
    CHECK(std::abs(s.h - a) <= 1e-12);
    CHECK(std::abs(s.dh) <= 1e-12);
  }
  CHECK_THROWS_AS(integrate_support(4, 0.6, 1.0), DomainError);
}

TEST_CASE("ODE return angle agrees with the quadrature period") {
  for (int n : {3, 4, 5}) {
    for (double a : catenoid::testing::linspace(0.02, clifford_value(n) - 0.01, 20)) {
      CAPTURE(n);
      CAPTURE(a);
      CHECK(std::abs(support_return_angle(n, a) - period(n, a).period) <= 1e-6);
    }
  }
}

TEST_CASE("disk coordinates keep the support distance") {
  catenoid::testing::Gen gen(34);
  for (int i = 0; i < 100; ++i) {
    const SupportState s{gen.uniform(-10, 10), gen.uniform(0.1, 0.9), gen.uniform(-1, 1)};
    const auto p = disk_coords(s);
    CHECK(std::abs(std::hypot(p.x, p.y) - std::hypot(s.h, s.dh)) <= 1e-15);
    // h is the support function: <P, (sin, -cos)> = h.
    CHECK(std::abs(p.x * std::sin(s.theta) - p.y * std::cos(s.theta) - s.h) <= 1e-14);
  }
}

TEST_CASE("curve through a = 0.42231 closes after ten periods") {
  const double a = 0.42231;
  const double t = period(3, a).period;
  SupportOptions opts;
  opts.output_step = t / 100;
  const auto states = integrate_support(3, a, 10.0 * t, opts);
  const auto p0 = disk_coords(states.front());
  const auto p1 = disk_coords(states.back());
  CHECK(states.back().theta == 10.0 * t);
  CHECK(std::hypot(p1.x - p0.x, p1.y - p0.y) <= 1e-4);
  // After a single period the curve has rotated by T, not closed.
  const auto p_one = disk_coords(states[100]);
  CHECK(std::hypot(p_one.x - p0.x, p_one.y - p0.y) > 0.1);
}

TEST_CASE("find_closed recovers the 7/10 curve and re-verifies hits") {
  const auto hits = find_closed(3, 7, 10);
  REQUIRE(hits.size() == 1);
  CHECK(std::abs(hits[0] - 0.42231) <= 1e-4);
  CHECK(std::abs(period(3, hits[0]).period - 1.4 * kPi) <= 1e-9);

  for (auto [p, q] : {std::pair{2, 3}, std::pair{27, 40}}) {
    for (int n : {3, 4, 5}) {
      const auto h = find_closed(n, p, q, 500);
      CAPTURE(n);
      CAPTURE(p);
      REQUIRE(h.size() == 1);
      CHECK(std::abs(period(n, h[0]).period - 2 * kPi * p / q) <= 1e-9);
    }
  }
}

TEST_CASE("find_closed: targets above sqrt(2) pi have no solution") {
  // T(a) never exceeds sqrt(2) pi ~ 1.4142 pi.
  CHECK(find_closed(3, 29, 40, 500).empty());
  CHECK(find_closed(3, 5, 7, 500).empty());
}

TEST_CASE("find_closed rejects targets outside (pi, 2 pi)") {
  CHECK_THROWS_AS(find_closed(3, 1, 2), DomainError);
  CHECK_THROWS_AS(find_closed(3, 1, 1), DomainError);
  CHECK_THROWS_AS(find_closed(3, 2, 5), DomainError);
  CHECK_THROWS_AS(find_closed(3, 0, 5), DomainError);
}
