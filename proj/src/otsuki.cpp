#include "catenoid/otsuki.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>

#include "catenoid/errors.hpp"

namespace catenoid::otsuki {

namespace {

// Smallest a scanned by find_closed; T(a) -> pi only logarithmically slowly
// below this, so the scan loses nothing that a grid could resolve.
constexpr double kClosedScanStart = 1e-5;

void check_dimension(int n) {
  if (n < 2) throw DomainError("otsuki: n must be >= 2");
}

void check_period_argument(int n, double a) {
  check_dimension(n);
  if (!(a > 0.0)) throw DomainError("otsuki: a must be > 0");
  if (!(a < clifford_value(n) - kDegeneracyGuard)) {
    throw DomainError("otsuki: a=" + std::to_string(a) +
                      " is within the degeneracy guard of 1/sqrt(n)=" +
                      std::to_string(clifford_value(n)) +
                      " (roots a0, a1 merge)");
  }
}

// log of ((1 - r^2)/(1 - x^2))^(1 - 1/n) (r/x)^(2/n); zero exactly at x = r
// and again at the other root of the radicand.
double log_ratio_delta(int n, double root, double delta) {
  const double inv_n = 1.0 / n;
  return -(1.0 - inv_n) *
             std::log1p(-delta * (2.0 * root + delta) / (1.0 - root * root)) -
         2.0 * inv_n * std::log1p(delta / root);
}

double log_ratio(int n, double root, double x) {
  return log_ratio_delta(n, root, x - root);
}

// 2u / sqrt(radicand(root + sign u^2)); at u = 0 (or once u^2 underflows)
// the limit 2 / sqrt(|radicand'(root)|) is returned.
double substituted_integrand(int n, double root, double sign, double u) {
  const double delta = sign * u * u;
  if (delta == 0.0) {
    const double slope = 2.0 * (1.0 - root * root) / (n * root) -
                         2.0 * root * (1.0 - 1.0 / n);
    return 2.0 / std::sqrt(std::abs(slope));
  }
  const double x = root + delta;
  const double radicand =
      (1.0 - x * x) * -std::expm1(log_ratio_delta(n, root, delta));
  return 2.0 * u / std::sqrt(radicand);
}

}  // namespace

double clifford_value(int n) { return 1.0 / std::sqrt(static_cast<double>(n)); }

double capital_c(int n, double a) {
  check_dimension(n);
  if (!(a > 0.0 && a < 1.0)) throw DomainError("capital_c: a must lie in (0, 1)");
  return std::pow(a, 2.0 / n) * std::pow(1.0 - a * a, 1.0 - 1.0 / n);
}

double period_radicand(int n, double root, double x) {
  return (1.0 - x * x) * -std::expm1(log_ratio(n, root, x));
}

double upper_root_a1(int n, double a) {
  check_dimension(n);
  if (!(a > 0.0)) throw DomainError("upper_root_a1: a must be > 0");
  if (!(a < clifford_value(n))) {
    throw DomainError("upper_root_a1: a must be < 1/sqrt(n)");
  }
  // log_ratio < 0 (radicand > 0) strictly between the roots and -> +inf
  // as x -> 1, so [1/sqrt(n), 1] brackets a1 alone.
  return numerics::bisect([&](double x) { return log_ratio(n, a, x); },
                          clifford_value(n), 1.0);
}

PeriodResult period(int n, double a, const numerics::QuadratureTolerance& tol) {
  check_period_argument(n, a);
  const double a1 = upper_root_a1(n, a);
  const double mid = 0.5 * (a + a1);
  // The log-ratio loses about log10(a1 / (a1 - a)) digits to cancellation
  // as the roots merge; no quadrature can resolve the integrand below that.
  numerics::QuadratureTolerance eff = tol;
  eff.rel_tol = std::max(tol.rel_tol, 16.0 * std::numeric_limits<double>::epsilon() *
                                          a1 / (a1 - a));
  const auto lower = numerics::integrate(
      [&](double u) { return substituted_integrand(n, a, 1.0, u); },
      0.0, std::sqrt(mid - a), eff);
  const auto upper = numerics::integrate(
      [&](double v) { return substituted_integrand(n, a1, -1.0, v); },
      0.0, std::sqrt(a1 - mid), eff);
  const double value = 2.0 * (lower.value + upper.value);
  if (!std::isfinite(value)) {
    throw ConvergenceError("period: non-finite quadrature at a=" +
                           std::to_string(a));
  }
  return {a, a1, value, 2.0 * (lower.error + upper.error)};
}

double first_integral(int n, double a, const SupportState& s) {
  const double h2 = s.h * s.h;
  return s.dh * s.dh + h2 +
         capital_c(n, a) * std::pow(1.0 / h2 - 1.0, 1.0 / n);
}

namespace {

auto support_rhs(int n) {
  return [n](double, const numerics::State<2>& y) {
    const double h = y[0];
    const double dh = y[1];
    const double one_minus = 1.0 - h * h;
    return numerics::State<2>{
        dh, -(dh * dh + one_minus * (n * h * h - 1.0)) / (n * h * one_minus)};
  };
}

void check_support_argument(int n, double a) {
  check_dimension(n);
  if (!(a > 0.0) || a > clifford_value(n) * (1.0 + 1e-12)) {
    throw DomainError("integrate_support: a must lie in (0, 1/sqrt(n)]");
  }
}

}  // namespace

std::vector<SupportState> integrate_support(int n, double a, double theta_max,
                                            const SupportOptions& options) {
  check_support_argument(n, a);
  if (!std::isfinite(theta_max)) {
    throw DomainError("integrate_support: theta_max must be finite");
  }
  if (!(options.output_step > 0.0)) {
    throw DomainError("integrate_support: output_step must be > 0");
  }
  const auto solver =
      numerics::make_dormand_prince<2>(support_rhs(n), options.step);
  const double direction = theta_max >= 0.0 ? 1.0 : -1.0;
  const double span = std::abs(theta_max);
  const auto count = static_cast<long>(std::floor(span / options.output_step));
  const auto target = [&](long k) {
    return direction * (k <= count ? std::min(k * options.output_step, span) : span);
  };

  std::vector<SupportState> out{{0.0, a, 0.0}};
  if (span == 0.0) return out;
  long next = 1;
  solver.drive(0.0, {a, 0.0}, theta_max, [&](const numerics::Step<2>& step) {
    while (next <= count + 1) {
      const double theta = target(next);
      if (direction * (theta - step.t1) > 0.0) break;
      if (!(direction * (theta - out.back().theta) > 0.0)) {
        ++next;
        continue;
      }
      const numerics::State<2> y =
          theta == step.t1 ? step.y1
                           : solver.substep(step.t0, step.y0, theta - step.t0);
      out.push_back({theta, y[0], y[1]});
      ++next;
    }
    return true;
  });
  return out;
}

double support_return_angle(int n, double a, const numerics::StepControl& step) {
  check_period_argument(n, a);
  const auto solver = numerics::make_dormand_prince<2>(support_rhs(n), step);
  double found = -1.0;
  solver.drive(0.0, {a, 0.0}, 4.0 * std::numbers::pi,
               [&](const numerics::Step<2>& s) {
                 if (s.t0 > 0.0 && s.y0[1] < 0.0 && s.y1[1] >= 0.0) {
                   found = numerics::bisect(
                       [&](double theta) {
                         return theta == s.t0
                                    ? s.y0[1]
                                    : solver.substep(s.t0, s.y0, theta - s.t0)[1];
                       },
                       s.t0, s.t1);
                   return false;
                 }
                 return true;
               });
  if (found < 0.0) {
    throw ConvergenceError("support_return_angle: no return within 4 pi");
  }
  return found;
}

DiskPoint disk_coords(const SupportState& s) {
  const double sn = std::sin(s.theta);
  const double cs = std::cos(s.theta);
  return {s.h * sn + s.dh * cs, -s.h * cs + s.dh * sn};
}

std::vector<SweepRow> period_sweep_reference(int n, std::span<const double> as) {
  std::vector<SweepRow> rows(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) {
    rows[i].a = as[i];
    try {
      rows[i].result = period(n, as[i]);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  }
  return rows;
}

std::vector<SweepRow> period_sweep(int n, std::span<const double> as) {
  std::vector<SweepRow> rows(as.size());
  const auto count = static_cast<long>(as.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < count; ++i) {
    rows[i].a = as[i];
    try {
      rows[i].result = period(n, as[i]);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  }
  return rows;
}

std::vector<double> find_closed(int n, int p, int q, int grid) {
  check_dimension(n);
  if (p <= 0 || q <= 0 || !(2 * p > q && p < q)) {
    throw DomainError("find_closed: target 2 pi p/q must lie in (pi, 2 pi), i.e. "
                      "1/2 < p/q < 1; got " +
                      std::to_string(p) + "/" + std::to_string(q));
  }
  if (grid < 2) throw DomainError("find_closed: grid needs at least 2 points");
  const double target = 2.0 * std::numbers::pi * p / q;
  const double lo = kClosedScanStart;
  const double hi = clifford_value(n) - 2.0 * kDegeneracyGuard;
  std::vector<double> as(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) as[i] = lo + (hi - lo) * i / (grid - 1);
  const auto rows = period_sweep(n, as);

  const auto gap = [&](double a) { return period(n, a).period - target; };
  std::vector<double> hits;
  for (int i = 0; i < grid; ++i) {
    if (!rows[i].result) continue;
    const double d0 = rows[i].result->period - target;
    if (d0 == 0.0) {
      hits.push_back(as[i]);
      continue;
    }
    if (i + 1 < grid && rows[i + 1].result) {
      const double d1 = rows[i + 1].result->period - target;
      if ((d0 < 0.0) != (d1 < 0.0) && d1 != 0.0) {
        hits.push_back(numerics::bisect(gap, as[i], as[i + 1], 1e-12));
      }
    }
  }
  return hits;
}

}  // namespace catenoid::otsuki
