#pragma once

// Spherical catenoids (c > 0) through the support function h(theta) of the
// projected generating curve:
//
//   n h (1 - h^2) h'' + h'^2 + (1 - h^2)(n h^2 - 1) = 0,  h(0) = a, h'(0) = 0,
//
// with first integral h'^2 + h^2 + C(a) (1/h^2 - 1)^(1/n) = 1. All routines
// work on the unit sphere; h is scale free.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catenoid/numerics.hpp"

namespace catenoid::otsuki {

/// Distance below 1/sqrt(n) inside which a is treated as the Clifford
/// double root and the period is rejected.
inline constexpr double kDegeneracyGuard = 1e-6;

/// Default number of a-samples scanned by find_closed.
inline constexpr int kDefaultClosedGrid = 2000;

struct SupportState {
  double theta;
  double h;
  double dh;
};

struct PeriodResult {
  double a0;
  double a1;
  double period;
  double quadrature_error;
};

struct DiskPoint {
  double x;  // x_{n+1}
  double y;  // x_{n+2}
};

/// 1 / sqrt(n), where the two roots a0 and a1 merge.
double clifford_value(int n);

/// C(a) = a^(2/n) (1 - a^2)^(1 - 1/n), a in (0, 1).
double capital_c(int n, double a);

/// Root of 1 - x^2 - C(a) (1/x^2 - 1)^(1/n) in (1/sqrt(n), 1).
double upper_root_a1(int n, double a);

/// 1 - x^2 - C(a) (1/x^2 - 1)^(1/n), evaluated relative to a known root
/// `root` of the same equation so that it keeps full relative accuracy as
/// x -> root.
double period_radicand(int n, double root, double x);

/// T(a) = 2 int_{a0}^{a1} dx / sqrt(radicand). Both inverse-square-root
/// endpoints are removed by x = a0 + u^2 and x = a1 - v^2 on the two halves.
PeriodResult period(int n, double a,
                    const numerics::QuadratureTolerance& tol = {});

/// h'^2 + h^2 + C(a) (1/h^2 - 1)^(1/n); equals 1 along solutions.
double first_integral(int n, double a, const SupportState& state);

struct SupportOptions {
  numerics::StepControl step{};
  /// Output spacing in theta; the last sample lands on theta_max.
  double output_step = 0.01;
};

/// Integrates the support-function ODE from theta = 0 to theta_max (which
/// may be negative). a = 1/sqrt(n) yields the constant Clifford solution.
std::vector<SupportState> integrate_support(int n, double a, double theta_max,
                                            const SupportOptions& options = {});

/// First theta > 0 where the ODE solution returns to its minimum
/// (h' crossing zero upward), refined to integrator accuracy. This is the
/// period measured by the ODE, independent of the quadrature.
double support_return_angle(int n, double a,
                            const numerics::StepControl& step = {});

/// Planar projection (x_{n+1}, x_{n+2}) of the generating curve.
DiskPoint disk_coords(const SupportState& state);

/// All a in (eps, 1/sqrt(n) - guard) with T(a) = 2 pi p / q. The grid scan
/// brackets every sign change of T(a) - T* (monotonicity is not assumed)
/// and refines each bracket by bisection. Throws DomainError unless
/// 1/2 < p/q < 1.
std::vector<double> find_closed(int n, int p, int q,
                                int grid = kDefaultClosedGrid);

/// One row of a period sweep; `error` is set instead of `result` when the
/// period could not be computed at that a.
struct SweepRow {
  double a;
  std::optional<PeriodResult> result;
  std::string error;
};

/// OpenMP kernel: period() at every a, rows in input order.
std::vector<SweepRow> period_sweep(int n, std::span<const double> as);

/// Serial reference for period_sweep; identical output.
std::vector<SweepRow> period_sweep_reference(int n, std::span<const double> as);

}  // namespace catenoid::otsuki
