#pragma once

// Generating curves of catenoids.
//
// Two parametrizations are provided:
//  * the (x, y) quadrature for c <= 0, where y >= a is the geodesic distance
//    to the rotation axis and x(y) the axial displacement from the neck;
//  * the arclength ODE for all c, in the ambient radial coordinate
//    x1 = f(y) with constant a in x1'^2 = 1 - c x1^2 - a^2 x1^(2-2n).
//
// The two neck constants are related by a_ode = f(a)^(n-1) f'(a); see
// profile_constant().

#include <span>
#include <vector>

#include "catenoid/numerics.hpp"
#include "catenoid/spaceform.hpp"

namespace catenoid {

/// Positive neck parameter. Its meaning depends on the operation: the
/// minimal axis distance for the quadrature, the ODE constant for
/// integrate_profile.
struct NeckParam {
  double a;

  explicit NeckParam(double value);
};

struct CurvePoint {
  double y;  // distance to the rotation axis
  double x;  // axial coordinate, x(a) = 0
};

/// Arclength state of the profile. `axial` is the geodesic coordinate along
/// the rotation axis, integrated alongside x1.
struct ProfilePoint {
  double s;
  double x1;
  double dx1;
  double ddx1;
  double axial;
};

/// sin(alpha) = f^{n-1}(a) f'(a) / (f^{n-1}(y) f'(y)), c <= 0, y >= a.
/// y may be +infinity.
double sin_alpha(const SpaceForm& sf, NeckParam a, double y);

/// Axial displacement x(y) of the c <= 0 generating curve, y in [a, inf].
/// The endpoint singularity at t = a is removed by t = a + u^2 and the
/// tail beyond a fixed cutoff is mapped to a bounded interval by t = 1/v.
double generating_curve_x(const SpaceForm& sf, NeckParam a, double y,
                          const numerics::QuadratureTolerance& tol = {});

/// Same integral with a fixed composite rule of `panels` panels per piece
/// (no adaptivity); y must be finite. Used to measure convergence order.
double generating_curve_x_fixed(const SpaceForm& sf, NeckParam a, double y,
                                int panels);

/// a * int_1^inf dt / sqrt(t^(2n-2) - 1), the half-extent of the Euclidean
/// catenoid along its axis. Throws DomainError for n = 2 (divergent).
double euclidean_half_extent(int n, NeckParam a);

/// Samples the curve at each y in `ys` and returns both branches: the
/// reflected branch (-x) in reverse order followed by the given one.
std::vector<CurvePoint> symmetric_curve(const SpaceForm& sf, NeckParam a,
                                        std::span<const double> ys);

/// ODE constant f(y)^(n-1) f'(y) of the catenoid whose neck sits at geodesic
/// distance `neck_distance` from the axis. For c > 0 the spherical profile
/// oscillates between two turning points sharing this constant; a distance
/// beyond the Clifford radius asin(sqrt((n-1)/n)) / sqrt(c) names the widest
/// one, and neck_radius() then returns the narrow one.
double profile_constant(const SpaceForm& sf, double neck_distance);

/// 1 - c x1^2 - a^2 x1^(2-2n); equals x1'^2 along a profile.
double profile_potential(const SpaceForm& sf, NeckParam a, double x1);

/// -c x1 + a^2 (n-1) x1^(1-2n).
double profile_acceleration(const SpaceForm& sf, NeckParam a, double x1);

/// Largest ODE constant admitting a positive interval for c > 0
/// (the two roots of profile_potential merge there); +infinity for c <= 0.
double max_profile_constant(const SpaceForm& sf);

/// Smallest positive root of profile_potential. Throws DomainError when no
/// root exists or, for c > 0, when a is within 1e-6 (relative) of the
/// double-root value.
double neck_radius(const SpaceForm& sf, NeckParam a);

struct ProfileOptions {
  numerics::StepControl step{};
  /// Spacing of output samples in s; the last sample is at s_max.
  double output_step = 0.05;
};

/// Integrates the catenoid profile from the neck (x1' = 0) to s_max.
/// Output samples sit exactly on multiples of output_step.
std::vector<ProfilePoint> integrate_profile(const SpaceForm& sf, NeckParam a,
                                            double s_max,
                                            const ProfileOptions& options = {});

/// x1'^2 - profile_potential(x1) at one sample.
double first_integral_residual(const SpaceForm& sf, NeckParam a,
                               const ProfilePoint& p);

/// first_integral_residual normalized by max(1, x1'^2, |c| x1^2).
double relative_first_integral_residual(const SpaceForm& sf, NeckParam a,
                                        const ProfilePoint& p);

}  // namespace catenoid
