#include "catenoid/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "catenoid/errors.hpp"

namespace catenoid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rejection band around the double root of the c > 0 potential.
constexpr double kDoubleRootGuard = 1e-6;

double log_sinh(double t) {
  return t > 1.0 ? t + std::log1p(-std::exp(-2.0 * t)) - std::numbers::ln2
                 : std::log(std::sinh(t));
}

double log_cosh(double t) {
  return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

// Pieces of x(y) after the substitutions. Near the neck t = a + u^2 with
// u in (0, u_max]; beyond the cutoff t = 1/v with v in [v_min, v_max].
struct SplitIntegral {
  double u_max;
  double v_min;
  double v_max;  // v_max <= v_min means no tail piece
};

// Euclidean profile normalized to a = 1: x(y) = a * I(y / a) with
// I(Y) = int_1^Y dt / sqrt(t^(2n-2) - 1). Cutoff at t = 2.
struct EuclideanIntegrand {
  int n;
  double near(double u) const {
    const double u2 = u * u;
    return 2.0 * u / std::sqrt(std::expm1((2.0 * n - 2.0) * std::log1p(u2)));
  }
  double tail(double v) const {
    return std::pow(v, n - 3) / std::sqrt(-std::expm1((2.0 * n - 2.0) * std::log(v)));
  }
  static constexpr double cutoff(double /*a*/) { return 2.0; }
};

// Hyperbolic profile at c = -1 with neck a. Cutoff at t = a + 1.
struct HyperbolicIntegrand {
  int n;
  double a;
  double sinh_a = std::sinh(a);
  double cosh_a = std::cosh(a);
  double log_sinh_a = log_sinh(a);
  double log_cosh_a = log_cosh(a);

  double near(double u) const {
    const double u2 = u * u;
    const double t = a + u2;
    // sinh t - sinh a and cosh t - cosh a without cancellation.
    const double shift = std::sinh(0.5 * u2);
    const double dsinh = 2.0 * std::cosh(0.5 * (t + a)) * shift;
    const double dcosh = 2.0 * std::sinh(0.5 * (t + a)) * shift;
    const double log_ratio =
        (n - 1) * std::log1p(dsinh / sinh_a) + std::log1p(dcosh / cosh_a);
    return 2.0 * u / (std::cosh(t) * std::sqrt(std::expm1(2.0 * log_ratio)));
  }
  double tail(double v) const {
    const double t = 1.0 / v;
    const double log_ratio =
        (n - 1) * (log_sinh(t) - log_sinh_a) + (log_cosh(t) - log_cosh_a);
    const double log_g = -log_cosh(t) - log_ratio -
                         0.5 * std::log(-std::expm1(-2.0 * log_ratio));
    return std::exp(log_g - 2.0 * std::log(v));
  }
  static double cutoff(double a) { return a + 1.0; }
};

template <class Integrand>
SplitIntegral split(double a, double y) {
  const double cut = Integrand::cutoff(a);
  const double near_end = std::min(y, cut);
  SplitIntegral s{std::sqrt(near_end - a), 0.0, 0.0};
  if (y > cut) {
    s.v_min = std::isinf(y) ? 0.0 : 1.0 / y;
    s.v_max = 1.0 / cut;
  }
  return s;
}

template <class Integrand>
double adaptive(const Integrand& g, double a, double y,
                const numerics::QuadratureTolerance& tol) {
  const SplitIntegral s = split<Integrand>(a, y);
  double total = numerics::integrate([&](double u) { return g.near(u); }, 0.0,
                                     s.u_max, tol)
                     .value;
  if (s.v_max > s.v_min) {
    total += numerics::integrate([&](double v) { return g.tail(v); }, s.v_min,
                                 s.v_max, tol)
                 .value;
  }
  return total;
}

template <class Integrand>
double fixed(const Integrand& g, double a, double y, int panels) {
  const SplitIntegral s = split<Integrand>(a, y);
  double total = numerics::gauss_legendre_composite(
      [&](double u) { return g.near(u); }, 0.0, s.u_max, panels);
  if (s.v_max > s.v_min) {
    total += numerics::gauss_legendre_composite(
        [&](double v) { return g.tail(v); }, s.v_min, s.v_max, panels);
  }
  return total;
}

void check_curve_args(const SpaceForm& sf, NeckParam a, double y) {
  if (sf.c > 0.0) {
    throw UnsupportedCurvature(
        "generating curve quadrature needs c <= 0; use the support-function "
        "ODE for c > 0");
  }
  if (std::isnan(y) || y < a.a) {
    throw DomainError("generating curve: y must be >= a");
  }
}

// Dispatches to the normalized integrands. Hyperbolic curvature c is
// rescaled to c = -1 through x_c(y; a) = x_{-1}(k y; k a) / k, k = sqrt(-c).
template <class Eval>
double dispatch(const SpaceForm& sf, NeckParam a, double y, Eval&& eval) {
  if (y == a.a) return 0.0;
  if (sf.c == 0.0) {
    if (sf.n == 2 && std::isinf(y)) {
      throw DomainError("planar catenary has unbounded axial extent (n = 2)");
    }
    return a.a * eval(EuclideanIntegrand{sf.n}, 1.0, y / a.a);
  }
  const double k = std::sqrt(-sf.c);
  const double ka = k * a.a;
  return eval(HyperbolicIntegrand{sf.n, ka}, ka, k * y) / k;
}

}  // namespace

NeckParam::NeckParam(double value) : a(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("neck parameter must be finite and > 0");
  }
}

double sin_alpha(const SpaceForm& sf, NeckParam a, double y) {
  if (sf.c > 0.0) throw UnsupportedCurvature("sin_alpha: needs c <= 0");
  if (std::isnan(y) || y < a.a) throw DomainError("sin_alpha: y must be >= a");
  if (std::isinf(y)) return 0.0;
  if (sf.c == 0.0) return std::pow(a.a / y, sf.n - 1);
  const double k = std::sqrt(-sf.c);
  const double log_num = (sf.n - 1) * log_sinh(k * a.a) + log_cosh(k * a.a);
  const double log_den = (sf.n - 1) * log_sinh(k * y) + log_cosh(k * y);
  return std::min(1.0, std::exp(log_num - log_den));
}

double generating_curve_x(const SpaceForm& sf, NeckParam a, double y,
                          const numerics::QuadratureTolerance& tol) {
  check_curve_args(sf, a, y);
  return dispatch(sf, a, y, [&](const auto& g, double neck, double end) {
    return adaptive(g, neck, end, tol);
  });
}

double generating_curve_x_fixed(const SpaceForm& sf, NeckParam a, double y,
                                int panels) {
  check_curve_args(sf, a, y);
  if (std::isinf(y)) throw DomainError("fixed rule needs a finite y");
  if (panels < 1) throw DomainError("fixed rule needs at least one panel");
  return dispatch(sf, a, y, [&](const auto& g, double neck, double end) {
    return fixed(g, neck, end, panels);
  });
}

double euclidean_half_extent(int n, NeckParam a) {
  if (n < 2) throw DomainError("euclidean_half_extent: n must be >= 2");
  if (n == 2) {
    throw DomainError(
        "euclidean_half_extent: integral diverges for n = 2 (planar catenary)");
  }
  return a.a * generating_curve_x(SpaceForm(0.0, n), NeckParam(1.0), kInf);
}

std::vector<CurvePoint> symmetric_curve(const SpaceForm& sf, NeckParam a,
                                        std::span<const double> ys) {
  std::vector<CurvePoint> branch;
  branch.reserve(ys.size());
  for (double y : ys) branch.push_back({y, generating_curve_x(sf, a, y)});
  std::vector<CurvePoint> out;
  out.reserve(2 * branch.size());
  for (auto it = branch.rbegin(); it != branch.rend(); ++it) {
    if (it->x != 0.0) out.push_back({it->y, -it->x});
  }
  out.insert(out.end(), branch.begin(), branch.end());
  return out;
}

double profile_constant(const SpaceForm& sf, double neck_distance) {
  if (!(neck_distance > 0.0)) throw DomainError("neck distance must be > 0");
  const WarpProfile w = warp(sf, neck_distance);
  return std::pow(w.f, sf.n - 1) * w.df;
}

double profile_potential(const SpaceForm& sf, NeckParam a, double x1) {
  return 1.0 - sf.c * x1 * x1 - a.a * a.a * std::pow(x1, 2 - 2 * sf.n);
}

double profile_acceleration(const SpaceForm& sf, NeckParam a, double x1) {
  return -sf.c * x1 + a.a * a.a * (sf.n - 1) * std::pow(x1, 1 - 2 * sf.n);
}

double max_profile_constant(const SpaceForm& sf) {
  if (sf.c <= 0.0) return kInf;
  // At the double root x*^2 = (n-1)/(n c) and a^2 = c x*^(2n) / (n-1).
  const double n = sf.n;
  const double x_sq = (n - 1.0) / (n * sf.c);
  return std::sqrt(sf.c * std::pow(x_sq, n) / (n - 1.0));
}

double neck_radius(const SpaceForm& sf, NeckParam a) {
  const auto potential = [&](double x) { return profile_potential(sf, a, x); };
  double hi = 0.0;
  if (sf.c <= 0.0) {
    // potential(a^(1/(n-1))) = -c x^2 >= 0.
    hi = std::pow(a.a, 1.0 / (sf.n - 1));
  } else {
    const double a_max = max_profile_constant(sf);
    if (a.a >= a_max * (1.0 - kDoubleRootGuard)) {
      throw DomainError("profile constant a=" + std::to_string(a.a) +
                        " admits no positive interval for c=" +
                        std::to_string(sf.c) + " (limit " +
                        std::to_string(a_max) + ")");
    }
    hi = std::pow((sf.n - 1) * a.a * a.a / sf.c, 1.0 / (2.0 * sf.n));
  }
  // The bracket end can be the root itself (c = 0); nudge it past rounding.
  for (int i = 0; i < 64 && potential(hi) < 0.0; ++i) hi *= 1.0 + 1e-12;
  double lo = 0.5 * hi;
  while (potential(lo) >= 0.0) lo *= 0.5;
  return numerics::bisect(potential, lo, hi);
}

std::vector<ProfilePoint> integrate_profile(const SpaceForm& sf, NeckParam a,
                                            double s_max,
                                            const ProfileOptions& options) {
  if (!(s_max >= 0.0) || !std::isfinite(s_max)) {
    throw DomainError("integrate_profile: s_max must be finite and >= 0");
  }
  if (!(options.output_step > 0.0)) {
    throw DomainError("integrate_profile: output_step must be > 0");
  }
  const double c = sf.c;
  const int n = sf.n;
  const double a2 = a.a * a.a;
  const auto rhs = [c, n, a2, k = a.a](double, const numerics::State<3>& y) {
    const double x = y[0];
    return numerics::State<3>{
        y[1], -c * x + a2 * (n - 1) * std::pow(x, 1 - 2 * n),
        k * std::pow(x, 1 - n) / (1.0 - c * x * x)};
  };
  const auto solver = numerics::make_dormand_prince<3>(rhs, options.step);

  const double x0 = neck_radius(sf, a);
  const auto to_point = [&](double s, const numerics::State<3>& y) {
    return ProfilePoint{s, y[0], y[1], profile_acceleration(sf, a, y[0]), y[2]};
  };

  std::vector<ProfilePoint> out;
  const numerics::State<3> start{x0, 0.0, 0.0};
  out.push_back(to_point(0.0, start));
  const auto count = static_cast<long>(std::floor(s_max / options.output_step));
  long next = 1;
  const auto target = [&](long k) {
    return k <= count ? std::min(k * options.output_step, s_max) : s_max;
  };
  if (s_max == 0.0) return out;
  solver.drive(0.0, start, s_max, [&](const numerics::Step<3>& step) {
    while (next <= count + 1) {
      const double s = target(next);
      if (s > step.t1) break;
      if (!(s > out.back().s)) {
        ++next;
        continue;
      }
      const numerics::State<3> y =
          s == step.t1 ? step.y1 : solver.substep(step.t0, step.y0, s - step.t0);
      out.push_back(to_point(s, y));
      ++next;
    }
    return true;
  });
  return out;
}

double first_integral_residual(const SpaceForm& sf, NeckParam a,
                               const ProfilePoint& p) {
  return p.dx1 * p.dx1 - profile_potential(sf, a, p.x1);
}

double relative_first_integral_residual(const SpaceForm& sf, NeckParam a,
                                        const ProfilePoint& p) {
  const double scale =
      std::max({1.0, p.dx1 * p.dx1, std::abs(sf.c) * p.x1 * p.x1});
  return first_integral_residual(sf, a, p) / scale;
}

}  // namespace catenoid
