#pragma once

// Numerical building blocks shared by the geometry modules: adaptive
// Gauss-Kronrod quadrature, a fixed composite Gauss-Legendre rule (used for
// convergence-order checks), bracketed bisection and an embedded
// Dormand-Prince 5(4) integrator with exact sub-stepping for output points
// and event refinement.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "catenoid/errors.hpp"

namespace catenoid::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // conservative |K15 - G7| summed over panels
  int evaluations = 0;
};

struct QuadratureTolerance {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  int max_panels = 4000;
};

namespace detail {

// Kronrod abscissae on [-1, 1]; odd indices (1, 3, 5, 7) are the Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod15(const F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(mid);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive G7-K15 quadrature on a finite interval. The integrand
/// is never evaluated at the interval endpoints.
template <class F>
QuadratureResult integrate(const F& f, double lo, double hi,
                           const QuadratureTolerance& tol = {}) {
  if (lo == hi) return {};
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::kronrod15(f, lo, hi));
  double total = panels.top().value;
  double error = panels.top().error;
  int evaluations = 15;
  int count = 1;
  while (error > std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) {
    if (count >= tol.max_panels) {
      throw ConvergenceError("quadrature did not converge: error estimate " +
                             std::to_string(error) + " after " +
                             std::to_string(count) + " panels");
    }
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Panel cannot be split further in double precision; keep it.
      panels.push({worst.lo, worst.hi, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    const detail::Panel left = detail::kronrod15(f, worst.lo, mid);
    const detail::Panel right = detail::kronrod15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    evaluations += 30;
    ++count;
  }
  // Re-sum from the panels so the value does not carry running-update drift.
  double sum = 0.0;
  double err = 0.0;
  std::vector<detail::Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (const auto& p : all) {
    sum += p.value;
    err += p.error;
  }
  return {sum, err, evaluations};
}

/// Composite two-point Gauss-Legendre rule on `panels` equal panels.
/// Fourth order for smooth integrands; endpoints are never evaluated.
template <class F>
double gauss_legendre_composite(const F& f, double lo, double hi, int panels) {
  const double width = (hi - lo) / panels;
  const double offset = 0.5 * width / std::sqrt(3.0);
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = lo + (i + 0.5) * width;
    sum += f(mid - offset) + f(mid + offset);
  }
  return 0.5 * width * sum;
}

/// Bisection on a sign change of f over [lo, hi]. Stops when the bracket is
/// narrower than `x_tol` or cannot be split further.
template <class F>
double bisect(const F& f, double lo, double hi, double x_tol = 0.0) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw ConvergenceError("bisect: no sign change on bracket");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi)) ||
        std::abs(hi - lo) <= x_tol) {
      break;
    }
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double initial_step = 1e-3;
  double min_step = 1e-13;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
struct Step {
  double t0, t1;
  State<N> y0, y1;
};

template <std::size_t N, class Rhs>
class DormandPrince {
 public:
  explicit DormandPrince(Rhs rhs, StepControl control = {})
      : rhs_(std::move(rhs)), control_(control) {}

  const StepControl& control() const { return control_; }

  /// One uncontrolled step of size dt from (t, y). Used to land exactly on
  /// output points and events inside an accepted step.
  State<N> substep(double t, const State<N>& y, double dt) const {
    State<N> err{};
    std::array<State<N>, 7> k;
    k[0] = rhs_(t, y);
    return stage(t, y, dt, k, err);
  }

  /// Adaptive integration from t0 to t_end (either direction). `visit` is
  /// called with every accepted step and may return false to stop early.
  template <class Visitor>
  void drive(double t0, State<N> y0, double t_end, Visitor&& visit) const {
    const double direction = t_end >= t0 ? 1.0 : -1.0;
    double t = t0;
    State<N> y = y0;
    double h = std::min(control_.initial_step, std::abs(t_end - t0));
    std::array<State<N>, 7> k;
    k[0] = rhs_(t, y);
    std::size_t steps = 0;
    while (direction * (t_end - t) > 0.0) {
      if (++steps > control_.max_steps) {
        throw ConvergenceError("Dormand-Prince: step budget exhausted");
      }
      h = std::min({h, control_.max_step, std::abs(t_end - t)});
      if (h < control_.min_step && std::abs(t_end - t) > control_.min_step) {
        throw ConvergenceError("Dormand-Prince: step size collapsed at t=" +
                               std::to_string(t));
      }
      State<N> err{};
      const State<N> y_new = stage(t, y, direction * h, k, err);
      double norm = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double scale =
            control_.abs_tol +
            control_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        norm = std::max(norm, std::abs(err[i]) / scale);
      }
      if (!std::isfinite(norm)) {
        h *= 0.25;
        k[0] = rhs_(t, y);
        continue;
      }
      if (norm <= 1.0) {
        const double t_new =
            (std::abs(t_end - t) <= h) ? t_end : t + direction * h;
        const Step<N> step{t, t_new, y, y_new};
        t = t_new;
        y = y_new;
        k[0] = k[6];  // first-same-as-last
        if (!visit(step)) return;
        const double grow =
            norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        h *= grow;
      } else {
        h *= std::clamp(0.9 * std::pow(norm, -0.2), 0.1, 0.9);
      }
    }
  }

 private:
  // Evaluates stages 2..7 given k[0] = f(t, y). On return k[6] = f(t+dt, y1).
  State<N> stage(double t, const State<N>& y, double dt,
                 std::array<State<N>, 7>& k, State<N>& err) const {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                            a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                            b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                            b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                            e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                            e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    State<N> tmp;
    auto combine = [&](auto&& coeffs) {
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * coeffs(i);
      return tmp;
    };
    k[1] = rhs_(t + dt / 5.0, combine([&](std::size_t i) { return a21 * k[0][i]; }));
    k[2] = rhs_(t + 3.0 * dt / 10.0, combine([&](std::size_t i) {
                  return a31 * k[0][i] + a32 * k[1][i];
                }));
    k[3] = rhs_(t + 4.0 * dt / 5.0, combine([&](std::size_t i) {
                  return a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i];
                }));
    k[4] = rhs_(t + 8.0 * dt / 9.0, combine([&](std::size_t i) {
                  return a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] +
                         a54 * k[3][i];
                }));
    k[5] = rhs_(t + dt, combine([&](std::size_t i) {
                  return a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] +
                         a64 * k[3][i] + a65 * k[4][i];
                }));
    State<N> y1;
    for (std::size_t i = 0; i < N; ++i) {
      y1[i] = y[i] + dt * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] +
                           b5 * k[4][i] + b6 * k[5][i]);
    }
    k[6] = rhs_(t + dt, y1);
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = dt * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] +
                     e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
    }
    return y1;
  }

  Rhs rhs_;
  StepControl control_;
};

template <std::size_t N, class Rhs>
DormandPrince<N, Rhs> make_dormand_prince(Rhs rhs, StepControl control = {}) {
  return DormandPrince<N, Rhs>(std::move(rhs), control);
}

}  // namespace catenoid::numerics
