#include "catenoid/spaceform.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "catenoid/errors.hpp"

namespace catenoid {

namespace {

// Below this |c| y^2 the closed forms lose digits to cancellation in c -> 0;
// three series terms are exact to round-off there.
constexpr double kSeriesThreshold = 1e-8;

// Clears the low `bits` mantissa bits so that products with integers below
// 2^bits are exact.
double truncate_mantissa(double x, int bits) {
  auto raw = std::bit_cast<std::uint64_t>(x);
  raw &= ~((std::uint64_t{1} << bits) - 1);
  return std::bit_cast<double>(raw);
}

}  // namespace

SpaceForm::SpaceForm(double curvature, int dimension)
    : c(curvature), n(dimension) {
  if (n < 2) {
    throw DomainError("space form: n must be >= 2, got " + std::to_string(n));
  }
  if (!std::isfinite(c)) throw DomainError("space form: c must be finite");
}

double max_axis_distance(const SpaceForm& sf) {
  if (sf.c > 0.0) return std::numbers::pi / (2.0 * std::sqrt(sf.c));
  return std::numeric_limits<double>::infinity();
}

WarpProfile warp(const SpaceForm& sf, double y) {
  if (!(y >= 0.0) || y > max_axis_distance(sf)) {
    throw DomainError("warp: y outside [0, pi/(2 sqrt c)]");
  }
  const double c = sf.c;
  const double cy2 = c * y * y;
  WarpProfile w{};
  if (std::abs(cy2) < kSeriesThreshold) {
    w.f = y * (1.0 - cy2 / 6.0 + cy2 * cy2 / 120.0);
    w.df = 1.0 - cy2 / 2.0 + cy2 * cy2 / 24.0;
  } else if (c < 0.0) {
    const double k = std::sqrt(-c);
    w.f = std::sinh(k * y) / k;
    w.df = std::cosh(k * y);
  } else {
    const double k = std::sqrt(c);
    w.f = std::sin(k * y) / k;
    w.df = std::cos(k * y);
  }
  w.ddf = -c * w.f;
  return w;
}

double inverse_warp(const SpaceForm& sf, double value) {
  if (!(value >= 0.0)) throw DomainError("inverse_warp: negative argument");
  if (sf.c == 0.0) return value;
  if (sf.c < 0.0) {
    const double k = std::sqrt(-sf.c);
    return std::asinh(k * value) / k;
  }
  const double k = std::sqrt(sf.c);
  if (k * value > 1.0) throw DomainError("inverse_warp: beyond 1/sqrt(c)");
  return std::asin(k * value) / k;
}

CliffordSpec::CliffordSpec(int m_, int n_, double c_) : m(m_), n(n_), c(c_) {
  if (n < 2) throw DomainError("clifford: n must be >= 2");
  if (m < 1 || m > n - 1) throw DomainError("clifford: m must lie in [1, n-1]");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("clifford: c must be > 0");
}

CliffordRadii clifford_radii(const CliffordSpec& spec) {
  const double cn = spec.c * spec.n;
  return {std::sqrt(spec.m / cn), std::sqrt((spec.n - spec.m) / cn)};
}

double CliffordCurvatures::trace() const {
  return lambda_multiplicity * lambda + nu_multiplicity * nu;
}

CliffordCurvatures clifford_sff(const CliffordSpec& spec) {
  // At c = 1: lambda = sqrt((n-m)/m), nu = -sqrt(m/(n-m)). Both are integer
  // multiples of q = 1/sqrt(m (n-m)); scaling by sqrt(c) gives general c.
  const int m = spec.m;
  const int k = spec.n - spec.m;
  const double product = static_cast<double>(m) * k;
  const int guard_bits = std::bit_width(static_cast<unsigned>(m * k)) + 1;
  const double q =
      truncate_mantissa(std::sqrt(spec.c) / std::sqrt(product), guard_bits);
  CliffordCurvatures out{};
  out.lambda = k * q;
  out.lambda_multiplicity = m;
  out.nu = -m * q;
  out.nu_multiplicity = k;
  out.norm_sq = m * out.lambda * out.lambda + k * out.nu * out.nu;
  return out;
}

}  // namespace catenoid
