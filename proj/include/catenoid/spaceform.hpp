#pragma once

// Space forms of constant sectional curvature c, the warp function of the
// rotation half-space metric ds^2 = f'(y)^2 dx^2 + dy^2, and the Clifford
// minimal hypersurfaces S^m x S^{n-m} of the sphere.

namespace catenoid {

/// Ambient curvature c and hypersurface dimension n (the space form has
/// dimension n + 1).
struct SpaceForm {
  double c;
  int n;

  /// Throws DomainError unless n >= 2 and c is finite.
  SpaceForm(double curvature, int dimension);
};

/// f, f' and f'' at one point; f'' + c f = 0 and f(0) = 0, f'(0) = 1.
struct WarpProfile {
  double f;
  double df;
  double ddf;
};

/// Largest admissible distance to the rotation axis: pi / (2 sqrt(c)) for
/// c > 0, +infinity otherwise.
double max_axis_distance(const SpaceForm& sf);

/// Warp function sinh / identity / sin depending on the sign of c. Small
/// |c| y^2 switches to a Taylor series so the three branches join smoothly.
WarpProfile warp(const SpaceForm& sf, double y);

/// Inverse of f on the admissible range: the geodesic distance y with
/// f(y) = value.
double inverse_warp(const SpaceForm& sf, double value);

struct CliffordSpec {
  int m;
  int n;
  double c;

  /// Throws DomainError unless 1 <= m <= n - 1, n >= 2 and c > 0.
  CliffordSpec(int m_, int n_, double c_);
};

struct CliffordRadii {
  double r1;  // radius of S^m
  double r2;  // radius of S^{n-m}
};

CliffordRadii clifford_radii(const CliffordSpec& spec);

/// The two constant principal curvatures of S^m x S^{n-m} in S^{n+1}(c).
struct CliffordCurvatures {
  double lambda;  // multiplicity m
  int lambda_multiplicity;
  double nu;  // multiplicity n - m
  int nu_multiplicity;
  double norm_sq;  // |A|^2 = n c

  double trace() const;
};

CliffordCurvatures clifford_sff(const CliffordSpec& spec);

}  // namespace catenoid
