#pragma once

// Second fundamental form analytics for minimal hypersurfaces in space forms:
// principal curvatures and |A|^2 of catenoid profiles, the Laplacian of
// axially symmetric functions, the Simons-equation residual
//
//   |A| Δ|A| + |A|^4 - (2/n) |∇|A||^2 - n c |A|^2,
//
// and the pointwise decomposition |∇A|^2 = (1 + 2/n) |∇|A||^2 + E1 + E2 + E3
// on raw (h_ij, h_ijk) data.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "catenoid/profile.hpp"
#include "catenoid/spaceform.hpp"

namespace catenoid::simons {

/// lambda has multiplicity n - 1, mu multiplicity 1.
struct PrincipalCurvatures {
  double lambda;
  double mu;
};

/// Throws DomainError if 1 - c x1^2 - x1'^2 <= 0.
PrincipalCurvatures principal_curvatures(const SpaceForm& sf,
                                         const ProfilePoint& p);

/// |(n-1) lambda + mu| / |mu| together with the amplification of rounding
/// in the state (x1, x1', x1'') by the cancellations in 1 - c x1^2 - x1'^2
/// and x1'' + c x1. Far from the neck the radicand is many orders smaller
/// than its terms, so only relative / condition is meaningful there.
struct MinimalityDefect {
  double relative;
  double condition;
};

/// Throws DomainError like principal_curvatures.
MinimalityDefect minimality_defect(const SpaceForm& sf, const ProfilePoint& p);

/// a^2 n (n - 1) x1^(-2n), with `a` the profile ODE constant.
double sff_norm_sq(const SpaceForm& sf, NeckParam a, double x1);

/// phi(s) with first and second derivatives on an arclength grid.
struct AxialField {
  std::vector<double> s;
  std::vector<double> value;
  std::vector<double> d1;
  std::vector<double> d2;
};

struct AxialLaplacian {
  std::vector<double> s;
  std::vector<double> laplacian;     // phi'' + (n-1) (x1'/x1) phi'
  std::vector<double> grad_norm_sq;  // phi'^2
};

/// Throws DomainError if the field grid differs from the profile grid.
AxialLaplacian axial_laplacian(const SpaceForm& sf,
                               std::span<const ProfilePoint> profile,
                               const AxialField& field);

/// |A| = a sqrt(n(n-1)) x1^(-n) with closed-form s-derivatives from the
/// profile equations.
AxialField sff_norm_field(const SpaceForm& sf, NeckParam a,
                          std::span<const ProfilePoint> profile);

/// Second-order finite differences of `value` on a uniform grid: centered
/// in the interior, one-sided three-point at the two ends.
AxialField finite_difference_field(std::span<const double> s,
                                   std::span<const double> value);

struct ResidualSample {
  double s;
  double residual;
  double scale;  // largest magnitude among the four Simons terms

  double relative() const { return scale > 0.0 ? residual / scale : residual; }
};

/// Simons residual at each profile point for an arbitrary |A| field.
std::vector<ResidualSample> simons_residual(const SpaceForm& sf,
                                            std::span<const ProfilePoint> profile,
                                            const AxialField& norm_field);

/// Simons residual with analytic derivatives of |A|.
std::vector<ResidualSample> simons_residual(const SpaceForm& sf, NeckParam a,
                                            std::span<const ProfilePoint> profile);

/// Serial reference of the analytic residual kernel.
std::vector<ResidualSample> simons_residual_reference(
    const SpaceForm& sf, NeckParam a, std::span<const ProfilePoint> profile);

/// Residual with |A| sampled exactly and differentiated by finite
/// differences; the profile must be uniformly spaced in s.
std::vector<ResidualSample> simons_residual_fd(const SpaceForm& sf, NeckParam a,
                                               std::span<const ProfilePoint> profile);

/// Largest |relative()| over the samples; `skip_ends` drops the first and
/// last sample (one-sided stencils).
double max_relative_residual(std::span<const ResidualSample> samples,
                             bool skip_ends = false);

/// Second fundamental form in a principal frame: h_ij = lambda_i delta_ij
/// and its covariant derivative h_ijk (row-major n x n x n).
class SFFData {
 public:
  SFFData(std::vector<double> lambda, std::vector<double> h);

  int n() const { return n_; }
  double lambda(int i) const { return lambda_[i]; }
  double h(int i, int j, int k) const { return h_[(i * n_ + j) * n_ + k]; }
  double norm_sq() const;  // |A|^2

  /// Largest violation among: trace sum lambda, full symmetry of h_ijk and
  /// the traces sum_i h_iik.
  double invariant_defect() const;

 private:
  int n_;
  std::vector<double> lambda_;
  std::vector<double> h_;
};

struct SimonsTerms {
  double e1;
  double e2;
  double e3;
  double e;
};

/// E1 sums h_ijk^2 over ordered triples of distinct indices; E2 and E3 sum
/// over unordered index pairs:
///   E2 = (2/n) sum_i sum_{j<k; j,k != i} (h_kki - h_jji)^2
///   E3 = (1 + 2/n) |A|^-2 sum_k sum_{i<j} (lambda_i h_jjk - lambda_j h_iik)^2
/// With these pair conventions |∇A|^2 = (1 + 2/n)|∇|A||^2 + E holds exactly
/// for fully symmetric, trace-free h_ijk.
SimonsTerms e_terms(const SFFData& data);

struct IdentitySides {
  double lhs;  // |∇A|^2
  double rhs;  // (1 + 2/n) |∇|A||^2 + E
};

IdentitySides identity_check(const SFFData& data);

/// Random admissible data: trace-free lambda and a fully symmetric h_ijk
/// projected onto sum_i h_iik = 0.
SFFData random_admissible(int n, std::mt19937_64& rng);

struct IdentityTrialSummary {
  int trials = 0;
  double max_relative_mismatch = 0.0;
  double min_e = 0.0;
  double max_e = 0.0;
};

/// OpenMP kernel: `trials` independent identity checks, trial i seeded from
/// (seed, i) so the result does not depend on thread count.
IdentityTrialSummary identity_trials(int n, int trials, std::uint64_t seed);

/// Serial reference for identity_trials; identical output.
IdentityTrialSummary identity_trials_reference(int n, int trials,
                                               std::uint64_t seed);

/// Block metric of the rotation hypersurface: alpha x1^2 on the sphere
/// directions, 1 along the profile.
struct InducedMetric {
  Eigen::MatrixXd g;

  double determinant() const { return g.determinant(); }
};

/// Throws DomainError unless alpha is square, symmetric and positive definite.
InducedMetric induced_metric(const SpaceForm& sf, double x1,
                             const Eigen::MatrixXd& alpha);

}  // namespace catenoid::simons
