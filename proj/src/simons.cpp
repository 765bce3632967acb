#include "catenoid/simons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "catenoid/errors.hpp"

namespace catenoid::simons {

namespace {

// E3 and |∇|A|| divide by |A|^2; below this the point is treated as
// totally geodesic.
constexpr double kMinNormSq = 1e-14;

ResidualSample residual_at(const SpaceForm& sf, double s, double phi,
                           double laplacian, double grad_sq) {
  const double t_lap = phi * laplacian;
  const double t_quartic = phi * phi * phi * phi;
  const double t_grad = 2.0 / sf.n * grad_sq;
  const double t_curv = sf.n * sf.c * phi * phi;
  const double scale = std::max({std::abs(t_lap), std::abs(t_quartic),
                                 std::abs(t_grad), std::abs(t_curv)});
  return {s, t_lap + t_quartic - t_grad - t_curv, scale};
}

// Value and the two s-derivatives of |A| = K x1^-n at one profile sample.
struct NormJet {
  double value, d1, d2;
};

NormJet norm_jet(const SpaceForm& sf, NeckParam a, const ProfilePoint& p) {
  const int n = sf.n;
  const double k = a.a * std::sqrt(static_cast<double>(n) * (n - 1));
  const double x = p.x1;
  const double xn = std::pow(x, -n);
  const double value = k * xn;
  const double d1 = -n * value * p.dx1 / x;
  const double d2 =
      n * value * ((n + 1) * p.dx1 * p.dx1 / (x * x) - p.ddx1 / x);
  return {value, d1, d2};
}

ResidualSample analytic_sample(const SpaceForm& sf, NeckParam a,
                               const ProfilePoint& p) {
  const NormJet j = norm_jet(sf, a, p);
  const double lap = j.d2 + (sf.n - 1) * (p.dx1 / p.x1) * j.d1;
  return residual_at(sf, p.s, j.value, lap, j.d1 * j.d1);
}

void check_uniform(std::span<const double> s) {
  if (s.size() < 4) {
    throw DomainError("finite differences need at least 4 samples");
  }
  const double h = s[1] - s[0];
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::abs((s[i] - s[i - 1]) - h) > 1e-9 * std::abs(h)) {
      throw DomainError("finite differences need a uniform grid");
    }
  }
}

}  // namespace

PrincipalCurvatures principal_curvatures(const SpaceForm& sf,
                                         const ProfilePoint& p) {
  const double radicand = 1.0 - sf.c * p.x1 * p.x1 - p.dx1 * p.dx1;
  if (!(radicand > 0.0)) {
    throw DomainError("principal_curvatures: 1 - c x1^2 - x1'^2 = " +
                      std::to_string(radicand) + " is not positive");
  }
  const double root = std::sqrt(radicand);
  return {-root / p.x1, (p.ddx1 + sf.c * p.x1) / root};
}

MinimalityDefect minimality_defect(const SpaceForm& sf, const ProfilePoint& p) {
  const PrincipalCurvatures pc = principal_curvatures(sf, p);
  const double c_x2 = std::abs(sf.c) * p.x1 * p.x1;
  const double radicand = 1.0 - sf.c * p.x1 * p.x1 - p.dx1 * p.dx1;
  const double numerator = p.ddx1 + sf.c * p.x1;
  const double cond_rad = (1.0 + c_x2 + p.dx1 * p.dx1) / radicand;
  const double cond_num =
      numerator == 0.0 ? std::numeric_limits<double>::infinity()
                       : (std::abs(p.ddx1) + std::abs(sf.c * p.x1)) / std::abs(numerator);
  const double trace = (sf.n - 1) * pc.lambda + pc.mu;
  return {std::abs(trace) / std::abs(pc.mu), std::max(cond_rad, cond_num)};
}

double sff_norm_sq(const SpaceForm& sf, NeckParam a, double x1) {
  if (!(x1 > 0.0)) throw DomainError("sff_norm_sq: x1 must be > 0");
  const double n = sf.n;
  return a.a * a.a * n * (n - 1.0) * std::pow(x1, -2.0 * n);
}

AxialLaplacian axial_laplacian(const SpaceForm& sf,
                               std::span<const ProfilePoint> profile,
                               const AxialField& field) {
  const std::size_t m = profile.size();
  if (field.s.size() != m || field.value.size() != m || field.d1.size() != m ||
      field.d2.size() != m) {
    throw DomainError("axial_laplacian: field and profile sizes differ");
  }
  AxialLaplacian out;
  out.s.resize(m);
  out.laplacian.resize(m);
  out.grad_norm_sq.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const ProfilePoint& p = profile[i];
    if (std::abs(field.s[i] - p.s) > 1e-12 * std::max(1.0, std::abs(p.s))) {
      throw DomainError("axial_laplacian: field grid does not match profile");
    }
    out.s[i] = p.s;
    out.laplacian[i] = field.d2[i] + (sf.n - 1) * (p.dx1 / p.x1) * field.d1[i];
    out.grad_norm_sq[i] = field.d1[i] * field.d1[i];
  }
  return out;
}

AxialField sff_norm_field(const SpaceForm& sf, NeckParam a,
                          std::span<const ProfilePoint> profile) {
  AxialField f;
  for (const ProfilePoint& p : profile) {
    const NormJet j = norm_jet(sf, a, p);
    f.s.push_back(p.s);
    f.value.push_back(j.value);
    f.d1.push_back(j.d1);
    f.d2.push_back(j.d2);
  }
  return f;
}

AxialField finite_difference_field(std::span<const double> s,
                                   std::span<const double> value) {
  if (s.size() != value.size()) {
    throw DomainError("finite_difference_field: size mismatch");
  }
  check_uniform(s);
  const std::size_t m = s.size();
  const double h = (s[m - 1] - s[0]) / static_cast<double>(m - 1);
  AxialField f;
  f.s.assign(s.begin(), s.end());
  f.value.assign(value.begin(), value.end());
  f.d1.resize(m);
  f.d2.resize(m);
  const auto& v = f.value;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    f.d1[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    f.d2[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
  }
  f.d1[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  f.d2[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
  const std::size_t e = m - 1;
  f.d1[e] = (3.0 * v[e] - 4.0 * v[e - 1] + v[e - 2]) / (2.0 * h);
  f.d2[e] = (2.0 * v[e] - 5.0 * v[e - 1] + 4.0 * v[e - 2] - v[e - 3]) / (h * h);
  return f;
}

std::vector<ResidualSample> simons_residual(const SpaceForm& sf,
                                            std::span<const ProfilePoint> profile,
                                            const AxialField& norm_field) {
  const AxialLaplacian lap = axial_laplacian(sf, profile, norm_field);
  std::vector<ResidualSample> out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out[i] = residual_at(sf, profile[i].s, norm_field.value[i], lap.laplacian[i],
                         lap.grad_norm_sq[i]);
  }
  return out;
}

std::vector<ResidualSample> simons_residual(const SpaceForm& sf, NeckParam a,
                                            std::span<const ProfilePoint> profile) {
  std::vector<ResidualSample> out(profile.size());
  const auto count = static_cast<long>(profile.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out[i] = analytic_sample(sf, a, profile[i]);
  return out;
}

std::vector<ResidualSample> simons_residual_reference(
    const SpaceForm& sf, NeckParam a, std::span<const ProfilePoint> profile) {
  std::vector<ResidualSample> out;
  out.reserve(profile.size());
  for (const ProfilePoint& p : profile) out.push_back(analytic_sample(sf, a, p));
  return out;
}

std::vector<ResidualSample> simons_residual_fd(const SpaceForm& sf, NeckParam a,
                                               std::span<const ProfilePoint> profile) {
  std::vector<double> s;
  std::vector<double> value;
  s.reserve(profile.size());
  value.reserve(profile.size());
  for (const ProfilePoint& p : profile) {
    s.push_back(p.s);
    value.push_back(std::sqrt(sff_norm_sq(sf, a, p.x1)));
  }
  return simons_residual(sf, profile, finite_difference_field(s, value));
}

double max_relative_residual(std::span<const ResidualSample> samples,
                             bool skip_ends) {
  std::size_t begin = 0;
  std::size_t end = samples.size();
  if (skip_ends && end >= 2) {
    ++begin;
    --end;
  }
  double worst = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    worst = std::max(worst, std::abs(samples[i].relative()));
  }
  return worst;
}

// ---------------------------------------------------------------------------

SFFData::SFFData(std::vector<double> lambda, std::vector<double> h)
    : n_(static_cast<int>(lambda.size())),
      lambda_(std::move(lambda)),
      h_(std::move(h)) {
  if (n_ < 2) throw DomainError("SFFData: n must be >= 2");
  if (h_.size() != static_cast<std::size_t>(n_ * n_ * n_)) {
    throw DomainError("SFFData: h must hold n^3 entries");
  }
}

double SFFData::norm_sq() const {
  double sum = 0.0;
  for (double l : lambda_) sum += l * l;
  return sum;
}

double SFFData::invariant_defect() const {
  double defect = 0.0;
  double trace = 0.0;
  for (double l : lambda_) trace += l;
  defect = std::abs(trace);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        const double v = h(i, j, k);
        defect = std::max({defect, std::abs(v - h(j, i, k)),
                           std::abs(v - h(i, k, j)), std::abs(v - h(k, j, i))});
      }
    }
  }
  for (int k = 0; k < n_; ++k) {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += h(i, i, k);
    defect = std::max(defect, std::abs(t));
  }
  return defect;
}

namespace {

void check_admissible(const SFFData& d) {
  double magnitude = 1.0;
  for (int i = 0; i < d.n(); ++i) {
    magnitude = std::max(magnitude, std::abs(d.lambda(i)));
    for (int j = 0; j < d.n(); ++j) {
      for (int k = 0; k < d.n(); ++k) {
        magnitude = std::max(magnitude, std::abs(d.h(i, j, k)));
      }
    }
  }
  if (d.invariant_defect() > 1e-10 * magnitude) {
    throw DomainError(
        "SFFData violates minimality or Codazzi symmetry (defect " +
        std::to_string(d.invariant_defect()) + ")");
  }
}

// sum_k (sum_i lambda_i h_iik)^2, i.e. |A|^2 |∇|A||^2.
double gradient_numerator(const SFFData& d) {
  double sum = 0.0;
  for (int k = 0; k < d.n(); ++k) {
    double dot = 0.0;
    for (int i = 0; i < d.n(); ++i) dot += d.lambda(i) * d.h(i, i, k);
    sum += dot * dot;
  }
  return sum;
}

}  // namespace

SimonsTerms e_terms(const SFFData& d) {
  check_admissible(d);
  const int n = d.n();
  double e1 = 0.0;
  double e2 = 0.0;
  double e3_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double v = d.h(i, j, k);
        e1 += v * v;
        if (j < k) {
          const double diff = d.h(k, k, i) - d.h(j, j, i);
          e2 += diff * diff;
        }
      }
    }
  }
  e2 *= 2.0 / n;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double v = d.lambda(i) * d.h(j, j, k) - d.lambda(j) * d.h(i, i, k);
        e3_sum += v * v;
      }
    }
  }
  const double norm_sq = d.norm_sq();
  double e3 = 0.0;
  if (norm_sq < kMinNormSq) {
    if (e3_sum != 0.0) {
      throw DomainError("e_terms: E3 undefined where |A| = 0");
    }
  } else {
    e3 = (1.0 + 2.0 / n) * e3_sum / norm_sq;
  }
  return {e1, e2, e3, e1 + e2 + e3};
}

IdentitySides identity_check(const SFFData& d) {
  const double norm_sq = d.norm_sq();
  if (norm_sq < kMinNormSq) {
    throw DomainError("identity_check: needs |A| > 0");
  }
  const SimonsTerms e = e_terms(d);
  const int n = d.n();
  double lhs = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) lhs += d.h(i, j, k) * d.h(i, j, k);
    }
  }
  const double grad_sq = gradient_numerator(d) / norm_sq;
  return {lhs, (1.0 + 2.0 / n) * grad_sq + e.e};
}

SFFData random_admissible(int n, std::mt19937_64& rng) {
  if (n < 2) throw DomainError("random_admissible: n must be >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> lambda(n);
  double mean = 0.0;
  for (double& l : lambda) {
    l = normal(rng);
    mean += l;
  }
  mean /= n;
  for (double& l : lambda) l -= mean;

  const auto at = [n](int i, int j, int k) { return (i * n + j) * n + k; };
  // Draw one value per sorted triple and copy it to every permutation.
  std::vector<double> h(static_cast<std::size_t>(n * n * n));
  const auto assign_sym = [&](int i, int j, int k, double v) {
    h[at(i, j, k)] = h[at(i, k, j)] = h[at(j, i, k)] = v;
    h[at(j, k, i)] = h[at(k, i, j)] = h[at(k, j, i)] = v;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j; k < n; ++k) assign_sym(i, j, k, normal(rng));
    }
  }
  // Symmetric projection onto sum_i h_iik = 0:
  // h_ijk -= (delta_ij t_k + delta_jk t_i + delta_ik t_j) / (n + 2).
  std::vector<double> trace(n, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) trace[k] += h[at(i, i, k)];
  }
  const double w = 1.0 / (n + 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        const double corr = ((i == j) ? trace[k] : 0.0) +
                            ((j == k) ? trace[i] : 0.0) +
                            ((i == k) ? trace[j] : 0.0);
        assign_sym(i, j, k, h[at(i, j, k)] - w * corr);
      }
    }
  }
  return SFFData(std::move(lambda), std::move(h));
}

namespace {

struct TrialOutcome {
  double mismatch;
  double e;
};

TrialOutcome run_trial(int n, std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  const SFFData data = random_admissible(n, rng);
  const IdentitySides sides = identity_check(data);
  const double denom = std::max(std::abs(sides.lhs),
                                std::numeric_limits<double>::min());
  return {std::abs(sides.lhs - sides.rhs) / denom, e_terms(data).e};
}

IdentityTrialSummary summarize(const std::vector<TrialOutcome>& outcomes) {
  IdentityTrialSummary s;
  s.trials = static_cast<int>(outcomes.size());
  if (outcomes.empty()) return s;
  s.min_e = s.max_e = outcomes.front().e;
  for (const TrialOutcome& o : outcomes) {
    s.max_relative_mismatch = std::max(s.max_relative_mismatch, o.mismatch);
    s.min_e = std::min(s.min_e, o.e);
    s.max_e = std::max(s.max_e, o.e);
  }
  return s;
}

}  // namespace

IdentityTrialSummary identity_trials(int n, int trials, std::uint64_t seed) {
  if (trials < 0) throw DomainError("identity_trials: trials must be >= 0");
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < trials; ++i) outcomes[i] = run_trial(n, seed, i);
  return summarize(outcomes);
}

IdentityTrialSummary identity_trials_reference(int n, int trials,
                                               std::uint64_t seed) {
  if (trials < 0) throw DomainError("identity_trials: trials must be >= 0");
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) outcomes.push_back(run_trial(n, seed, i));
  return summarize(outcomes);
}

InducedMetric induced_metric(const SpaceForm& sf, double x1,
                             const Eigen::MatrixXd& alpha) {
  const int m = sf.n - 1;
  if (alpha.rows() != m || alpha.cols() != m) {
    throw DomainError("induced_metric: alpha must be (n-1) x (n-1)");
  }
  if (!alpha.isApprox(alpha.transpose(), 1e-12)) {
    throw DomainError("induced_metric: alpha must be symmetric");
  }
  if (alpha.llt().info() != Eigen::Success) {
    throw DomainError("induced_metric: alpha must be positive definite");
  }
  if (!(x1 > 0.0)) throw DomainError("induced_metric: x1 must be > 0");
  InducedMetric out;
  out.g = Eigen::MatrixXd::Zero(sf.n, sf.n);
  out.g.topLeftCorner(m, m) = alpha * (x1 * x1);
  out.g(m, m) = 1.0;
  return out;
}

}  // namespace catenoid::simons
