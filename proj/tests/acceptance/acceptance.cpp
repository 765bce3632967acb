// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catenoid/otsuki.hpp"
#include "catenoid/profile.hpp"
#include "catenoid/simons.hpp"
#include "catenoid/spaceform.hpp"
#include "cli/commands.hpp"
#include "support/oracles.hpp"

using namespace catenoid;

namespace {

constexpr double kPi = std::numbers::pi;

// High-precision quadrature values of T(a) near both ends of the range.
struct LimitOracle {
  int n;
  double t_low;   // T(1e-4)
  double t_high;  // T(1/sqrt(n) - 1e-4)
};
constexpr LimitOracle kLimitOracles[] = {
    {3, 3.167811132575737, 4.442882918721875},
    {4, 3.207590900385047, 4.442882916767183},
    {5, 3.24115286534184, 4.44288291386135},
};

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome period_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  const auto r = otsuki::period(3, 0.42231);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = std::abs(r.period - 4.39823) <= 5e-4 &&
                  std::abs(r.period / kPi - 1.4) <= 2e-4 && seconds < 1.0;
  return {ok, fmt::format("T={:.9g} T/pi={:.9g} time={:.3g}s", r.period, r.period / kPi,
                          seconds)};
}

Outcome upper_root() {
  const double a = 0.42231;
  const double a1 = otsuki::upper_root_a1(3, a);
  const double closed = (-a + std::sqrt(4.0 - 3.0 * a * a)) / 2.0;
  const bool ok = std::abs(a1 - 0.71957) <= 1e-5 && std::abs(a1 - closed) <= 1e-10;
  return {ok, fmt::format("a1={:.12g} |a1-closed form|={:.3g}", a1, std::abs(a1 - closed))};
}

Outcome closed_curve_recovery() {
  const auto hits = otsuki::find_closed(3, 7, 10);
  bool ok = !hits.empty();
  double best = std::numeric_limits<double>::infinity();
  double worst_t = 0.0;
  for (double a : hits) {
    best = std::min(best, std::abs(a - 0.42231));
    worst_t = std::max(worst_t, std::abs(otsuki::period(3, a).period - 1.4 * kPi));
  }
  ok = ok && best <= 1e-4 && worst_t <= 1e-9;
  return {ok, fmt::format("hits={} |a-0.42231|={:.3g} |T-1.4pi|={:.3g}", hits.size(), best,
                          worst_t)};
}

Outcome period_range_and_limits() {
  bool ok = true;
  int samples = 0;
  std::string detail;
  for (const auto& o : kLimitOracles) {
    const double hi = otsuki::clifford_value(o.n) - 1e-4;
    for (int i = 0; i < 100; ++i) {
      const double a = 1e-4 + (hi - 1e-4) * i / 99.0;
      const double t = otsuki::period(o.n, a).period;
      ok = ok && t > kPi && t < 2 * kPi;
      ++samples;
    }
    const double t_low = otsuki::period(o.n, 1e-4).period;
    const double t_high = otsuki::period(o.n, hi).period;
    const double limit = std::sqrt(2.0) * kPi;
    // Neighborhoods: 1.2 times the oracle's own distance from the limit,
    // and agreement with the oracle itself.
    ok = ok && std::abs(t_low - kPi) <= 1.2 * std::abs(o.t_low - kPi) &&
         std::abs(t_low - o.t_low) <= 1e-8;
    ok = ok && std::abs(t_high - limit) <= 1.2 * std::abs(o.t_high - limit) &&
         std::abs(t_high - o.t_high) <= 1e-8;
    detail += fmt::format(" n={}: T(1e-4)-pi={:.4g} sqrt2pi-T(top)={:.4g};", o.n,
                          t_low - kPi, limit - t_high);
  }
  return {ok, fmt::format("{} grid values in (pi, 2pi);{}", samples, detail)};
}

Outcome simons_verification() {
  bool ok = true;
  double worst = 0.0;
  double worst_order = std::numeric_limits<double>::infinity();
  for (double c : {-1.0, 0.0, 1.0}) {
    for (int n : {3, 4, 5}) {
      for (double d : {0.5, 1.0}) {
        const SpaceForm sf(c, n);
        const NeckParam k(profile_constant(sf, d));
        ProfileOptions coarse_opts;
        coarse_opts.output_step = 0.02;
        ProfileOptions fine_opts;
        fine_opts.output_step = 0.01;
        const auto coarse = integrate_profile(sf, k, 4.0, coarse_opts);
        const auto fine = integrate_profile(sf, k, 4.0, fine_opts);
        const double analytic =
            simons::max_relative_residual(simons::simons_residual(sf, k, coarse));
        const double r1 =
            simons::max_relative_residual(simons::simons_residual_fd(sf, k, coarse), true);
        const double r2 =
            simons::max_relative_residual(simons::simons_residual_fd(sf, k, fine), true);
        const double order = std::log2(r1 / r2);
        worst = std::max(worst, analytic);
        worst_order = std::min(worst_order, order);
        ok = ok && analytic <= 1e-10 && order >= 1.9;
      }
    }
  }
  return {ok, fmt::format("18 cases, max analytic residual={:.3g}, min FD order={:.4g}",
                          worst, worst_order)};
}

Outcome first_integrals() {
  double otsuki_drift = 0.0;
  for (int n : {3, 4, 5}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const double a = frac * otsuki::clifford_value(n);
      const double t = otsuki::period(n, a).period;
      for (const auto& s : otsuki::integrate_support(n, a, 10.0 * t)) {
        otsuki_drift = std::max(otsuki_drift, std::abs(otsuki::first_integral(n, a, s) - 1.0));
      }
    }
  }
  {
    const double t = otsuki::period(3, 0.42231).period;
    for (const auto& s : otsuki::integrate_support(3, 0.42231, 10.0 * t)) {
      otsuki_drift =
          std::max(otsuki_drift, std::abs(otsuki::first_integral(3, 0.42231, s) - 1.0));
    }
  }
  double profile_residual = 0.0;
  for (double c : {-1.0, 0.0, 1.0}) {
    for (int n : {3, 4, 5}) {
      for (double d : {0.5, 1.0}) {
        const SpaceForm sf(c, n);
        const NeckParam k(profile_constant(sf, d));
        for (const auto& p : integrate_profile(sf, k, 10.0)) {
          profile_residual =
              std::max(profile_residual, std::abs(relative_first_integral_residual(sf, k, p)));
        }
      }
    }
  }
  const bool ok = otsuki_drift <= 1e-8 && profile_residual <= 1e-8;
  return {ok, fmt::format("max |Q-1| over 10 periods={:.3g}, max profile residual on [0,10]={:.3g}",
                          otsuki_drift, profile_residual)};
}

Outcome clifford_suite() {
  bool ok = true;
  double worst = 0.0;
  int cases = 0;
  for (double c : {0.5, 1.0, 2.0}) {
    for (int n = 2; n <= 8; ++n) {
      for (int m = 1; m < n; ++m) {
        const auto k = clifford_sff(CliffordSpec(m, n, c));
        worst = std::max(worst, std::abs(k.norm_sq - n * c));
        ok = ok && std::abs(k.norm_sq - n * c) <= 1e-12 && k.trace() == 0.0;
        ++cases;
      }
    }
  }
  return {ok, fmt::format("{} cases, max |normSq - nc|={:.3g}, traces exactly 0", cases, worst)};
}

Outcome e_term_suite() {
  bool ok = true;
  std::mt19937_64 rng(20240601);
  double min_term = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2000; ++i) {
    const auto t = simons::e_terms(simons::random_admissible(2 + i % 5, rng));
    min_term = std::min({min_term, t.e1, t.e2, t.e3});
  }
  ok = ok && min_term >= 0.0;
  double n2 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    n2 = std::max(n2, std::abs(simons::e_terms(simons::random_admissible(2, rng)).e));
  }
  ok = ok && n2 <= 1e-12;
  const auto s3 = simons::identity_trials(3, 1000, 3);
  const auto s4 = simons::identity_trials(4, 1000, 4);
  ok = ok && s3.max_relative_mismatch <= 1e-10 && s4.max_relative_mismatch <= 1e-10;
  return {ok, fmt::format("min E_i={:.3g}, n=2 max|E|={:.3g}, identity mismatch n=3 {:.3g}, "
                          "n=4 {:.3g}",
                          min_term, n2, s3.max_relative_mismatch, s4.max_relative_mismatch)};
}

Outcome euclidean_extent() {
  const double ext = euclidean_half_extent(3, NeckParam(1.0));
  const double oracle = catenoid::testing::euclidean_extent_oracle(3);
  bool ok = ext < kPi / 2 && std::abs(ext - oracle) <= 1e-8;
  double worst_scaling = 0.0;
  for (double a : {1e-3, 0.37, 2.0, 17.5, 1e4}) {
    const double scaled = euclidean_half_extent(3, NeckParam(a));
    const double rel = std::abs(scaled - a * ext) / (a * ext);
    worst_scaling = std::max(worst_scaling, rel);
  }
  ok = ok && worst_scaling <= 4 * std::numeric_limits<double>::epsilon();
  return {ok, fmt::format("extent={:.15g} |extent-oracle|={:.3g} scaling rel err={:.3g}", ext,
                          std::abs(ext - oracle), worst_scaling)};
}

std::string run_cli_capture(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "catenoid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Outcome cli_determinism() {
  const std::vector<std::vector<std::string>> configs{
      {"curve", "--c", "1", "--n", "3", "--a", "0.42231"},
      {"curve", "--c", "-1", "--n", "3", "--a", "0.2", "--format", "svg"},
      {"curve", "--c", "0", "--n", "4", "--a", "1"},
      {"period", "--n", "3", "--a-min", "0.01", "--a-max", "0.57", "--a-steps", "100"},
      {"find-closed", "--n", "3", "--p", "7", "--q", "10"},
      {"verify", "--c", "-1", "--n", "4", "--a", "0.5", "--seed", "9"},
  };
  bool ok = true;
  std::size_t bytes = 0;
  for (const auto& cfg : configs) {
    int c1 = 0, c2 = 0;
    const std::string first = run_cli_capture(cfg, c1);
    const std::string second = run_cli_capture(cfg, c2);
    ok = ok && c1 == 0 && c2 == 0 && !first.empty() && first == second &&
         first.find('\r') == std::string::npos;
    bytes += first.size();
  }
  return {ok, fmt::format("{} configurations, {} bytes compared", configs.size(), bytes)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 period T(3, 0.42231)", period_reproduction},
      {"2 upper root a1(3, 0.42231)", upper_root},
      {"3 closed-curve recovery for 7/10", closed_curve_recovery},
      {"4 period range and limits", period_range_and_limits},
      {"5 Simons residual along catenoids", simons_verification},
      {"6 first-integral conservation", first_integrals},
      {"7 Clifford suite", clifford_suite},
      {"8 E-term suite", e_term_suite},
      {"9 Euclidean extent", euclidean_extent},
      {"10 CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
