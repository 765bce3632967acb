#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "artifact.hpp"
#include "catenoid/errors.hpp"
#include "catenoid/otsuki.hpp"
#include "catenoid/profile.hpp"
#include "catenoid/simons.hpp"
#include "catenoid/spaceform.hpp"

namespace catenoid::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double c = 1.0;
  int n = 3;
  std::optional<double> a;
  std::optional<double> a_min;
  std::optional<double> a_max;
  int a_steps = 100;
  std::optional<double> tol;
  std::optional<int> grid;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
  int trials = 1000;
  int p = 0;
  int q = 0;
  int m = 1;
  std::optional<double> y_max;
  double s_max = 4.0;
  double perturb_dx1 = 0.0;
};

// Commands write into a buffer first so that a failing command never
// leaves a partial file behind.
using Command = std::function<int(const RunConfig&, std::ostream& out,
                                  std::ostream& err)>;

Metadata base_metadata(const std::string& command, const RunConfig& cfg) {
  return {{"generator", kGenerator},
          {"command", command},
          {"c", format_number(cfg.c)},
          {"n", std::to_string(cfg.n)}};
}

double rounded(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> ok,
                    const char* command) {
  for (const char* f : ok) {
    if (cfg.format == f) return;
  }
  throw UsageError(std::string(command) + ": unsupported --format " + cfg.format);
}

double require_a(const RunConfig& cfg, const char* command) {
  if (!cfg.a) throw UsageError(std::string(command) + ": --a is required");
  return *cfg.a;
}

void require_sphere(const RunConfig& cfg, const char* command) {
  if (!(cfg.c > 0.0)) {
    throw DomainError(std::string(command) + " needs a spherical ambient (c > 0)");
  }
}

// ---------------------------------------------------------------- curve

struct Closure {
  long p;
  long q;
  double predicted_gap;
};

// Continued-fraction convergents p/q of T / (2 pi) with q <= max_q; the
// first whose rotation defect 2 r |sin((qT - 2 pi p)/2)| is within
// gap_tol wins, otherwise the one with the smallest defect.
Closure closing_fraction(double period, double radius, long max_q,
                         double gap_tol) {
  const double ratio = period / (2.0 * std::numbers::pi);
  long p_prev = 1, q_prev = 0;
  long p_cur = static_cast<long>(std::floor(ratio)), q_cur = 1;
  double rest = ratio - std::floor(ratio);
  std::optional<Closure> best;
  while (q_cur <= max_q) {
    const double defect = q_cur * period - 2.0 * std::numbers::pi * p_cur;
    const Closure cand{p_cur, q_cur,
                       2.0 * radius * std::abs(std::sin(0.5 * defect))};
    if (!best || cand.predicted_gap < best->predicted_gap) best = cand;
    if (cand.predicted_gap <= gap_tol || rest < 1e-15) return cand;
    const double inv = 1.0 / rest;
    const auto digit = static_cast<long>(std::floor(inv));
    rest = inv - digit;
    const long p_next = digit * p_cur + p_prev;
    const long q_next = digit * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return *best;
}

CurveArtifact hyperbolic_or_flat_curve(const RunConfig& cfg) {
  const SpaceForm sf(cfg.c, cfg.n);
  const NeckParam a(require_a(cfg, "curve"));
  const double y_max =
      cfg.y_max.value_or(cfg.c == 0.0 ? 10.0 * a.a : a.a + 4.0 / std::sqrt(-cfg.c));
  if (!(y_max > a.a)) throw UsageError("curve: --y-max must exceed --a");
  const int samples = cfg.grid.value_or(200);
  if (samples < 2) throw UsageError("curve: --grid must be >= 2");
  numerics::QuadratureTolerance tol;
  if (cfg.tol) tol.abs_tol = tol.rel_tol = *cfg.tol;

  // Uniform in sqrt(y - a), which resolves the vertical tangent at the neck.
  std::vector<double> ys(static_cast<std::size_t>(samples));
  std::vector<double> xs(ys.size());
  const double span = std::sqrt(y_max - a.a);
  for (int i = 0; i < samples; ++i) {
    const double u = span * i / (samples - 1);
    ys[i] = i + 1 == samples ? y_max : a.a + u * u;
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    xs[i] = generating_curve_x(sf, a, ys[i], tol);
  }

  CurveArtifact curve;
  curve.metadata = base_metadata("curve", cfg);
  curve.metadata.push_back({"a", format_number(a.a)});
  curve.metadata.push_back({"tol", format_number(tol.rel_tol)});
  curve.metadata.push_back({"y_max", format_number(y_max)});
  curve.frame = Frame::axis;
  // Reflected branch first (param < 0), then the computed one; the neck
  // sample is shared.
  for (std::size_t k = ys.size(); k-- > 1;) {
    curve.param.push_back(-std::sqrt(ys[k] - a.a));
    curve.x.push_back(-xs[k]);
    curve.y.push_back(ys[k]);
  }
  for (std::size_t k = 0; k < ys.size(); ++k) {
    curve.param.push_back(std::sqrt(ys[k] - a.a));
    curve.x.push_back(xs[k]);
    curve.y.push_back(ys[k]);
  }
  return curve;
}

CurveArtifact spherical_curve(const RunConfig& cfg) {
  const double a = require_a(cfg, "curve");
  const auto period = otsuki::period(cfg.n, a);
  const Closure closure = closing_fraction(period.period, a, 200, 1e-4);
  const double theta_end = closure.q * period.period;
  const int per_period = cfg.grid.value_or(400);
  if (per_period < 2) throw UsageError("curve: --grid must be >= 2");

  otsuki::SupportOptions opts;
  opts.output_step = period.period / per_period;
  if (cfg.tol) opts.step.rel_tol = *cfg.tol;
  const auto states = otsuki::integrate_support(cfg.n, a, theta_end, opts);

  // The support function lives on the unit sphere; S^{n+1}(c) has radius
  // 1/sqrt(c).
  const double radius = 1.0 / std::sqrt(cfg.c);
  CurveArtifact curve;
  for (const auto& s : states) {
    const auto pt = otsuki::disk_coords(s);
    curve.param.push_back(s.theta);
    curve.x.push_back(radius * pt.x);
    curve.y.push_back(radius * pt.y);
  }
  const double gap = std::hypot(curve.x.back() - curve.x.front(),
                                curve.y.back() - curve.y.front());
  curve.metadata = base_metadata("curve", cfg);
  curve.metadata.push_back({"a", format_number(a)});
  curve.metadata.push_back({"tol", format_number(opts.step.rel_tol)});
  curve.metadata.push_back({"period", format_number(period.period)});
  curve.metadata.push_back(
      {"closure", std::to_string(closure.p) + "/" + std::to_string(closure.q)});
  curve.metadata.push_back({"closure_gap", format_number(gap)});
  curve.frame = Frame::unit_disk;
  curve.frame_radius = radius;
  return curve;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_format(cfg, {"csv", "svg"}, "curve");
  const CurveArtifact curve =
      cfg.c > 0.0 ? spherical_curve(cfg) : hyperbolic_or_flat_curve(cfg);
  if (cfg.format == "svg") {
    write_svg(out, curve);
  } else {
    write_csv(out, curve_table(curve));
  }
  return kOk;
}

// ---------------------------------------------------------------- period

std::vector<double> period_grid(const RunConfig& cfg) {
  const bool ranged = cfg.a_min || cfg.a_max;
  if (cfg.a && ranged) throw UsageError("period: use either --a or an a-range");
  if (cfg.a) return {*cfg.a};
  if (!cfg.a_min || !cfg.a_max) {
    throw UsageError("period: --a or both --a-min and --a-max are required");
  }
  if (cfg.a_steps < 1) throw UsageError("period: --a-steps must be >= 1");
  std::vector<double> as(static_cast<std::size_t>(cfg.a_steps));
  for (int i = 0; i < cfg.a_steps; ++i) {
    as[i] = cfg.a_steps == 1
                ? *cfg.a_min
                : *cfg.a_min + (*cfg.a_max - *cfg.a_min) * i / (cfg.a_steps - 1);
  }
  return as;
}

std::string csv_safe(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

int cmd_period(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg, {"csv"}, "period");
  require_sphere(cfg, "period");
  const auto as = period_grid(cfg);
  numerics::QuadratureTolerance tol;
  if (cfg.tol) tol.rel_tol = *cfg.tol;

  std::vector<otsuki::SweepRow> rows;
  if (cfg.tol) {
    // Non-default tolerance: evaluate directly (the sweep kernel uses the
    // library default).
    for (double a : as) {
      otsuki::SweepRow row{a, std::nullopt, {}};
      try {
        row.result = otsuki::period(cfg.n, a, tol);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  } else {
    rows = otsuki::period_sweep(cfg.n, as);
  }
  if (rows.size() == 1 && !rows.front().result) {
    err << "period: " << rows.front().error << '\n';
    return kDomain;
  }

  Table table;
  table.metadata = base_metadata("period", cfg);
  table.metadata.push_back({"tol", format_number(tol.rel_tol)});
  table.columns = {"a", "a1", "C", "T", "T_over_pi", "error"};
  for (const auto& row : rows) {
    if (row.result) {
      const auto& r = *row.result;
      table.rows.push_back({format_number(row.a), format_number(r.a1),
                            format_number(otsuki::capital_c(cfg.n, row.a)),
                            format_number(r.period),
                            format_number(r.period / std::numbers::pi), ""});
    } else {
      table.rows.push_back({format_number(row.a), "", "", "", "", csv_safe(row.error)});
    }
  }
  write_csv(out, table);
  return kOk;
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

std::vector<ProfilePoint> verify_profile(const SpaceForm& sf, NeckParam k,
                                         double s_max, int intervals,
                                         double perturb) {
  ProfileOptions opts;
  opts.output_step = s_max / intervals;
  auto profile = integrate_profile(sf, k, s_max, opts);
  for (auto& p : profile) p.dx1 += perturb;
  return profile;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg, {"json"}, "verify");
  if (cfg.n < 3) throw DomainError("verify: n must be >= 3");
  if (!(cfg.s_max > 0.0)) throw UsageError("verify: --s-max must be > 0");
  const int intervals = cfg.grid.value_or(200);
  if (intervals < 4) throw UsageError("verify: --grid must be >= 4");
  if (cfg.trials < 1) throw UsageError("verify: --trials must be >= 1");
  const double residual_tol = cfg.tol.value_or(1e-10);

  const SpaceForm sf(cfg.c, cfg.n);
  const double neck = require_a(cfg, "verify");
  const NeckParam k(profile_constant(sf, neck));

  const auto coarse =
      verify_profile(sf, k, cfg.s_max, intervals, cfg.perturb_dx1);
  const auto fine =
      verify_profile(sf, k, cfg.s_max, 2 * intervals, cfg.perturb_dx1);

  const double analytic =
      simons::max_relative_residual(simons::simons_residual(sf, k, coarse));
  const double fd_coarse =
      simons::max_relative_residual(simons::simons_residual_fd(sf, k, coarse), true);
  const double fd_fine =
      simons::max_relative_residual(simons::simons_residual_fd(sf, k, fine), true);
  const double fd_order = std::log2(fd_coarse / fd_fine);

  // Samples whose curvature radicand is lost to cancellation (condition
  // above 1e8) cannot resolve the trace and are only counted.
  double drift = 0.0;
  double trace = 0.0;
  int unresolved = 0;
  for (const auto& p : coarse) {
    drift = std::max(drift, std::abs(relative_first_integral_residual(sf, k, p)));
    const double radicand = 1.0 - sf.c * p.x1 * p.x1 - p.dx1 * p.dx1;
    const double terms = 1.0 + std::abs(sf.c) * p.x1 * p.x1 + p.dx1 * p.dx1;
    if (!(radicand > 1e-8 * terms)) {
      ++unresolved;
      continue;
    }
    const auto defect = simons::minimality_defect(sf, p);
    if (defect.condition > 1e8) {
      ++unresolved;
      continue;
    }
    trace = std::max(trace, defect.relative / defect.condition);
  }

  std::vector<Check> checks{
      {"simons_residual_analytic", analytic, residual_tol, analytic <= residual_tol},
      {"simons_residual_fd", fd_coarse, 0.0, true},
      {"simons_residual_fd_refined", fd_fine, 0.0, true},
      {"fd_order", fd_order, 1.9, fd_order >= 1.9},
      {"first_integral_drift", drift, 1e-8, drift <= 1e-8},
      {"minimality_trace", trace, 1e-10, trace <= 1e-10},
  };
  std::optional<CliffordCurvatures> clifford;
  if (cfg.c > 0.0) {
    clifford = clifford_sff(CliffordSpec(cfg.m, cfg.n, cfg.c));
    const double dev = std::abs(clifford->norm_sq - cfg.n * cfg.c);
    checks.push_back({"clifford_norm_sq_error", dev, 1e-12, dev <= 1e-12});
  }
  const auto trials = simons::identity_trials(cfg.n, cfg.trials, cfg.seed);
  checks.push_back({"identity_mismatch", trials.max_relative_mismatch, 1e-10,
                    trials.max_relative_mismatch <= 1e-10});
  checks.push_back({"e_min", trials.min_e, 0.0, trials.min_e >= 0.0});

  nlohmann::ordered_json report;
  report["schema"] = kSchemaVersion;
  report["generator"] = kGenerator;
  report["command"] = "verify";
  report["config"] = {{"c", rounded(cfg.c)},
                      {"n", cfg.n},
                      {"a", rounded(neck)},
                      {"profile_constant", rounded(k.a)},
                      {"s_max", rounded(cfg.s_max)},
                      {"grid", intervals},
                      {"perturb_dx1", rounded(cfg.perturb_dx1)},
                      {"seed", cfg.seed},
                      {"trials", cfg.trials}};
  report["minimality_unresolved_samples"] = unresolved;
  if (clifford) {
    report["clifford"] = {{"m", cfg.m},
                          {"lambda", rounded(clifford->lambda)},
                          {"nu", rounded(clifford->nu)},
                          {"norm_sq", rounded(clifford->norm_sq)}};
  }
  auto& list = report["checks"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"value", rounded(c.value)},
                    {"tolerance", rounded(c.tolerance)},
                    {"pass", c.pass}});
    all = all && c.pass;
  }
  report["pass"] = all;
  out << report.dump(2) << '\n';

  if (!all) {
    for (const auto& c : checks) {
      if (!c.pass) {
        err << "verify: " << c.name << " = " << format_number(c.value)
            << " violates tolerance " << format_number(c.tolerance) << '\n';
      }
    }
    return kTolerance;
  }
  return kOk;
}

// ---------------------------------------------------------------- find-closed

int cmd_find_closed(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_format(cfg, {"csv"}, "find-closed");
  require_sphere(cfg, "find-closed");
  if (cfg.p <= 0 || cfg.q <= 0) {
    throw UsageError("find-closed: --p and --q must be positive");
  }
  const int g = std::gcd(cfg.p, cfg.q);
  const int p = cfg.p / g;
  const int q = cfg.q / g;
  if (!(2 * p > q && p < q)) {
    throw UsageError("find-closed: p/q = " + std::to_string(p) + "/" +
                     std::to_string(q) + " is outside (1/2, 1)");
  }
  const int grid = cfg.grid.value_or(otsuki::kDefaultClosedGrid);
  if (grid < 2) throw UsageError("find-closed: --grid must be >= 2");
  const auto hits = otsuki::find_closed(cfg.n, p, q, grid);
  const double target = 2.0 * std::numbers::pi * p / q;

  Table table;
  table.metadata = base_metadata("find-closed", cfg);
  table.metadata.push_back({"p", std::to_string(p)});
  table.metadata.push_back({"q", std::to_string(q)});
  table.metadata.push_back({"grid", std::to_string(grid)});
  table.columns = {"a", "T", "T_target", "abs_error"};
  for (double a : hits) {
    const double t = otsuki::period(cfg.n, a).period;
    table.rows.push_back({format_number(a), format_number(t), format_number(target),
                          format_number(std::abs(t - target))});
  }
  write_csv(out, table);
  return kOk;
}

// ---------------------------------------------------------------- parsing

void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--c", cfg.c, "Ambient sectional curvature");
  sub.add_option("--n", cfg.n, "Hypersurface dimension")->check(CLI::PositiveNumber);
  sub.add_option("--format", cfg.format, "Output format (csv, svg, json)")
      ->check(CLI::IsMember({"csv", "svg", "json"}));
  sub.add_option("--out", cfg.out, "Output file (default: standard output)");
}

int write_result(const RunConfig& cfg, const Command& command, std::ostream& out,
                 std::ostream& err) {
  std::ostringstream buffer;
  const int code = command(cfg, buffer, err);
  if (cfg.out.empty()) {
    out << buffer.str();
    return code;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "cannot open " << cfg.out << " for writing\n";
    return kUsage;
  }
  file << buffer.str();
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Catenoids in space forms: generating curves, periods and "
               "Simons-equation checks"};
  app.require_subcommand(1);
  Command command;

  auto* curve = app.add_subcommand("curve", "Generating curve as CSV or SVG");
  add_common(*curve, cfg);
  curve->add_option("--a", cfg.a,
                    "c <= 0: neck distance to the axis; c > 0: h(0) of the "
                    "support function");
  curve->add_option("--y-max", cfg.y_max, "Largest axis distance (c <= 0)");
  curve->add_option("--grid", cfg.grid,
                    "Samples per branch (c <= 0) or per period (c > 0)");
  curve->add_option("--tol", cfg.tol, "Quadrature / ODE relative tolerance")
      ->check(CLI::PositiveNumber);
  curve->callback([&] { command = cmd_curve; });

  auto* period = app.add_subcommand("period", "Period T(a) of the support function");
  add_common(*period, cfg);
  period->add_option("--a", cfg.a, "Minimum of the support function");
  period->add_option("--a-min", cfg.a_min, "Sweep start");
  period->add_option("--a-max", cfg.a_max, "Sweep end");
  period->add_option("--a-steps", cfg.a_steps, "Sweep points");
  period->add_option("--tol", cfg.tol, "Quadrature relative tolerance")
      ->check(CLI::PositiveNumber);
  period->callback([&] { command = cmd_period; });

  auto* verify = app.add_subcommand("verify", "Simons-equation and identity checks");
  add_common(*verify, cfg);
  verify->add_option("--a", cfg.a,
                    "Geodesic distance of a profile turning point (the neck) "
                    "to the axis");
  verify->add_option("--s-max", cfg.s_max, "Arclength range [0, s-max]");
  verify->add_option("--grid", cfg.grid, "Arclength intervals on the coarse grid");
  verify->add_option("--tol", cfg.tol, "Relative Simons-residual tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--m", cfg.m, "Clifford split S^m x S^{n-m} (c > 0)");
  verify->add_option("--seed", cfg.seed, "Seed of the identity trials");
  verify->add_option("--trials", cfg.trials, "Number of identity trials");
  verify->add_option("--perturb-dx1", cfg.perturb_dx1,
                     "Offset added to x1' on every profile sample");
  verify->callback([&] {
    command = cmd_verify;
    if (verify->count("--format") == 0) cfg.format = "json";
  });

  auto* closed = app.add_subcommand("find-closed", "Support minima with T = 2 pi p/q");
  add_common(*closed, cfg);
  closed->add_option("--p", cfg.p, "Numerator")->required();
  closed->add_option("--q", cfg.q, "Denominator")->required();
  closed->add_option("--grid", cfg.grid, "Number of scanned a values");
  closed->callback([&] { command = cmd_find_closed; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return write_result(cfg, command, out, err);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << e.what() << '\n';
    return kDomain;
  } catch (const ConvergenceError& e) {
    err << e.what() << '\n';
    return kDomain;
  }
}

}  // namespace catenoid::cli
