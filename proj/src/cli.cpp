#include "finsler/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>

#include "finsler/csv.hpp"
#include "finsler/expr.hpp"
#include "finsler/metrics.hpp"
#include "finsler/normalform.hpp"
#include "finsler/sigma_chart.hpp"
#include "finsler/spherical.hpp"

namespace finsler {

namespace {

struct RunConfig {
  std::string metric = "funk";
  double scale = 1.0;
  double k = -1.0;
  std::string z;
  std::string case_name;
  std::string u = "1";
  std::string v = "0";
  std::string a_range = "-1:1";
  int points = 50;
  std::string mode = "jet";
  double h = 1e-3;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::optional<double> radius;
  std::string out;
};

ZGrid parse_grid(const std::string& spec) {
  std::istringstream in(spec);
  in.imbue(std::locale::classic());
  ZGrid g;
  char c1 = 0, c2 = 0;
  if (!(in >> g.min >> c1 >> g.max >> c2 >> g.count) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
    throw DomainError("grid '" + spec + "' is not of the form min:max:count");
  }
  g.values();  // validates
  return g;
}

std::pair<double, double> parse_range(const std::string& spec) {
  std::istringstream in(spec);
  in.imbue(std::locale::classic());
  double lo = 0, hi = 0;
  char c = 0;
  if (!(in >> lo >> c >> hi) || c != ':' || !(in >> std::ws).eof() || !(lo < hi)) {
    throw DomainError("range '" + spec + "' is not of the form min:max with min < max");
  }
  return {lo, hi};
}

DiffMode parse_mode(const std::string& mode) {
  if (mode == "jet") return DiffMode::analytic;
  if (mode == "fd") return DiffMode::finite_difference;
  throw DomainError("mode must be jet or fd");
}

SphericalMetric resolve_metric(const RunConfig& cfg) {
  SphericalMetric m = is_builtin_metric(cfg.metric) ? builtin_metric(cfg.metric) : metric_from_expression(cfg.metric);
  if (!(cfg.h > 0.0)) throw DomainError("--h must be positive");
  return m.with_jet_options({parse_mode(cfg.mode), cfg.h});
}

/// Writes through `fill` to --out, or to `fallback` when no path was given.
template <class F>
void emit(const std::string& path, std::ostream* fallback, F fill) {
  if (path.empty() || path == "-") {
    if (fallback) fill(*fallback);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open '" + path + "' for writing");
  os.imbue(std::locale::classic());
  fill(os);
  if (!os) throw DomainError("failed writing '" + path + "'");
}

ExtractOptions extract_options(const RunConfig& cfg) {
  ExtractOptions o;
  if (cfg.mode == "fd") {
    o.rep_tol = 1e-4;
    o.curvature_tol = 1e-4;
  }
  return o;
}

int cmd_extract(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SphericalMetric m = resolve_metric(cfg);
  const ZGrid grid = cfg.z.empty() ? ZGrid{} : parse_grid(cfg.z);
  const std::vector<double> z = grid.values();
  const ProfilePair p = extract_profiles(m, cfg.k, cfg.scale, z, extract_options(cfg));
  emit(cfg.out, &out, [&](std::ostream& os) { write_profile_csv(os, p); });
  err << "extract: metric " << m.name() << ", scale " << cfg.scale << ", K target " << cfg.k << '\n'
      << "  measured K in [" << csv::format(p.measured_k_min) << ", " << csv::format(p.measured_k_max) << "]\n"
      << "  a in [" << csv::format(p.a.front()) << ", " << csv::format(p.a.back()) << "], " << p.size() << " points\n"
      << "  second-representative gap: u " << csv::format(p.rep_gap_u) << ", v " << csv::format(p.rep_gap_v) << '\n';
  return kExitOk;
}

int verify_normal_form(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CurvatureCase c = parse_case(cfg.case_name);
  const ProfileFunctions prof{profile_from_expression(cfg.u), profile_from_expression(cfg.v)};
  const auto [a0, a1] = parse_range(cfg.a_range);
  if (cfg.points < 1) throw DomainError("--points must be positive");
  const double tol = cfg.tol.value_or(1e-5);
  const auto pts = sample_normal_chart(c, cfg.points, cfg.seed, a0, a1);

  std::vector<std::array<double, 4>> rows;
  double worst = 0.0, worst_conservation = 0.0;
  for (const NormalChartPoint& p : pts) {
    const FrameResiduals r = verify_structure(c, prof, p);
    const double cons = conservation_check(c, prof, p).max();
    rows.push_back({r.R1, r.R2, r.R3, cons});
    worst = std::max(worst, r.max());
    worst_conservation = std::max(worst_conservation, cons);
  }
  emit(cfg.out, nullptr, [&](std::ostream& os) {
    os << "# seed=" << cfg.seed << '\n';
    csv::write_header(os, {"point_id", "t", "a", "b", "R1", "R2", "R3", "C"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << i << ',';
      csv::write_row(os, {pts[i].t, pts[i].a, pts[i].b, rows[i][0], rows[i][1], rows[i][2], rows[i][3]});
    }
  });
  out << "verify: case " << case_name(c) << ", " << pts.size() << " points, max structure residual "
      << csv::format(worst) << ", max conservation residual " << csv::format(worst_conservation) << '\n';
  if (worst > tol) {
    err << "structure residual exceeds tolerance " << csv::format(tol) << '\n';
    return kExitCase;
  }
  return kExitOk;
}

double default_radius(const SphericalMetric& m) { return std::isfinite(m.mu()) ? 0.8 * m.mu() : 0.8; }

int verify_metric(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SphericalMetric m = resolve_metric(cfg).scaled(cfg.scale);
  const double tol = cfg.tol.value_or(1e-5);
  const ResidualReport rep = residual_report(m, cfg.points, cfg.seed, cfg.radius.value_or(default_radius(m)));
  emit(cfg.out, nullptr, [&](std::ostream& os) { write_residual_csv(os, rep); });
  double kmin = INFINITY, kmax = -INFINITY;
  for (const ResidualRow& r : rep.rows) {
    kmin = std::min(kmin, r.residuals.K);
    kmax = std::max(kmax, r.residuals.K);
  }
  out << "verify: metric " << m.name() << ", " << rep.rows.size() << " points, max structure residual "
      << csv::format(rep.max_residual()) << ", K in [" << csv::format(kmin) << ", " << csv::format(kmax) << "]\n";
  if (rep.max_residual() > tol) {
    err << "structure residual exceeds tolerance " << csv::format(tol) << '\n';
    return kExitCase;
  }
  return kExitOk;
}

int cmd_residuals(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SphericalMetric m = resolve_metric(cfg).scaled(cfg.scale);
  const ResidualReport rep = residual_report(m, cfg.points, cfg.seed, cfg.radius.value_or(default_radius(m)));
  emit(cfg.out, &out, [&](std::ostream& os) { write_residual_csv(os, rep); });
  err << "residuals: " << rep.rows.size() << " points, max " << csv::format(rep.max_residual()) << '\n';
  return kExitOk;
}

double funk_v_mirrored(double a) { return -funk_v_reference(a); }

int cmd_funk_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunConfig c = cfg;
  c.metric = "funk";
  const SphericalMetric m = resolve_metric(c);
  const bool fd = c.mode == "fd";
  const double tol = cfg.tol.value_or(fd ? 1e-4 : 1e-6);

  // The generator is validated in jet mode whatever --mode says.
  const FixtureCheck fixture = check_fixture(funk_metric(), 0.6);
  out << "Funk fixture: projective-flatness residual " << csv::format(fixture.max_projective_residual)
      << ", flag curvature in [" << csv::format(fixture.k_min) << ", " << csv::format(fixture.k_max) << "]\n";
  if (fixture.max_projective_residual > 1e-8 || std::abs(fixture.k_min + 0.25) > 1e-5 ||
      std::abs(fixture.k_max + 0.25) > 1e-5) {
    err << "the built-in Funk generator fails its own checks\n";
    return kExitCase;
  }

  const ZGrid grid = c.z.empty() ? ZGrid{0.005, 0.65, 60} : parse_grid(c.z);
  const std::vector<double> z = grid.values();
  const ProfilePair p = extract_profiles(m, -1.0, 0.5, z, extract_options(c));
  emit(cfg.out, nullptr, [&](std::ostream& os) { write_profile_csv(os, p); });

  double du = 0, dv = 0, dv_mirror = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    du = std::max(du, std::abs(p.u[i] - funk_u(p.a[i])));
    dv = std::max(dv, std::abs(p.v[i] - funk_v_reference(p.a[i])));
    dv_mirror = std::max(dv_mirror, std::abs(p.v[i] - funk_v_mirrored(p.a[i])));
  }

  out << "Funk metric scaled by 1/2 (K = -1), " << (fd ? "finite-difference" : "jet") << " mode, " << p.size()
      << " grid points, a in [" << csv::format(p.a.front()) << ", " << csv::format(p.a.back()) << "]\n";
  out << "         a            u    sqrt(1+4a^2)            v   -3a/(1+4a^2)\n";
  const std::size_t stride = std::max<std::size_t>(1, p.size() / 10);
  for (std::size_t i = 0; i < p.size(); i += stride) {
    char line[128];
    std::snprintf(line, sizeof line, "%10.6f %12.9f %15.9f %12.9f %14.9f\n", p.a[i], p.u[i], funk_u(p.a[i]), p.v[i],
                  funk_v_reference(p.a[i]));
    out << line;
  }

  const RoundtripReport rt =
      roundtrip(CurvatureCase::NegativeOne, p, 50, cfg.seed, ProfileReference{funk_u, funk_v_reference});
  out << "normal form (K = -1) from interpolated profiles: structure residual " << csv::format(rt.max_structure)
      << ", conservation residual " << csv::format(rt.max_conservation) << '\n';
  out << "max |u - sqrt(1+4a^2)|  = " << csv::format(du) << '\n';
  out << "max |v + 3a/(1+4a^2)|   = " << csv::format(dv) << '\n';
  out << "max |v - 3a/(1+4a^2)|   = " << csv::format(dv_mirror) << '\n';

  if (du <= tol && dv <= tol) return kExitOk;
  err << "profiles differ from the reference values by more than " << csv::format(tol);
  if (du <= tol && dv_mirror <= tol) err << " (v matches the reference with the opposite sign)";
  err << '\n';
  return kExitCase;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants, normal forms and profile extraction for Finsler surfaces", "finsler2d"};
  // `--h` is the step size, so help is `--help` only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_sub = [&](const char* name, const char* about) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->set_help_flag("--help", "print this help and exit");
    return sub;
  };
  auto add_metric = [&](CLI::App* sub) {
    sub->add_option("--metric", cfg.metric, "euclid, funk, klein-sphere or an expression in t and s")
        ->capture_default_str();
    sub->add_option("--scale", cfg.scale, "constant factor applied to F")->capture_default_str();
  };
  auto add_diff = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "jet or fd")->check(CLI::IsMember({"jet", "fd"}))->capture_default_str();
    sub->add_option("--h", cfg.h, "finite-difference step for fd jets")->capture_default_str();
  };

  CLI::App* extract = add_sub("extract", "extract u(a), v(a) for a spherically symmetric metric");
  add_metric(extract);
  add_diff(extract);
  extract->add_option("--k", cfg.k, "target flag curvature: 1, 0 or -1")->capture_default_str();
  extract->add_option("--z", cfg.z, "grid of 2t - s^2 as min:max:count (default 0.05:0.8:50)");
  extract->add_option("--out", cfg.out, "profile CSV path (stdout if omitted)");

  CLI::App* verify = add_sub("verify", "check structure equations of a normal form or a metric");
  add_metric(verify);
  add_diff(verify);
  verify->add_option("--case", cfg.case_name, "normal form: k1, k0 or k-1");
  verify->add_option("--u", cfg.u, "u(a) expression")->capture_default_str();
  verify->add_option("--v", cfg.v, "v(a) expression")->capture_default_str();
  verify->add_option("--a", cfg.a_range, "sampling range of a as min:max")->capture_default_str();
  verify->add_option("--points", cfg.points, "number of random points")->capture_default_str();
  verify->add_option("--tol", cfg.tol, "residual tolerance (default 1e-5)");
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  verify->add_option("--radius", cfg.radius, "sampling radius on the base");
  verify->add_option("--out", cfg.out, "residual CSV path");

  CLI::App* demo = add_sub("funk-demo", "reproduce the Funk profiles");
  add_diff(demo);
  demo->add_option("--z", cfg.z, "grid of 2t - s^2 as min:max:count (default 0.005:0.65:60)");
  demo->add_option("--tol", cfg.tol, "reference tolerance (1e-6 jet, 1e-4 fd)");
  demo->add_option("--seed", cfg.seed, "random seed for the normal-form check")->capture_default_str();
  demo->add_option("--out", cfg.out, "profile CSV path");

  CLI::App* residuals = add_sub("residuals", "structure-equation residual report on random points");
  add_metric(residuals);
  add_diff(residuals);
  residuals->add_option("--points", cfg.points, "number of random points")->capture_default_str();
  residuals->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  residuals->add_option("--radius", cfg.radius, "sampling radius on the base");
  residuals->add_option("--out", cfg.out, "residual CSV path (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (extract->parsed()) return cmd_extract(cfg, out, err);
    if (verify->parsed()) {
      return cfg.case_name.empty() ? verify_metric(cfg, out, err) : verify_normal_form(cfg, out, err);
    }
    if (demo->parsed()) return cmd_funk_demo(cfg, out, err);
    if (residuals->parsed()) return cmd_residuals(cfg, out, err);
  } catch (const UnknownIdentifier& e) {
    err << "error: unknown identifier '" << e.name() << "' at offset " << e.offset() << '\n';
    return kExitInput;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CaseError& e) {
    err << "case error: " << e.what() << '\n';
    return kExitCase;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace finsler
