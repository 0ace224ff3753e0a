#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "finsler/csv.hpp"
#include "finsler/sigma_chart.hpp"
#include "finsler/spherical.hpp"

namespace finsler {

std::vector<double> ZGrid::values() const {
  if (count < 2) throw DomainError("z grid needs at least 2 points");
  if (!(min > 0.0) || !(min < max) || !std::isfinite(max)) throw DomainError("z grid needs 0 < min < max");
  std::vector<double> z(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) z[i] = min + (max - min) * i / (count - 1);
  z.back() = max;
  return z;
}

BaseTangent representative_point(const SphericalMetric& m, double z, double fraction, double psi) {
  const double mu2 = m.mu() * m.mu();
  if (!(z > 0.0) || !(z < mu2)) throw DomainError("z = " + std::to_string(z) + " outside (0, mu^2)");
  const double s = fraction * std::sqrt(std::min(z, mu2 - z));
  const Vec2 e(std::cos(psi), std::sin(psi));
  const Vec2 n(e(1), -e(0));
  const Vec2 x = s * e + std::sqrt(z) * n;
  return {x, e / m.phi(0.5 * (s * s + z), s)};
}

namespace {

double a1_at(const SphericalMetric& m, double z, double fraction) {
  const BaseTangent p = representative_point(m, z, fraction);
  const TangentVars v = vars_from_xy(p);
  return a_components(LocalJets::at(m, v.t, v.s), v).a1;
}

}  // namespace

BaseTangent level_set_point(const SphericalMetric& m, double a_target, double z_guess, double fraction,
                            double psi) {
  const double zmax = m.mu() * m.mu();
  auto clamp = [&](double z) { return std::clamp(z, 1e-12, zmax * (1.0 - 1e-9)); };
  double z0 = clamp(z_guess), z1 = clamp(z_guess * (1.0 + 1e-3) + 1e-6);
  double f0 = a1_at(m, z0, fraction) - a_target;
  double f1 = a1_at(m, z1, fraction) - a_target;
  for (int it = 0; it < 60 && std::abs(f1) > 1e-15 * std::max(1.0, std::abs(a_target)); ++it) {
    if (f1 == f0) break;
    const double z2 = clamp(z1 - f1 * (z1 - z0) / (f1 - f0));
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = a1_at(m, z1, fraction) - a_target;
  }
  if (!(std::abs(f1) < 1e-10 * std::max(1.0, std::abs(a_target)))) {
    throw NonMonotone("no point with a1 = " + std::to_string(a_target) + " on the representative family");
  }
  return representative_point(m, z1, fraction, psi);
}

namespace {

struct ProfileSample {
  double a = 0, u = 0, v = 0, du = 0;
};

ProfileSample profile_at(const SphericalMetric& m, const BaseTangent& p, double K) {
  const TangentVars tv = vars_from_xy(p);
  const LocalJets L = LocalJets::at(m, tv.t, tv.s);
  const KillingComponents k = a_components(L, tv);
  const double I = main_scalar(L, tv);
  const double J = landsberg_routes(L, tv).box_route;
  const double u2 = K * k.a2 * k.a2 + k.a3 * k.a3;
  ProfileSample out;
  out.a = k.a1;
  if (K == 0.0) {
    if (!(k.a3 > 0.0)) throw CaseMismatch("a3 = " + std::to_string(k.a3) + " is not positive for K = 0");
    out.u = k.a3;
  } else {
    if (!(u2 > 0.0)) {
      throw CaseMismatch("K a2^2 + a3^2 = " + std::to_string(u2) + " is not positive at z = " + std::to_string(tv.z));
    }
    out.u = std::sqrt(u2);
  }
  out.v = (k.a2 * J - k.a3 * I) / (out.u * out.u);
  out.du = (K * I * k.a2 + J * k.a3 - K * k.a1) / out.u;
  return out;
}

}  // namespace

ProfilePair extract_profiles(const SphericalMetric& metric, double K, double scale, std::span<const double> z_grid,
                             const ExtractOptions& opts) {
  if (K != 1.0 && K != 0.0 && K != -1.0) throw DomainError("target curvature must be 1, 0 or -1");
  if (z_grid.size() < 2) throw DomainError("z grid needs at least 2 points");
  const SphericalMetric m = metric.scaled(scale);
  const double zmax = opts.boundary_band * m.mu() * m.mu();
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double z = z_grid[i];
    if (!(z > 0.0) || !(z <= zmax)) {
      throw DomainError("grid value z = " + std::to_string(z) + " outside (0, " + std::to_string(zmax) + "]");
    }
    if (i > 0 && !(z > z_grid[i - 1])) throw DomainError("z grid must be strictly increasing");
  }

  ProfilePair out;
  out.curvature_target = K;

  // Curvature probes at representative points spread over the grid.
  const int probes = std::max(2, opts.curvature_probes);
  double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin, ksum = 0.0;
  for (int i = 0; i < probes; ++i) {
    const std::size_t idx = (z_grid.size() - 1) * static_cast<std::size_t>(i) / static_cast<std::size_t>(probes - 1);
    const double psi = 0.7 * i;
    const SigmaPoint p = sigma_point_of(m, representative_point(m, z_grid[idx], opts.rep_fraction, psi));
    const double k = flag_curvature(m, p, opts.fd);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
    ksum += k;
  }
  out.measured_k_min = kmin;
  out.measured_k_max = kmax;
  if (kmax - kmin > opts.curvature_tol) {
    throw NotConstantCurvature("measured flag curvature ranges over [" + std::to_string(kmin) + ", " +
                               std::to_string(kmax) + "]");
  }
  const double kmean = ksum / probes;
  if (std::abs(kmean - K) > opts.curvature_tol) {
    throw CaseMismatch("measured flag curvature " + std::to_string(kmean) + " differs from the target " +
                       std::to_string(K) + " (rescale the metric)");
  }

  for (double z : z_grid) {
    const ProfileSample p = profile_at(m, representative_point(m, z, opts.rep_fraction), K);
    if (!out.a.empty() && !(p.a > out.a.back())) {
      throw NonMonotone("a1 is not strictly increasing along the grid at z = " + std::to_string(z));
    }
    const ProfileSample q = profile_at(m, level_set_point(m, p.a, z, opts.alt_fraction), K);
    out.rep_gap_u = std::max(out.rep_gap_u, std::abs(p.u - q.u));
    out.rep_gap_v = std::max(out.rep_gap_v, std::abs(p.v - q.v));
    out.z.push_back(z);
    out.a.push_back(p.a);
    out.u.push_back(p.u);
    out.v.push_back(p.v);
    out.du.push_back(p.du);
  }
  if (std::max(out.rep_gap_u, out.rep_gap_v) > opts.rep_tol) {
    throw NotConstantCurvature("profiles depend on the representative point (gap u " + std::to_string(out.rep_gap_u) +
                               ", v " + std::to_string(out.rep_gap_v) + ")");
  }
  return out;
}

void write_profile_csv(std::ostream& os, const ProfilePair& profiles) {
  csv::write_header(os, {"z", "a", "u", "v"});
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    csv::write_row(os, {profiles.z[i], profiles.a[i], profiles.u[i], profiles.v[i]});
  }
}

}  // namespace finsler
