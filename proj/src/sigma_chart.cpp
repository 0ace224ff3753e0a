#include "finsler/sigma_chart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "finsler/csv.hpp"

namespace finsler {

SigmaPoint indicatrix_lift(const SphericalMetric& m, const Vec2& x, double psi) {
  const Vec2 e(std::cos(psi), std::sin(psi));
  const double t = 0.5 * x.squaredNorm();
  const double s = x.dot(e);
  SigmaPoint p;
  p.chart = Vec3(x(0), x(1), psi);
  p.tangent = {x, e / m.phi(t, s)};
  return p;
}

SigmaPoint indicatrix_lift(const SphericalMetric& m, const Vec3& chart) {
  return indicatrix_lift(m, chart.head<2>(), chart(2));
}

SigmaPoint sigma_point_of(const SphericalMetric& m, const BaseTangent& p) {
  if (!(p.y.norm() > 0.0)) throw ZeroVelocity("velocity y must be non-zero");
  return indicatrix_lift(m, p.x, std::atan2(p.y(1), p.y(0)));
}

namespace {

struct PointData {
  TangentVars v;
  LocalJets L;
};

PointData point_data(const SphericalMetric& m, const SigmaPoint& p) {
  const TangentVars v = vars_from_xy(p.tangent);
  return {v, LocalJets::at(m, v.t, v.s)};
}

CoframeValue coframe_from(const PointData& d, const SigmaPoint& p) {
  const double psi = p.psi();
  const Vec2 x = p.x();
  const Vec2 y = p.tangent.y;
  const Vec2 e(std::cos(psi), std::sin(psi));
  const LocalJets& L = d.L;
  const double phi = L.phi.value();

  // y = e / phi(t, s) with s = <x, e>: differentiate through rho = 1/phi.
  const Vec3 dt(x(0), x(1), 0.0);
  const Vec3 ds(e(0), e(1), -x(0) * e(1) + x(1) * e(0));
  const Vec3 drho = -(L.phi_t.value() * dt + L.phi_s.value() * ds) / (phi * phi);
  const double rho = 1.0 / phi;
  std::array<Vec3, 2> dy;
  dy[0] = e(0) * drho + rho * Vec3(0.0, 0.0, -e(1));
  dy[1] = e(1) * drho + rho * Vec3(0.0, 0.0, e(0));

  const Mat2 N = connection_coeffs(L, d.v, x, y);
  std::array<Vec3, 2> dyN;
  for (int i = 0; i < 2; ++i) dyN[i] = dy[i] + Vec3(N(i, 0), N(i, 1), 0.0);

  const double F = d.v.r * phi;
  const double sqrtD = std::sqrt(L.D.value());
  CoframeValue w{kSigmaBasis, Mat3::Zero()};
  const Vec2 h = hilbert_coefficients(L, d.v);
  w.m.row(0) = Vec3(h(0), h(1), 0.0).transpose();
  w.m.row(1) = (sqrtD / F * Vec3(-y(1), y(0), 0.0)).transpose();
  w.m.row(2) = (sqrtD / (F * F) * (y(0) * dyN[1] - y(1) * dyN[0])).transpose();
  return w;
}

Vec3 wedge3(const Vec3& a, const Vec3& b) { return a.cross(b); }

// d of the three coframe rows, as chart 2-forms.
std::array<Vec3, 3> coframe_curls(const SphericalMetric& m, const SigmaPoint& p, FdStep step) {
  auto field = [&](const Vec3& q) { return berwald_coframe(m, indicatrix_lift(m, q)).m; };
  return exterior_derivative_rows(field, p.chart, step);
}

double curvature_from(const std::array<Vec3, 3>& curls, const CoframeValue& w) {
  return -coframe_components(TwoForm{w.basis, curls[2]}, w)(2);
}

}  // namespace

CoframeValue berwald_coframe(const SphericalMetric& m, const SigmaPoint& p) {
  return coframe_from(point_data(m, p), p);
}

Vec3 killing_lift(const SigmaPoint& p) { return Vec3(-p.chart(1), p.chart(0), 1.0); }

double StructureResiduals::max() const { return std::max({R1, R2, R3}); }

StructureResiduals structure_residuals(const SphericalMetric& m, const SigmaPoint& p, FdStep step) {
  const PointData d = point_data(m, p);
  const CoframeValue w = coframe_from(d, p);
  const auto curls = coframe_curls(m, p, step);
  const double I = main_scalar(d.L, d.v);
  const double J = landsberg_routes(d.L, d.v).box_route;

  StructureResiduals out;
  out.K = curvature_from(curls, w);
  const Vec3 w1 = w.m.row(0).transpose(), w2 = w.m.row(1).transpose(), w3 = w.m.row(2).transpose();
  const Vec3 rhs1 = -wedge3(w2, w3);
  const Vec3 rhs2 = -wedge3(w3, w1) + I * wedge3(w3, w2);
  const Vec3 rhs3 = -out.K * wedge3(w1, w2) - J * wedge3(w2, w3);
  out.R1 = (curls[0] - rhs1).cwiseAbs().maxCoeff();
  out.R2 = (curls[1] - rhs2).cwiseAbs().maxCoeff();
  out.R3 = (curls[2] - rhs3).cwiseAbs().maxCoeff();
  return out;
}

double flag_curvature(const SphericalMetric& m, const SigmaPoint& p, FdStep step) {
  return curvature_from(coframe_curls(m, p, step), berwald_coframe(m, p));
}

Vec3 frame_derivative(const SphericalMetric& m, const SigmaScalar& f, const SigmaPoint& p, FdStep step) {
  const Vec3 g = gradient([&](const Vec3& q) { return f(indicatrix_lift(m, q)); }, p.chart, step);
  return coframe_components(OneForm{kSigmaBasis, g}, berwald_coframe(m, p));
}

double KillingResiduals::max() const { return std::max({a1, a2, a3, LI, LJ}); }

KillingResiduals killing_residuals(const SphericalMetric& m, const SigmaPoint& p, FdStep step) {
  const PointData d = point_data(m, p);
  const KillingComponents a = a_components(d.L, d.v);
  const double I = main_scalar(d.L, d.v);
  const double J = landsberg_routes(d.L, d.v).box_route;
  const double K = flag_curvature(m, p, step);

  auto component = [&](int i) {
    return [&m, i](const SigmaPoint& q) {
      const KillingComponents k = a_components(m, q.tangent);
      return i == 0 ? k.a1 : i == 1 ? k.a2 : k.a3;
    };
  };
  const Vec3 da1 = frame_derivative(m, component(0), p, step);
  const Vec3 da2 = frame_derivative(m, component(1), p, step);
  const Vec3 da3 = frame_derivative(m, component(2), p, step);
  const Vec3 dI = frame_derivative(m, [&m](const SigmaPoint& q) { return main_scalar(m, q.tangent); }, p, step);
  const Vec3 dJ = frame_derivative(m, [&m](const SigmaPoint& q) { return landsberg(m, q.tangent); }, p, step);

  const Vec3 want1(0.0, -a.a3, a.a2);
  const Vec3 want2 = Vec3(a.a3, 0.0, -a.a1) + I * want1;
  const Vec3 want3 = Vec3(-K * a.a2, K * a.a1, 0.0) + J * want1;

  KillingResiduals out;
  out.a1 = (da1 - want1).cwiseAbs().maxCoeff();
  out.a2 = (da2 - want2).cwiseAbs().maxCoeff();
  out.a3 = (da3 - want3).cwiseAbs().maxCoeff();
  out.LI = std::abs(a.a1 * J + a.a2 * dI(1) + a.a3 * dI(2));
  out.LJ = std::abs(-a.a1 * K * I + a.a2 * dJ(1) + a.a3 * dJ(2));
  return out;
}

std::vector<SigmaPoint> sample_sigma(const SphericalMetric& m, int count, std::uint64_t seed, double radius,
                                     double min_area) {
  if (count < 0) throw DomainError("point count must be non-negative");
  if (!(radius > 0.0) || !(radius < m.mu())) throw DomainError("sampling radius must lie in (0, mu)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SigmaPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * (count + 1)) throw DomainError("could not sample points away from z = 0");
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const double psi = 2.0 * std::numbers::pi * unit(rng);
    const Vec2 x(r * std::cos(theta), r * std::sin(theta));
    // area = x1 sin psi - x2 cos psi for the unit direction
    if (std::abs(x(0) * std::sin(psi) - x(1) * std::cos(psi)) < min_area) continue;
    out.push_back(indicatrix_lift(m, x, psi));
  }
  return out;
}

double ResidualReport::max_residual() const {
  double out = 0.0;
  for (const ResidualRow& r : rows) out = std::max(out, r.residuals.max());
  return out;
}

ResidualReport residual_report(const SphericalMetric& m, int count, std::uint64_t seed, double radius,
                               FdStep step) {
  ResidualReport report;
  report.seed = seed;
  int id = 0;
  for (const SigmaPoint& p : sample_sigma(m, count, seed, radius)) {
    report.rows.push_back({id++, p.chart, structure_residuals(m, p, step)});
  }
  return report;
}

void write_residual_csv(std::ostream& os, const ResidualReport& report) {
  os << "# seed=" << report.seed << '\n';
  csv::write_header(os, {"point_id", "x1", "x2", "psi", "R1", "R2", "R3", "K"});
  for (const ResidualRow& r : report.rows) {
    os << r.point_id << ',';
    csv::write_row(os, {r.chart(0), r.chart(1), r.chart(2), r.residuals.R1, r.residuals.R2, r.residuals.R3,
                        r.residuals.K});
  }
}

}  // namespace finsler
