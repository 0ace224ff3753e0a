#include "finsler/spherical.hpp"

#include <cmath>

namespace finsler {

SphericalMetric::SphericalMetric(std::string name, JetFn jet_fn, RealFn real_fn, double mu)
    : name_(std::move(name)), jet_fn_(std::move(jet_fn)), real_fn_(std::move(real_fn)), mu_(mu) {
  if (!(mu_ > 0.0)) throw DomainError("domain radius must be positive");
}

SphericalMetric SphericalMetric::scaled(double lambda) const {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("scale must be finite and non-zero");
  SphericalMetric out = *this;
  out.scale_ *= lambda;
  return out;
}

SphericalMetric SphericalMetric::with_jet_options(JetOptions opts) const {
  SphericalMetric out = *this;
  out.jet_options_ = opts;
  return out;
}

void SphericalMetric::check_domain(double t) const {
  if (!(t >= 0.0) || !(2.0 * t < mu_ * mu_)) {
    throw DomainError(name_ + ": |x|^2 = " + std::to_string(2.0 * t) + " outside the ball of radius " +
                      std::to_string(mu_));
  }
}

double SphericalMetric::phi(double t, double s) const {
  check_domain(t);
  double v = 0.0;
  try {
    v = scale_ * real_fn_(t, s);
  } catch (const NonFiniteError& e) {
    throw DomainError(name_ + ": " + e.what());
  }
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(name_ + ": phi(" + std::to_string(t) + ", " + std::to_string(s) + ") = " + std::to_string(v));
  }
  return v;
}

Jet2 SphericalMetric::phi_jet(double t, double s) const {
  check_domain(t);
  Jet2 j;
  if (jet_options_.mode == DiffMode::analytic) {
    j = jet_of(jet_fn_, t, s, jet_options_);
  } else {
    j = jet_of(real_fn_, t, s, jet_options_);
  }
  j *= scale_;
  if (!(j.value() > 0.0)) {
    throw DomainError(name_ + ": phi(" + std::to_string(t) + ", " + std::to_string(s) +
                      ") = " + std::to_string(j.value()) + " is not positive");
  }
  return j;
}

TangentVars vars_from_xy(const BaseTangent& p) {
  const double r = p.y.norm();
  if (!(r > 0.0)) throw ZeroVelocity("velocity y must be non-zero");
  TangentVars v;
  v.r = r;
  v.t = 0.5 * p.x.squaredNorm();
  v.r_i = p.y / r;
  v.s = p.x.dot(v.r_i);
  v.s_i = p.x - v.s * v.r_i;
  v.area = (p.x(0) * p.y(1) - p.x(1) * p.y(0)) / r;
  v.z = v.area * v.area;
  return v;
}

LocalJets LocalJets::at(const SphericalMetric& m, double t, double s) {
  LocalJets L;
  L.t = t;
  L.s = s;
  const Jet2 T = Jet2::variable_t(t);
  const Jet2 S = Jet2::variable_s(s);
  const Jet2 Z = 2.0 * T - S * S;

  L.phi = m.phi_jet(t, s);
  L.phi_t = L.phi.d_t();
  L.phi_s = L.phi.d_s();
  L.phi_ss = L.phi_s.d_s();
  L.phi_ts = L.phi_t.d_s();

  L.delta = L.phi - S * L.phi_s + Z * L.phi_ss;
  if (!(L.delta.value() > 0.0)) {
    throw ConvexityError(m.name() + ": delta = " + std::to_string(L.delta.value()) + " at (t, s) = (" +
                         std::to_string(t) + ", " + std::to_string(s) + ")");
  }
  L.vbar = (S * L.phi_ts + L.phi_ss - L.phi_t) / L.delta;
  L.ubar = (L.phi_s + S * L.phi_t - Z * L.phi_s * L.vbar) / L.phi;
  L.p = 0.5 * (L.ubar - S * L.vbar);
  L.D = L.phi * L.phi * L.phi * L.delta;
  L.Q = L.phi * L.phi * L.D.d_s() / (2.0 * pow(L.D, 1.5));
  L.Psi = 3.0 * L.phi_s * L.delta + L.phi * L.delta.d_s();
  return L;
}

double LocalJets::box(const Jet2& f) const {
  const double z = 2.0 * t - s * s;
  return s * f.partial(1, 0) + (1.0 - z * vbar.value()) * f.partial(0, 1);
}

double finsler_norm(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  return v.r * m.phi(v.t, v.s);
}

BaseTangent normalize_to_indicatrix(const SphericalMetric& m, const BaseTangent& p) {
  return {p.x, p.y / finsler_norm(m, p)};
}

Vec2 hilbert_coefficients(const LocalJets& L, const TangentVars& v) {
  return L.phi.value() * v.r_i + L.phi_s.value() * v.s_i;
}

Vec2 hilbert_coefficients(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  m.check_domain(v.t);
  const Jet2 phi = m.phi_jet(v.t, v.s);
  return phi.value() * v.r_i + phi.partial(0, 1) * v.s_i;
}

GeodesicData geodesic_data(const LocalJets& L, const TangentVars& v) {
  GeodesicData g;
  g.delta = L.delta.value();
  g.vbar = L.vbar.value();
  g.ubar = L.ubar.value();
  g.P = 0.5 * v.r * (g.ubar - v.s * g.vbar);
  g.P_direct = v.r * (L.phi_s.value() + v.s * L.phi_t.value()) / (2.0 * L.phi.value());
  g.G = 0.5 * v.r * v.r * (g.ubar * v.r_i + g.vbar * v.s_i);
  return g;
}

GeodesicData geodesic_data(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  return geodesic_data(LocalJets::at(m, v.t, v.s), v);
}

// G^i = P y^i + (r^2/2) vbar x^i with P = r p(t, s); the y-derivatives go through
// r_{y^j} = r_j and s_{y^j} = s_j / r.
Mat2 connection_coeffs(const LocalJets& L, const TangentVars& v, const Vec2& x, const Vec2& y) {
  const double p = L.p.value();
  const double p_s = L.p.partial(0, 1);
  const double vbar = L.vbar.value();
  const double vbar_s = L.vbar.partial(0, 1);
  Mat2 N;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double P_yj = v.r_i(j) * p + p_s * v.s_i(j);
      const double Q_yj = v.r * (v.r_i(j) * vbar + 0.5 * v.s_i(j) * vbar_s);
      N(i, j) = P_yj * y(i) + (i == j ? v.r * p : 0.0) + x(i) * Q_yj;
    }
  }
  return N;
}

Mat2 connection_coeffs(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  return connection_coeffs(LocalJets::at(m, v.t, v.s), v, p.x, p.y);
}

double metric_det(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  return LocalJets::at(m, v.t, v.s).D.value();
}

KillingComponents a_components(const LocalJets& L, const TangentVars& v) {
  const double phi = L.phi.value();
  const double delta = L.delta.value();
  const double vbar = L.vbar.value();
  const double vbar_s = L.vbar.partial(0, 1);
  const double ubar = L.ubar.value();
  const double s = v.s;
  KillingComponents k;
  k.a1 = (phi - s * L.phi_s.value()) * v.area;
  k.a2 = s * std::sqrt(phi * delta);
  const double T = 2.0 + s * (ubar - s * vbar) - (2.0 * vbar - s * vbar_s) * v.z;
  k.a3 = std::sqrt(delta) / (2.0 * std::sqrt(phi)) * T;
  return k;
}

KillingComponents a_components(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  const LocalJets L = LocalJets::at(m, v.t, v.s);
  const double F = v.r * L.phi.value();
  if (std::abs(F - 1.0) > 1e-10) throw NotOnIndicatrix("F = " + std::to_string(F) + " at the requested point");
  return a_components(L, v);
}

double main_scalar(const LocalJets& L, const TangentVars& v) { return -v.area * L.Q.value(); }

double main_scalar(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  return main_scalar(LocalJets::at(m, v.t, v.s), v);
}

LandsbergRoutes landsberg_routes(const LocalJets& L, const TangentVars& v) {
  const double s = v.s;
  if (std::abs(s) < 1e-14 && v.z < 1e-14) {
    throw DegenerateError("Landsberg scalar undefined where s = 0 and 2t - s^2 = 0");
  }
  const double phi = L.phi.value();
  const double delta = L.delta.value();
  const double vbar = L.vbar.value();
  const double Q = L.Q.value();

  LandsbergRoutes out;
  // box(area) = s vbar area, so box(I) = -area (s vbar Q + box Q).
  out.box_route = -v.area * (s * vbar * Q + L.box(L.Q)) / phi;

  const double a2 = s * std::sqrt(phi * delta);
  if (std::abs(a2) > 1e-9) {
    const double Psi = L.Psi.value();
    const double box_log_phi = L.box(L.phi) / phi;
    const double bracket =
        2.0 * delta * (L.box(L.Psi) + s * Psi * vbar) - Psi * (delta * box_log_phi + 3.0 * L.box(L.delta));
    const double a2J = -s * v.area / (4.0 * phi * delta * delta) * bracket;
    out.expanded_route = a2J / a2;
  }
  return out;
}

LandsbergRoutes landsberg_routes(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  return landsberg_routes(LocalJets::at(m, v.t, v.s), v);
}

double landsberg(const SphericalMetric& m, const BaseTangent& p) { return landsberg_routes(m, p).box_route; }

double projective_flatness_residual(const SphericalMetric& m, double t, double s) {
  const Jet2 phi = m.phi_jet(t, s);
  return s * phi.partial(1, 1) + phi.partial(0, 2) - phi.partial(1, 0);
}

InvariantSample sample_invariants(const SphericalMetric& m, const BaseTangent& p) {
  const TangentVars v = vars_from_xy(p);
  const LocalJets L = LocalJets::at(m, v.t, v.s);
  InvariantSample out;
  out.z = v.z;
  const KillingComponents a = a_components(L, v);
  out.a1 = a.a1;
  out.a2 = a.a2;
  out.a3 = a.a3;
  out.I = main_scalar(L, v);
  out.J = landsberg_routes(L, v).box_route;
  return out;
}

}  // namespace finsler
