#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/forms.hpp"
#include "finsler/jet.hpp"

namespace finsler {

/// A spherically symmetric metric F(x, y) = |y| phi(|x|^2/2, <x,y>/|y|) on the
/// ball |x| < mu, optionally multiplied by a constant scale.
class SphericalMetric {
 public:
  using JetFn = std::function<Jet2(const Jet2&, const Jet2&)>;
  using RealFn = std::function<double(double, double)>;

  SphericalMetric(std::string name, JetFn jet_fn, RealFn real_fn,
                  double mu = std::numeric_limits<double>::infinity());

  /// `g(t, s)` must accept both doubles and Jet2.
  template <class G>
  static SphericalMetric from_generic(std::string name, G g,
                                      double mu = std::numeric_limits<double>::infinity()) {
    return SphericalMetric(
        std::move(name), [g](const Jet2& t, const Jet2& s) { return Jet2(g(t, s)); },
        [g](double t, double s) { return static_cast<double>(g(t, s)); }, mu);
  }

  const std::string& name() const { return name_; }
  double mu() const { return mu_; }
  double scale() const { return scale_; }
  const JetOptions& jet_options() const { return jet_options_; }

  /// The metric lambda * F. Its flag curvature is K / lambda^2.
  SphericalMetric scaled(double lambda) const;
  SphericalMetric with_jet_options(JetOptions opts) const;

  /// Scaled phi at (t, s); DomainError unless finite and positive.
  double phi(double t, double s) const;
  /// Scaled jet of phi at (t, s), per the metric's JetOptions.
  Jet2 phi_jet(double t, double s) const;
  /// DomainError unless 2t < mu^2.
  void check_domain(double t) const;

 private:
  std::string name_;
  JetFn jet_fn_;
  RealFn real_fn_;
  double mu_;
  double scale_ = 1.0;
  JetOptions jet_options_{};
};

/// A point of TM over the ball.
struct BaseTangent {
  Vec2 x = Vec2::Zero();
  Vec2 y = Vec2::UnitX();
};

struct TangentVars {
  double r = 0, t = 0, s = 0;
  Vec2 r_i = Vec2::Zero();
  Vec2 s_i = Vec2::Zero();
  double z = 0;
  /// Oriented area (x1 y2 - x2 y1)/|y|; its square equals z.
  double area = 0;
};

TangentVars vars_from_xy(const BaseTangent& p);

/// Every (t, s)-scalar of the metric that the formulas below need, as jets at one
/// point. Orders: phi 4, phi_t/phi_s 3, delta/vbar/ubar/D 2, Q/psi 1.
struct LocalJets {
  double t = 0, s = 0;
  Jet2 phi, phi_t, phi_s, phi_ss, phi_ts;
  Jet2 delta;  // phi - s phi_s + (2t - s^2) phi_ss
  Jet2 vbar;   // (s phi_ts + phi_ss - phi_t) / delta
  Jet2 ubar;   // (phi_s + s phi_t - (2t - s^2) phi_s vbar) / phi
  Jet2 p;      // (phi_s + s phi_t) / (2 phi), so P = r p
  Jet2 D;      // phi^3 delta = det g
  Jet2 Q;      // phi^2 D_s / (2 D^{3/2})
  Jet2 Psi;    // 3 phi_s delta + phi delta_s

  /// ConvexityError if delta <= 0, DomainError outside the ball.
  static LocalJets at(const SphericalMetric& m, double t, double s);

  /// The operator s d/dt + (1 - (2t - s^2) vbar) d/ds applied to a jet.
  double box(const Jet2& f) const;
};

/// F(x, y).
double finsler_norm(const SphericalMetric& m, const BaseTangent& p);
/// The same point rescaled so that F = 1.
BaseTangent normalize_to_indicatrix(const SphericalMetric& m, const BaseTangent& p);

/// F_{y^i}, the Hilbert form in (dx1, dx2).
Vec2 hilbert_coefficients(const SphericalMetric& m, const BaseTangent& p);
Vec2 hilbert_coefficients(const LocalJets& L, const TangentVars& v);

struct GeodesicData {
  double delta = 0, vbar = 0, ubar = 0;
  /// P = (r/2)(ubar - s vbar).
  double P = 0;
  /// P = r (phi_s + s phi_t) / (2 phi), an independent route to the same value.
  double P_direct = 0;
  /// Spray coefficients G^i = (r^2/2)(ubar r^i + vbar s^i).
  Vec2 G = Vec2::Zero();
};

GeodesicData geodesic_data(const SphericalMetric& m, const BaseTangent& p);
GeodesicData geodesic_data(const LocalJets& L, const TangentVars& v);

/// N(i, j) = dG^i/dy^j through the chain rule in (r, t, s).
Mat2 connection_coeffs(const SphericalMetric& m, const BaseTangent& p);
Mat2 connection_coeffs(const LocalJets& L, const TangentVars& v, const Vec2& x, const Vec2& y);

/// det(g_ij) = phi^3 delta.
double metric_det(const SphericalMetric& m, const BaseTangent& p);

/// Contractions a_i = omega_i(Xhat) of the rotation lift with the Berwald coframe.
struct KillingComponents {
  double a1 = 0, a2 = 0, a3 = 0;
};

/// NotOnIndicatrix unless |F(p) - 1| <= 1e-10.
KillingComponents a_components(const SphericalMetric& m, const BaseTangent& p);
KillingComponents a_components(const LocalJets& L, const TangentVars& v);

/// Main scalar. It carries the opposite orientation factor to a1,
/// I = -area * Q, which is the sign for which dw2 = -w3^w1 + I w3^w2.
double main_scalar(const SphericalMetric& m, const BaseTangent& p);
double main_scalar(const LocalJets& L, const TangentVars& v);

struct LandsbergRoutes {
  /// (1/phi) box(I) from the jet of the closed-form I.
  double box_route = 0;
  /// The expanded a2 J formula in terms of Psi, delta, log phi divided by a2;
  /// empty where a2 vanishes.
  std::optional<double> expanded_route;
};

/// DegenerateError where neither route is defined (s = 0 and z = 0).
LandsbergRoutes landsberg_routes(const SphericalMetric& m, const BaseTangent& p);
LandsbergRoutes landsberg_routes(const LocalJets& L, const TangentVars& v);
double landsberg(const SphericalMetric& m, const BaseTangent& p);

/// s phi_ts + phi_ss - phi_t; zero for projectively flat metrics.
double projective_flatness_residual(const SphericalMetric& m, double t, double s);

/// z, the Killing components, I, J and (when measured) K at one point of Sigma.
struct InvariantSample {
  double z = 0;
  double a1 = 0, a2 = 0, a3 = 0;
  double I = 0, J = 0;
  double K = std::numeric_limits<double>::quiet_NaN();
};

InvariantSample sample_invariants(const SphericalMetric& m, const BaseTangent& p);

// ---------------------------------------------------------------------------
// Profile extraction

struct ZGrid {
  double min = 0.05;
  double max = 0.8;
  int count = 50;

  /// Validates count >= 2 and 0 < min < max.
  std::vector<double> values() const;
};

/// Extracted profiles; `a` is strictly increasing and in the same order as `z`.
struct ProfilePair {
  std::vector<double> z, a, u, v;
  /// du/da from the derivative law K I a2 + J a3 = u u' + K a.
  std::vector<double> du;
  double curvature_target = 0;
  double measured_k_min = 0, measured_k_max = 0;
  /// Largest |u| / |v| discrepancy between the two representatives of a level set.
  double rep_gap_u = 0, rep_gap_v = 0;

  std::size_t size() const { return a.size(); }
};

struct ExtractOptions {
  /// Representative points use s = fraction * sqrt(min(z, mu^2 - z)).
  double rep_fraction = 0.6;
  double alt_fraction = 0.3;
  double rep_tol = 1e-6;
  double curvature_tol = 1e-5;
  int curvature_probes = 8;
  /// Grid values must satisfy z <= boundary_band * mu^2.
  double boundary_band = 0.8;
  FdStep fd{};
};

/// A point of Sigma (F = 1) with 2t - s^2 = z, s = fraction * sqrt(min(z, mu^2 - z)),
/// positive oriented area, and velocity direction angle psi.
BaseTangent representative_point(const SphericalMetric& m, double z, double fraction, double psi = 0.0);

/// A point of Sigma on the level set a1 = a_target, using the representative
/// family with the given fraction; z_guess seeds the search.
BaseTangent level_set_point(const SphericalMetric& m, double a_target, double z_guess, double fraction,
                            double psi = 0.0);

/// Runs the extraction for the metric scaled by `scale`, which must have constant
/// flag curvature K in {1, 0, -1}.
ProfilePair extract_profiles(const SphericalMetric& m, double K, double scale, std::span<const double> z_grid,
                             const ExtractOptions& opts = {});

/// `z,a,u,v`, one row per grid point in grid order.
void write_profile_csv(std::ostream& os, const ProfilePair& profiles);

}  // namespace finsler
