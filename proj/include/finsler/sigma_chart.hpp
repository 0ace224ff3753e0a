#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "finsler/forms.hpp"
#include "finsler/spherical.hpp"

namespace finsler {

/// A point of the unit tangent bundle in the chart (x1, x2, psi), together with
/// its lift (x, y), y = (cos psi, sin psi) / phi(t, s), so F(x, y) = 1.
struct SigmaPoint {
  Vec3 chart = Vec3::Zero();
  BaseTangent tangent;

  Vec2 x() const { return chart.head<2>(); }
  double psi() const { return chart(2); }
};

SigmaPoint indicatrix_lift(const SphericalMetric& m, const Vec2& x, double psi);
SigmaPoint indicatrix_lift(const SphericalMetric& m, const Vec3& chart);
/// Chart point of a tangent vector (the direction angle of y).
SigmaPoint sigma_point_of(const SphericalMetric& m, const BaseTangent& p);

/// Rows omega_1, omega_2, omega_3 over (dx1, dx2, dpsi).
CoframeValue berwald_coframe(const SphericalMetric& m, const SigmaPoint& p);

/// The rotation lift -x2 d/dx1 + x1 d/dx2 - y2 d/dy1 + y1 d/dy2 in the chart.
Vec3 killing_lift(const SigmaPoint& p);

struct StructureResiduals {
  double R1 = 0, R2 = 0, R3 = 0;
  /// The flag curvature read off d omega_3.
  double K = 0;

  double max() const;
};

/// Sup-norm (chart components) of d omega_i minus the right-hand sides of the
/// structure equations, with I and J from the closed forms and K measured.
StructureResiduals structure_residuals(const SphericalMetric& m, const SigmaPoint& p, FdStep step = {});

/// K from the omega_1^omega_2 component of d omega_3.
double flag_curvature(const SphericalMetric& m, const SigmaPoint& p, FdStep step = {});

using SigmaScalar = std::function<double(const SigmaPoint&)>;

/// (f1, f2, f3) with df = f1 omega_1 + f2 omega_2 + f3 omega_3.
Vec3 frame_derivative(const SphericalMetric& m, const SigmaScalar& f, const SigmaPoint& p, FdStep step = {});

struct KillingResiduals {
  double a1 = 0, a2 = 0, a3 = 0;
  /// a1 J + a2 I_2 + a3 I_3.
  double LI = 0;
  /// -a1 K I + a2 J_2 + a3 J_3.
  double LJ = 0;

  double max() const;
};

KillingResiduals killing_residuals(const SphericalMetric& m, const SigmaPoint& p, FdStep step = {});

/// Uniform random points of Sigma with |x| <= radius, skipping points whose
/// oriented area |x ^ y|/|y| is below min_area.
std::vector<SigmaPoint> sample_sigma(const SphericalMetric& m, int count, std::uint64_t seed, double radius,
                                     double min_area = 0.05);

struct ResidualRow {
  int point_id = 0;
  Vec3 chart = Vec3::Zero();
  StructureResiduals residuals;
};

struct ResidualReport {
  std::uint64_t seed = 0;
  std::vector<ResidualRow> rows;

  double max_residual() const;
};

ResidualReport residual_report(const SphericalMetric& m, int count, std::uint64_t seed, double radius,
                               FdStep step = {});

/// `point_id,x1,x2,psi,R1,R2,R3,K` preceded by a `# seed=<n>` line.
void write_residual_csv(std::ostream& os, const ResidualReport& report);

}  // namespace finsler
