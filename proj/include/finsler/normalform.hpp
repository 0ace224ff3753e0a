#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/forms.hpp"
#include "finsler/spherical.hpp"

namespace finsler {

enum class CurvatureCase { PositiveOne, Zero, NegativeOne };

double curvature_value(CurvatureCase c);
/// `k1`, `k0` or `k-1`.
std::string_view case_name(CurvatureCase c);
CurvatureCase parse_case(std::string_view name);
/// The case for K in {1, 0, -1}; DomainError otherwise.
CurvatureCase case_for(double K);

/// A profile value with its first two a-derivatives.
struct ProfileValue {
  double value = 0, d1 = 0, d2 = 0;
};

struct ProfileFunctions {
  std::function<ProfileValue(double)> u;
  std::function<ProfileValue(double)> v;

  static ProfileFunctions constant(double u, double v);
  /// Monotone cubic interpolation of an extracted profile (at least 40 points).
  static ProfileFunctions interpolate(const ProfilePair& profiles);
};

struct NormalChartPoint {
  double t = 0, a = 0, b = 0;

  Vec3 chart() const { return {t, a, b}; }
  static NormalChartPoint from(const Vec3& q) { return {q(0), q(1), q(2)}; }
};

/// Rows omega_1, omega_2, omega_3 over (dt, da, db). NonPositiveU unless u(a) > 0.
CoframeValue coframe(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p);

struct NormalScalars {
  double I = 0, J = 0;
};

NormalScalars scalars(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p);

struct FrameResiduals {
  double R1 = 0, R2 = 0, R3 = 0;

  double max() const;
};

/// Sup-norm of d omega_i minus the structure-equation right-hand sides, on the
/// (t, a, b) chart, with K the case value.
FrameResiduals verify_structure(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p,
                                FdStep step = {});

/// a2, a3 as functions of (t, a) for the case.
struct KillingReconstruction {
  double a2 = 0, a3 = 0;
};

KillingReconstruction reconstruct_a(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p);

struct ConservationResiduals {
  /// K a2^2 + a3^2 - u^2.
  double quadratic = 0;
  /// K I a2 + J a3 - (u u' + K a).
  double derivative = 0;
  /// a2 J - a3 I - u^2 v.
  double mixed = 0;

  double max() const;
};

ConservationResiduals conservation_check(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p);

struct GeometricFields {
  /// The Killing lift and the Reeb field in (d/dt, d/da, d/db).
  Vec3 xhat = Vec3::UnitZ();
  Vec3 reeb = Vec3::Zero();
  /// omega(Xhat) and omega(E).
  Vec3 omega_xhat = Vec3::Zero();
  Vec3 omega_reeb = Vec3::Zero();
  /// Largest deviation from (a, a2, a3) and (1, 0, 0).
  double residual = 0;
};

GeometricFields geometric_fields(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p);

/// Uniform chart points with a in [a_min, a_max], t over a full period for
/// K = 1 (and over [-2, 2] otherwise), b in [-1, 1].
std::vector<NormalChartPoint> sample_normal_chart(CurvatureCase c, int count, std::uint64_t seed, double a_min,
                                                  double a_max);

struct ProfileReference {
  std::function<double(double)> u, v;
};

struct RoundtripReport {
  CurvatureCase curvature_case = CurvatureCase::Zero;
  int points = 0;
  double max_structure = 0;
  double max_conservation = 0;
  double max_geometric = 0;
  /// Largest deviation from a reference profile at the grid nodes.
  std::optional<double> reference_u, reference_v;
};

/// Interpolates the extracted profiles, substitutes them into the normal form of
/// the matching case and checks the structure equations and conservation laws.
RoundtripReport roundtrip(CurvatureCase c, const ProfilePair& profiles, int points = 50, std::uint64_t seed = 7,
                          const std::optional<ProfileReference>& reference = std::nullopt, FdStep step = {});

/// `t,a,b,w11,...,w33,I,J`.
void write_normal_form_csv(std::ostream& os, CurvatureCase c, const ProfileFunctions& prof,
                           const std::vector<NormalChartPoint>& points);

}  // namespace finsler
