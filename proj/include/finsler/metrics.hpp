#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "finsler/spherical.hpp"

namespace finsler {

/// phi = 1.
SphericalMetric euclid_metric();

/// Funk metric of the unit disk, phi = (sqrt(s^2 + 1 - 2t) + s) / (1 - 2t); K = -1/4.
SphericalMetric funk_metric();

/// Round sphere through central projection, phi = sqrt(1 + 2t - s^2) / (1 + 2t); K = 1.
SphericalMetric klein_sphere_metric();

/// Source text of the Funk generator in the expression language, over (t, s).
inline constexpr std::string_view kFunkSource = "(sqrt(s^2+1-2*t)+s)/(1-2*t)";
inline constexpr std::string_view kKleinSphereSource = "sqrt(1+2*t-s^2)/(1+2*t)";

/// `euclid`, `funk` or `klein-sphere`; throws DomainError for other names.
SphericalMetric builtin_metric(std::string_view name);
bool is_builtin_metric(std::string_view name);
std::vector<std::string> builtin_metric_names();

/// Closed-form profiles of the Funk metric (scaled by 1/2 to K = -1).
double funk_u(double a);
/// Reference profile v(a) = -3a/(1 + 4a^2). The extracted v has the opposite sign.
double funk_v_reference(double a);

/// Result of checking a fixture against its defining properties.
struct FixtureCheck {
  double max_projective_residual = 0;
  double k_min = 0, k_max = 0;
};

/// Projective flatness residual and measured flag curvature over a fixed set of
/// points of Sigma with |x| <= radius.
FixtureCheck check_fixture(const SphericalMetric& m, double radius, int points = 12);

}  // namespace finsler
