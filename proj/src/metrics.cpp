#include "finsler/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finsler/sigma_chart.hpp"

namespace finsler {

SphericalMetric euclid_metric() {
  return SphericalMetric::from_generic("euclid", [](const auto& t, const auto&) { return 0.0 * t + 1.0; });
}

SphericalMetric funk_metric() {
  return SphericalMetric::from_generic(
      "funk",
      [](const auto& t, const auto& s) {
        using std::sqrt;
        return (sqrt(s * s + 1.0 - 2.0 * t) + s) / (1.0 - 2.0 * t);
      },
      1.0);
}

SphericalMetric klein_sphere_metric() {
  return SphericalMetric::from_generic("klein-sphere", [](const auto& t, const auto& s) {
    using std::sqrt;
    return sqrt(1.0 + 2.0 * t - s * s) / (1.0 + 2.0 * t);
  });
}

SphericalMetric builtin_metric(std::string_view name) {
  if (name == "euclid") return euclid_metric();
  if (name == "funk") return funk_metric();
  if (name == "klein-sphere") return klein_sphere_metric();
  throw DomainError("unknown built-in metric '" + std::string(name) + "'");
}

bool is_builtin_metric(std::string_view name) {
  return name == "euclid" || name == "funk" || name == "klein-sphere";
}

std::vector<std::string> builtin_metric_names() { return {"euclid", "funk", "klein-sphere"}; }

double funk_u(double a) { return std::sqrt(1.0 + 4.0 * a * a); }

double funk_v_reference(double a) { return -3.0 * a / (1.0 + 4.0 * a * a); }

FixtureCheck check_fixture(const SphericalMetric& m, double radius, int points) {
  FixtureCheck out;
  out.k_min = std::numeric_limits<double>::infinity();
  out.k_max = -std::numeric_limits<double>::infinity();
  for (const SigmaPoint& p : sample_sigma(m, points, 20240607, radius)) {
    const TangentVars v = vars_from_xy(p.tangent);
    out.max_projective_residual =
        std::max(out.max_projective_residual, std::abs(projective_flatness_residual(m, v.t, v.s)));
    const double K = flag_curvature(m, p);
    out.k_min = std::min(out.k_min, K);
    out.k_max = std::max(out.k_max, K);
  }
  return out;
}

}  // namespace finsler
