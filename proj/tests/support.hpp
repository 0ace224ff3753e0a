#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "finsler/metrics.hpp"
#include "finsler/sigma_chart.hpp"
#include "finsler/spherical.hpp"

namespace finsler::testing {

/// Neither projectively flat nor Riemannian nor of constant curvature.
inline SphericalMetric wobbly_metric() {
  return SphericalMetric::from_generic("wobbly", [](const auto& t, const auto& s) {
    using std::sqrt;
    return sqrt(1.0 + 0.3 * t) + 0.2 * s + 0.1 * s * s / (1.0 + t);
  });
}

/// Points (x, y) with |x| <= radius, |x ^ y|/|y| >= min_area, random |y| in [0.5, 2].
inline std::vector<BaseTangent> random_tangents(int count, std::uint64_t seed, double radius,
                                                double min_area = 0.05) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<BaseTangent> out;
  while (static_cast<int>(out.size()) < count) {
    const double r = radius * std::sqrt(U(rng)), th = 2 * std::numbers::pi * U(rng);
    const double psi = 2 * std::numbers::pi * U(rng), len = 0.5 + 1.5 * U(rng);
    const Vec2 x(r * std::cos(th), r * std::sin(th));
    const Vec2 y(len * std::cos(psi), len * std::sin(psi));
    if (std::abs(x(0) * y(1) - x(1) * y(0)) / len < min_area) continue;
    out.push_back({x, y});
  }
  return out;
}

inline std::vector<BaseTangent> random_unit_tangents(const SphericalMetric& m, int count, std::uint64_t seed,
                                                     double radius, double min_area = 0.05) {
  std::vector<BaseTangent> out;
  for (const BaseTangent& p : random_tangents(count, seed, radius, min_area)) {
    out.push_back(normalize_to_indicatrix(m, p));
  }
  return out;
}

}  // namespace finsler::testing
