#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace finsler;
using finsler::testing::random_tangents;
using finsler::testing::random_unit_tangents;
using finsler::testing::wobbly_metric;

namespace {

double L(const SphericalMetric& m, const Vec2& x, const Vec2& y) {
  const double F = finsler_norm(m, {x, y});
  return 0.5 * F * F;
}

// Fundamental tensor by central second differences of F^2/2 in y.
Mat2 fd_metric_tensor(const SphericalMetric& m, const BaseTangent& p, double h = 1e-4) {
  Mat2 g;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Vec2 ei = Vec2::Unit(i) * h, ej = Vec2::Unit(j) * h;
      g(i, j) = (L(m, p.x, p.y + ei + ej) - L(m, p.x, p.y + ei - ej) - L(m, p.x, p.y - ei + ej) +
                 L(m, p.x, p.y - ei - ej)) /
                (4 * h * h);
    }
  }
  return g;
}

// Spray coefficients from their definition,
// G^i = (1/4) g^{il} ([F^2]_{x^k y^l} y^k - [F^2]_{x^l}), by finite differences.
Vec2 fd_spray(const SphericalMetric& m, const BaseTangent& p, double h = 1e-4) {
  const Mat2 g = fd_metric_tensor(m, p);
  Vec2 rhs;
  for (int l = 0; l < 2; ++l) {
    const Vec2 el = Vec2::Unit(l) * h;
    double mixed = 0.0;
    for (int k = 0; k < 2; ++k) {
      const Vec2 ek = Vec2::Unit(k) * h;
      const double d2 = (L(m, p.x + ek, p.y + el) - L(m, p.x + ek, p.y - el) - L(m, p.x - ek, p.y + el) +
                         L(m, p.x - ek, p.y - el)) /
                        (4 * h * h);
      mixed += 2.0 * d2 * p.y(k);
    }
    const double dx = (L(m, p.x + el, p.y) - L(m, p.x - el, p.y)) / (2 * h);
    rhs(l) = mixed - 2.0 * dx;
  }
  return 0.25 * g.inverse() * rhs;
}

}  // namespace

TEST(VarsFromXY, OrthogonalPair) {
  const TangentVars v = vars_from_xy({Vec2(1, 0), Vec2(0, 2)});
  EXPECT_DOUBLE_EQ(v.r, 2.0);
  EXPECT_DOUBLE_EQ(v.t, 0.5);
  EXPECT_DOUBLE_EQ(v.s, 0.0);
  EXPECT_EQ(v.r_i, Vec2(0, 1));
  EXPECT_EQ(v.s_i, Vec2(1, 0));
  EXPECT_DOUBLE_EQ(v.z, 1.0);
}

TEST(VarsFromXY, Origin) {
  const TangentVars v = vars_from_xy({Vec2(0, 0), Vec2(0.6, 0.8)});
  EXPECT_DOUBLE_EQ(v.r, 1.0);
  EXPECT_EQ(v.t, 0.0);
  EXPECT_EQ(v.s, 0.0);
  EXPECT_EQ(v.z, 0.0);
}

TEST(VarsFromXY, DiagonalVelocity) {
  const TangentVars v = vars_from_xy({Vec2(1, 0), Vec2(1, 1)});
  EXPECT_NEAR(v.r, std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(v.t, 0.5);
  EXPECT_NEAR(v.s, 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v.z, 0.5, 1e-15);
  EXPECT_NEAR(v.z, 2 * v.t - v.s * v.s, 1e-12);
}

TEST(VarsFromXY, ZeroVelocity) { EXPECT_THROW(vars_from_xy({Vec2(1, 0), Vec2(0, 0)}), ZeroVelocity); }

TEST(VarsFromXY, AreaSquaresToZ) {
  for (const BaseTangent& p : random_tangents(100, 2, 3.0, 0.0)) {
    const TangentVars v = vars_from_xy(p);
    EXPECT_NEAR(v.z, 2 * v.t - v.s * v.s, 1e-12 * std::max(1.0, 2 * v.t));
  }
}

TEST(Hilbert, Euclidean) {
  const Vec2 h = hilbert_coefficients(euclid_metric(), {Vec2(1, 0), Vec2(0, 1)});
  EXPECT_NEAR(h(0), 0.0, 1e-15);
  EXPECT_NEAR(h(1), 1.0, 1e-15);
}

TEST(Hilbert, FunkAtOrigin) {
  const Vec2 y(0.6, -0.8);
  const Vec2 h = hilbert_coefficients(funk_metric(), {Vec2(0, 0), y});
  EXPECT_LE((h - y).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hilbert, DegreeZeroInY) {
  const SphericalMetric m = funk_metric();
  for (const BaseTangent& p : random_tangents(30, 4, 0.8)) {
    const Vec2 a = hilbert_coefficients(m, p);
    const Vec2 b = hilbert_coefficients(m, {p.x, 2.0 * p.y});
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Hilbert, MatchesGradientOfF) {
  const SphericalMetric m = wobbly_metric();
  for (const BaseTangent& p : random_tangents(20, 6, 1.0)) {
    const Vec2 h = hilbert_coefficients(m, p);
    for (int i = 0; i < 2; ++i) {
      const Vec2 e = Vec2::Unit(i) * 1e-6;
      const double fd = (finsler_norm(m, {p.x, p.y + e}) - finsler_norm(m, {p.x, p.y - e})) / 2e-6;
      EXPECT_NEAR(h(i), fd, 1e-8);
    }
  }
}

TEST(GeodesicData, Euclidean) {
  const GeodesicData g = geodesic_data(euclid_metric(), {Vec2(0.3, 0.4), Vec2(1, 2)});
  EXPECT_EQ(g.delta, 1.0);
  EXPECT_EQ(g.vbar, 0.0);
  EXPECT_EQ(g.ubar, 0.0);
  EXPECT_EQ(g.P, 0.0);
  EXPECT_EQ(g.G, Vec2::Zero());
}

TEST(GeodesicData, FunkAtOrigin) {
  const Vec2 y(1.2, -0.5);
  const GeodesicData g = geodesic_data(funk_metric(), {Vec2(0, 0), y});
  const double r = y.norm();
  EXPECT_NEAR(g.vbar, 0.0, 1e-15);
  EXPECT_NEAR(g.ubar, 1.0, 1e-15);
  EXPECT_LE((g.G - 0.5 * r * y).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(GeodesicData, ProjectivelyFlatFixtures) {
  for (const SphericalMetric& m : {funk_metric(), klein_sphere_metric()}) {
    for (const BaseTangent& p : random_tangents(100, 8, 0.8)) {
      const GeodesicData g = geodesic_data(m, p);
      EXPECT_LE(std::abs(g.vbar), 1e-9) << m.name();
      EXPECT_NEAR(g.P, g.P_direct, 1e-10 * std::max(1.0, std::abs(g.P))) << m.name();
    }
  }
}

TEST(GeodesicData, SprayMatchesDefinition) {
  for (const SphericalMetric& m : {funk_metric(), klein_sphere_metric(), wobbly_metric()}) {
    for (const BaseTangent& p : random_tangents(20, 9, 0.6)) {
      const Vec2 G = geodesic_data(m, p).G;
      const Vec2 ref = fd_spray(m, p);
      EXPECT_LE((G - ref).cwiseAbs().maxCoeff(), 2e-5 * std::max(1.0, ref.norm())) << m.name();
    }
  }
}

TEST(GeodesicData, ConvexityError) {
  // phi = 1 + 2 s^2 has delta = 1 - 2 s^2 + 4 z, negative at s^2 = 2t.
  const SphericalMetric bad =
      SphericalMetric::from_generic("bad", [](const auto& t, const auto& s) { return 0.0 * t + 1.0 + 2.0 * s * s; });
  EXPECT_THROW(geodesic_data(bad, {Vec2(1, 0), Vec2(1, 0)}), ConvexityError);
}

TEST(ConnectionCoeffs, Euclidean) {
  EXPECT_EQ(connection_coeffs(euclid_metric(), {Vec2(0.4, 0.1), Vec2(0.2, 1)}), Mat2::Zero());
}

TEST(ConnectionCoeffs, FunkAtOriginAlongX) {
  const Mat2 N = connection_coeffs(funk_metric(), {Vec2(0, 0), Vec2(1, 0)});
  EXPECT_NEAR(N(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(N(1, 1), 0.5, 1e-14);
  EXPECT_NEAR(N(0, 1), 0.0, 1e-14);
}

TEST(ConnectionCoeffs, EulerIdentity) {
  const SphericalMetric m = funk_metric();
  for (const BaseTangent& p : random_tangents(50, 10, 0.8)) {
    const Vec2 G = geodesic_data(m, p).G;
    EXPECT_LE((connection_coeffs(m, p) * p.y - 2.0 * G).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, G.norm()));
  }
}

TEST(ConnectionCoeffs, MatchesDifferencedSpray) {
  for (const SphericalMetric& m : {funk_metric(), wobbly_metric()}) {
    for (const BaseTangent& p : random_tangents(30, 12, 0.7)) {
      const Mat2 N = connection_coeffs(m, p);
      for (int j = 0; j < 2; ++j) {
        const Vec2 e = Vec2::Unit(j) * 1e-5;
        const Vec2 col =
            (geodesic_data(m, {p.x, p.y + e}).G - geodesic_data(m, {p.x, p.y - e}).G) / 2e-5;
        EXPECT_LE((N.col(j) - col).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, col.norm())) << m.name();
      }
    }
  }
}

TEST(MetricDet, Values) {
  EXPECT_EQ(metric_det(euclid_metric(), {Vec2(0.3, 0.1), Vec2(1, 1)}), 1.0);
  EXPECT_NEAR(metric_det(funk_metric(), {Vec2(0, 0), Vec2(0, 1)}), 1.0, 1e-15);
}

TEST(MetricDet, MatchesHessianOfEnergy) {
  for (const SphericalMetric& m : {funk_metric(), klein_sphere_metric(), wobbly_metric()}) {
    for (const BaseTangent& p : random_tangents(20, 13, 0.7)) {
      const double D = metric_det(m, p);
      EXPECT_NEAR(D, fd_metric_tensor(m, p).determinant(), 1e-6 * std::max(1.0, D)) << m.name();
      EXPECT_NEAR(D, metric_det(m, {p.x, 3.0 * p.y}), 1e-12 * D);
    }
  }
}

TEST(KillingComponents, EuclideanExamples) {
  const SphericalMetric m = euclid_metric();
  const KillingComponents a = a_components(m, {Vec2(1, 0), Vec2(0, 1)});
  EXPECT_NEAR(a.a1, 1.0, 1e-15);
  EXPECT_NEAR(a.a2, 0.0, 1e-15);
  EXPECT_NEAR(a.a3, 1.0, 1e-15);
  const KillingComponents b = a_components(m, {Vec2(1, 0), Vec2(1, 0)});
  EXPECT_NEAR(b.a1, 0.0, 1e-15);
  EXPECT_NEAR(b.a2, 1.0, 1e-15);
  EXPECT_NEAR(b.a3, 1.0, 1e-15);
}

TEST(KillingComponents, RequiresIndicatrix) {
  EXPECT_THROW(a_components(funk_metric(), {Vec2(0.1, 0.2), Vec2(2, 0)}), NotOnIndicatrix);
}

TEST(KillingComponents, HilbertFormContraction) {
  // a1 = omega_1(X) = -F_{y1} x2 + F_{y2} x1.
  for (const SphericalMetric& m : {funk_metric(), wobbly_metric()}) {
    for (const BaseTangent& p : random_unit_tangents(m, 30, 14, 0.7)) {
      const Vec2 h = hilbert_coefficients(m, p);
      EXPECT_NEAR(a_components(m, p).a1, -h(0) * p.x(1) + h(1) * p.x(0), 1e-13);
    }
  }
}

TEST(MainScalar, VanishesForRiemannian) {
  EXPECT_EQ(main_scalar(euclid_metric(), {Vec2(0.3, 0.2), Vec2(0.1, 1)}), 0.0);
  const SphericalMetric m = klein_sphere_metric();
  for (const BaseTangent& p : random_tangents(100, 15, 1.5)) EXPECT_LE(std::abs(main_scalar(m, p)), 1e-8);
}

TEST(MainScalar, FunkAgainstDifferencedDeterminant) {
  // s = 0, t = 0.18: x = (0.6, 0), y along x2.
  const SphericalMetric m = funk_metric();
  const BaseTangent p = normalize_to_indicatrix(m, {Vec2(0.6, 0), Vec2(0, 1)});
  const double I = main_scalar(m, p);
  EXPECT_TRUE(std::isfinite(I));
  EXPECT_GT(std::abs(I), 0.1);

  auto D = [&](double s) { return LocalJets::at(m, 0.18, s).D.value(); };
  const double h = 1e-5;
  const double Ds = (D(h) - D(-h)) / (2 * h);
  const double phi = m.phi(0.18, 0.0);
  const double area = 0.6;  // (x1 y2 - x2 y1)/|y|
  EXPECT_NEAR(I, -area * phi * phi * Ds / (2 * std::pow(D(0), 1.5)), 1e-8);
}

TEST(Landsberg, RoutesAgree) {
  for (const SphericalMetric& m : {funk_metric(), funk_metric().scaled(0.5), wobbly_metric()}) {
    for (const BaseTangent& p : random_tangents(50, 16, 0.7)) {
      const LandsbergRoutes r = landsberg_routes(m, p);
      ASSERT_TRUE(r.expanded_route.has_value());
      EXPECT_NEAR(r.box_route, *r.expanded_route, 1e-6 * std::max(1.0, std::abs(r.box_route))) << m.name();
    }
  }
}

TEST(Landsberg, RiemannianVanishes) {
  EXPECT_EQ(landsberg(euclid_metric(), {Vec2(0.3, 0.2), Vec2(0.1, 1)}), 0.0);
  for (const BaseTangent& p : random_tangents(100, 17, 1.5)) {
    EXPECT_LE(std::abs(landsberg(klein_sphere_metric(), p)), 1e-7);
  }
}

TEST(Landsberg, DegenerateAtOrigin) {
  EXPECT_THROW(landsberg(funk_metric(), {Vec2(0, 0), Vec2(1, 0)}), DegenerateError);
}

TEST(Invariants, HomogeneousOfDegreeZero) {
  const SphericalMetric m = funk_metric().scaled(0.5);
  for (const BaseTangent& p : random_tangents(30, 18, 0.8)) {
    const InvariantSample a = sample_invariants(m, normalize_to_indicatrix(m, p));
    const InvariantSample b = sample_invariants(m, normalize_to_indicatrix(m, {p.x, 3.7 * p.y}));
    EXPECT_NEAR(a.a1, b.a1, 1e-12);
    EXPECT_NEAR(a.a2, b.a2, 1e-12);
    EXPECT_NEAR(a.a3, b.a3, 1e-12);
    EXPECT_NEAR(a.I, b.I, 1e-12);
    EXPECT_NEAR(a.J, b.J, 1e-12);
  }
}

TEST(Invariants, ScalingLaw) {
  const SphericalMetric m = funk_metric();
  const double lambda = 0.5;
  for (const BaseTangent& p : random_unit_tangents(m, 20, 19, 0.7)) {
    const InvariantSample a = sample_invariants(m, p);
    const SphericalMetric ms = m.scaled(lambda);
    const InvariantSample b = sample_invariants(ms, normalize_to_indicatrix(ms, p));
    EXPECT_NEAR(b.a1, lambda * a.a1, 1e-12);
    EXPECT_NEAR(b.a2, lambda * a.a2, 1e-12);
    EXPECT_NEAR(b.a3, a.a3, 1e-12);
    EXPECT_NEAR(b.I, a.I, 1e-12);
    EXPECT_NEAR(b.J, a.J / lambda, 1e-11);
  }
}

namespace {

struct LevelSetStats {
  double quadratic_spread = 0, mixed_spread = 0;
};

// Five points on the a1 = a level set through z0, from different families and directions.
std::vector<InvariantSample> level_set(const SphericalMetric& m, double a, double z0) {
  std::vector<InvariantSample> out;
  const double fractions[] = {0.6, 0.45, 0.3, 0.15, -0.2};
  for (int k = 0; k < 5; ++k) {
    out.push_back(sample_invariants(m, level_set_point(m, a, z0, fractions[k], 1.1 * k)));
  }
  return out;
}

LevelSetStats spreads(const std::vector<InvariantSample>& pts, double K) {
  double qmin = 1e300, qmax = -1e300, mmin = 1e300, mmax = -1e300;
  for (const InvariantSample& s : pts) {
    const double q = K * s.a2 * s.a2 + s.a3 * s.a3;
    const double mx = s.a2 * s.J - s.a3 * s.I;
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
    mmin = std::min(mmin, mx);
    mmax = std::max(mmax, mx);
  }
  return {qmax - qmin, mmax - mmin};
}

}  // namespace

TEST(Conservation, LevelSetsOfA1) {
  struct Fixture {
    SphericalMetric m;
    double K;
  };
  for (const Fixture& f : {Fixture{funk_metric().scaled(0.5), -1.0}, Fixture{klein_sphere_metric(), 1.0},
                           Fixture{euclid_metric(), 0.0}}) {
    for (int i = 0; i < 10; ++i) {
      const double z0 = 0.05 + 0.07 * i;
      const BaseTangent p = representative_point(f.m, z0, 0.6);
      const double a = sample_invariants(f.m, p).a1;
      const LevelSetStats st = spreads(level_set(f.m, a, z0), f.K);
      EXPECT_LE(st.quadratic_spread, 1e-7) << f.m.name() << " z0 = " << z0;
      EXPECT_LE(st.mixed_spread, 1e-7) << f.m.name() << " z0 = " << z0;
    }
  }
}

TEST(Conservation, DerivativeLawMatchesSlope) {
  // K I a2 + J a3 - K a1 equals d/da1 of (K a2^2 + a3^2)/2 along the level sets.
  struct Fixture {
    SphericalMetric m;
    double K;
  };
  for (const Fixture& f : {Fixture{funk_metric().scaled(0.5), -1.0}, Fixture{klein_sphere_metric(), 1.0}}) {
    auto half_u2 = [&](double a, double z0) {
      const InvariantSample s = sample_invariants(f.m, level_set_point(f.m, a, z0, 0.6));
      return 0.5 * (f.K * s.a2 * s.a2 + s.a3 * s.a3);
    };
    for (int i = 0; i < 8; ++i) {
      const double z0 = 0.08 + 0.08 * i;
      const InvariantSample s = sample_invariants(f.m, representative_point(f.m, z0, 0.35, 0.4));
      const double law = f.K * s.I * s.a2 + s.J * s.a3 - f.K * s.a1;
      const double h = 1e-3;
      const double slope = (half_u2(s.a1 + h, z0) - half_u2(s.a1 - h, z0)) / (2 * h);
      EXPECT_NEAR(law, slope, 2e-4) << f.m.name() << " z0 = " << z0;
    }
  }
}
