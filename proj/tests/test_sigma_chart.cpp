#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"

using namespace finsler;
using finsler::testing::wobbly_metric;

TEST(IndicatrixLift, UnitLength) {
  const SigmaPoint e = indicatrix_lift(euclid_metric(), Vec2(0.3, -0.2), 1.3);
  EXPECT_NEAR(e.tangent.y.norm(), 1.0, 1e-15);
  const SigmaPoint f = indicatrix_lift(funk_metric(), Vec2(0, 0), 2.1);
  EXPECT_NEAR(f.tangent.y.norm(), 1.0, 1e-15);
}

TEST(IndicatrixLift, FunkOffCentre) {
  const SigmaPoint p = indicatrix_lift(funk_metric(), Vec2(0.5, 0), 0.0);
  const double t = 0.125, s = 0.5;
  EXPECT_NEAR(p.tangent.y.norm(), (1 - 2 * t) / (std::sqrt(s * s + 1 - 2 * t) + s), 1e-15);
  EXPECT_NEAR(finsler_norm(funk_metric(), p.tangent), 1.0, 1e-12);
}

TEST(IndicatrixLift, OutsideDomain) {
  EXPECT_THROW(indicatrix_lift(funk_metric(), Vec2(1.2, 0), 0.0), DomainError);
}

TEST(BerwaldCoframe, EuclideanOrigin) {
  const double psi = 0.8;
  const CoframeValue w = berwald_coframe(euclid_metric(), indicatrix_lift(euclid_metric(), Vec2(0, 0), psi));
  Mat3 expect;
  expect << std::cos(psi), std::sin(psi), 0, -std::sin(psi), std::cos(psi), 0, 0, 0, 1;
  EXPECT_LE((w.m - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(w.det(), 1.0, 1e-15);
}

TEST(BerwaldCoframe, FunkOrigin) {
  const double psi = -0.4;
  const CoframeValue w = berwald_coframe(funk_metric(), indicatrix_lift(funk_metric(), Vec2(0, 0), psi));
  EXPECT_NEAR(w.m(0, 0), std::cos(psi), 1e-15);
  EXPECT_NEAR(w.m(0, 1), std::sin(psi), 1e-15);
  EXPECT_NEAR(w.m(1, 0), -std::sin(psi), 1e-15);
  EXPECT_NEAR(w.m(1, 1), std::cos(psi), 1e-15);
}

TEST(BerwaldCoframe, HilbertRowAndDeterminant) {
  for (const SphericalMetric& m : {funk_metric(), klein_sphere_metric(), wobbly_metric()}) {
    for (const SigmaPoint& p : sample_sigma(m, 50, 21, 0.8)) {
      const CoframeValue w = berwald_coframe(m, p);
      const Vec2 h = hilbert_coefficients(m, p.tangent);
      EXPECT_EQ(w.m(0, 0), h(0));
      EXPECT_EQ(w.m(0, 1), h(1));
      EXPECT_GE(std::abs(w.det()), 1e-6);
    }
  }
}

TEST(BerwaldCoframe, KillingContractionMatchesClosedForms) {
  for (const SphericalMetric& m : {funk_metric(), funk_metric().scaled(0.5), klein_sphere_metric(), wobbly_metric()}) {
    for (const SigmaPoint& p : sample_sigma(m, 50, 22, 0.8)) {
      const Vec3 direct = berwald_coframe(m, p).m * killing_lift(p);
      const KillingComponents a = a_components(m, p.tangent);
      EXPECT_LE((direct - Vec3(a.a1, a.a2, a.a3)).cwiseAbs().maxCoeff(), 1e-8) << m.name();
    }
  }
}

TEST(SampleSigma, RespectsConstraints) {
  const SphericalMetric m = funk_metric();
  const auto pts = sample_sigma(m, 200, 1, 0.8);
  ASSERT_EQ(pts.size(), 200u);
  for (const SigmaPoint& p : pts) {
    EXPECT_LE(p.x().norm(), 0.8);
    EXPECT_GE(std::abs(vars_from_xy(p.tangent).area), 0.05);
    EXPECT_NEAR(finsler_norm(m, p.tangent), 1.0, 1e-12);
  }
  const auto again = sample_sigma(m, 200, 1, 0.8);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(pts[i].chart, again[i].chart);
}

TEST(StructureEquations, Euclidean) {
  const SphericalMetric m = euclid_metric();
  for (const SigmaPoint& p : sample_sigma(m, 10, 23, 0.8)) {
    const StructureResiduals r = structure_residuals(m, p);
    EXPECT_LE(r.max(), 1e-8);
    EXPECT_LE(std::abs(r.K), 1e-8);
  }
}

TEST(StructureEquations, Fixtures) {
  for (const SphericalMetric& m : {funk_metric(), klein_sphere_metric()}) {
    for (const SigmaPoint& p : sample_sigma(m, 100, 24, 0.8)) {
      EXPECT_LE(structure_residuals(m, p).max(), 1e-5) << m.name();
    }
  }
}

TEST(StructureEquations, GenericMetric) {
  // Holds for every metric; the measured K varies from point to point here.
  const SphericalMetric m = wobbly_metric();
  double kmin = 1e300, kmax = -1e300;
  for (const SigmaPoint& p : sample_sigma(m, 50, 25, 0.9)) {
    const StructureResiduals r = structure_residuals(m, p);
    EXPECT_LE(r.max(), 1e-5);
    kmin = std::min(kmin, r.K);
    kmax = std::max(kmax, r.K);
  }
  EXPECT_GT(kmax - kmin, 1e-3);
}

TEST(FlagCurvature, ConstantCurvatureFixtures) {
  struct Fixture {
    SphericalMetric m;
    double K;
  };
  for (const Fixture& f : {Fixture{funk_metric(), -0.25}, Fixture{funk_metric().scaled(0.5), -1.0},
                           Fixture{klein_sphere_metric(), 1.0}, Fixture{euclid_metric(), 0.0}}) {
    double sum = 0, sum2 = 0;
    const auto pts = sample_sigma(f.m, 100, 26, 0.8);
    for (const SigmaPoint& p : pts) {
      const double K = flag_curvature(f.m, p);
      EXPECT_NEAR(K, f.K, 1e-5) << f.m.name();
      sum += K;
      sum2 += K * K;
    }
    const double mean = sum / pts.size();
    EXPECT_LE(std::sqrt(std::max(0.0, sum2 / pts.size() - mean * mean)), 1e-5);
  }
}

TEST(FrameDerivative, Constant) {
  const SphericalMetric m = funk_metric();
  const SigmaPoint p = sample_sigma(m, 1, 27, 0.5).front();
  EXPECT_LE(frame_derivative(m, [](const SigmaPoint&) { return 3.0; }, p).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FrameDerivative, BianchiIdentities) {
  for (const SphericalMetric& m : {funk_metric().scaled(0.5), wobbly_metric()}) {
    for (const SigmaPoint& p : sample_sigma(m, 50, 28, 0.8)) {
      const double J = landsberg(m, p.tangent);
      const double I = main_scalar(m, p.tangent);
      const double K = flag_curvature(m, p);
      const Vec3 dI = frame_derivative(m, [&m](const SigmaPoint& q) { return main_scalar(m, q.tangent); }, p);
      const Vec3 dJ = frame_derivative(m, [&m](const SigmaPoint& q) { return landsberg(m, q.tangent); }, p);
      EXPECT_NEAR(dI(0), J, 2e-4) << m.name();
      if (m.name() != "wobbly") EXPECT_NEAR(dJ(0), -K * I, 2e-4) << m.name();
    }
  }
}

TEST(FrameDerivative, HilbertDirectionIsTheReebField) {
  // Along the Reeb field x moves with velocity y, so omega_1(E) = F(y) = 1 gives
  // dt(E) = <x, y> = s r for t = |x|^2/2.
  const SphericalMetric m = funk_metric();
  for (const SigmaPoint& p : sample_sigma(m, 20, 29, 0.7)) {
    const Vec3 dt = frame_derivative(m, [](const SigmaPoint& q) { return 0.5 * q.x().squaredNorm(); }, p);
    EXPECT_NEAR(dt(0), p.x().dot(p.tangent.y), 1e-9);
  }
}

TEST(KillingIdentities, FunkScaled) {
  const SphericalMetric m = funk_metric().scaled(0.5);
  for (const SigmaPoint& p : sample_sigma(m, 50, 30, 0.8)) EXPECT_LE(killing_residuals(m, p).max(), 1e-4);
}

TEST(KillingIdentities, RiemannianAndFlat) {
  for (const SigmaPoint& p : sample_sigma(klein_sphere_metric(), 20, 31, 0.8)) {
    const KillingResiduals r = killing_residuals(klein_sphere_metric(), p);
    EXPECT_LE(r.LI, 1e-6);
    EXPECT_LE(r.LJ, 1e-6);
    EXPECT_LE(r.max(), 1e-6);
  }
  for (const SigmaPoint& p : sample_sigma(euclid_metric(), 10, 32, 0.8)) {
    EXPECT_LE(killing_residuals(euclid_metric(), p).max(), 1e-8);
  }
}

TEST(ProfileSign, IndependentOfTheMainScalar) {
  // In the K = -1 normal form a2 = u sinh t, and expanding dt in the coframe gives
  // dt = omega_1 + ((a/u) sinh t + u v cosh t) omega_2 + (...) omega_3.
  // This reads v off the Killing components alone, without I or J.
  const SphericalMetric m = funk_metric().scaled(0.5);
  for (const SigmaPoint& p : sample_sigma(m, 20, 33, 0.7)) {
    const KillingComponents k = a_components(m, p.tangent);
    const double u = std::sqrt(k.a3 * k.a3 - k.a2 * k.a2);
    const double th = std::asinh(k.a2 / u);
    auto tfield = [&m](const SigmaPoint& q) {
      const KillingComponents c = a_components(m, q.tangent);
      return std::asinh(c.a2 / std::sqrt(c.a3 * c.a3 - c.a2 * c.a2));
    };
    const Vec3 dt = frame_derivative(m, tfield, p);
    const double v = (dt(1) - k.a1 / u * std::sinh(th)) / (u * std::cosh(th));
    EXPECT_NEAR(dt(0), 1.0, 1e-7);
    EXPECT_NEAR(v, 3 * k.a1 / (1 + 4 * k.a1 * k.a1), 1e-6);
    EXPECT_NEAR(u, funk_u(k.a1), 1e-10);
  }
}

TEST(ResidualReport, CsvLayout) {
  const SphericalMetric m = funk_metric();
  const ResidualReport rep = residual_report(m, 3, 99, 0.6);
  std::ostringstream os;
  write_residual_csv(os, rep);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# seed=99");
  std::getline(in, line);
  EXPECT_EQ(line, "point_id,x1,x2,psi,R1,R2,R3,K");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
  EXPECT_LE(rep.max_residual(), 1e-5);
}
