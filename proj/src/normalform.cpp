#include "finsler/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "finsler/csv.hpp"
#include "finsler/interp.hpp"

namespace finsler {

double curvature_value(CurvatureCase c) {
  switch (c) {
    case CurvatureCase::PositiveOne: return 1.0;
    case CurvatureCase::Zero: return 0.0;
    case CurvatureCase::NegativeOne: return -1.0;
  }
  return 0.0;
}

std::string_view case_name(CurvatureCase c) {
  switch (c) {
    case CurvatureCase::PositiveOne: return "k1";
    case CurvatureCase::Zero: return "k0";
    case CurvatureCase::NegativeOne: return "k-1";
  }
  return "";
}

CurvatureCase parse_case(std::string_view name) {
  if (name == "k1") return CurvatureCase::PositiveOne;
  if (name == "k0") return CurvatureCase::Zero;
  if (name == "k-1") return CurvatureCase::NegativeOne;
  throw DomainError("unknown case '" + std::string(name) + "' (expected k1, k0 or k-1)");
}

CurvatureCase case_for(double K) {
  if (K == 1.0) return CurvatureCase::PositiveOne;
  if (K == 0.0) return CurvatureCase::Zero;
  if (K == -1.0) return CurvatureCase::NegativeOne;
  throw DomainError("curvature " + std::to_string(K) + " has no normal form");
}

ProfileFunctions ProfileFunctions::constant(double u, double v) {
  return {[u](double) { return ProfileValue{u, 0.0, 0.0}; }, [v](double) { return ProfileValue{v, 0.0, 0.0}; }};
}

ProfileFunctions ProfileFunctions::interpolate(const ProfilePair& profiles) {
  if (profiles.size() < 40) throw InterpolationError("profile interpolation needs a grid of at least 40 points");
  const MonotoneCubic u(profiles.a, profiles.u);
  const MonotoneCubic v(profiles.a, profiles.v);
  return {[u](double a) { return ProfileValue{u(a), u.prime(a), u.second(a)}; },
          [v](double a) { return ProfileValue{v(a), v.prime(a), v.second(a)}; }};
}

namespace {

double positive_u(const ProfileFunctions& prof, double a, ProfileValue* out = nullptr) {
  const ProfileValue u = prof.u(a);
  if (!(u.value > 0.0)) throw NonPositiveU("u(" + std::to_string(a) + ") = " + std::to_string(u.value));
  if (out) *out = u;
  return u.value;
}

}  // namespace

CoframeValue coframe(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p) {
  const double u = positive_u(prof, p.a);
  const double v = prof.v(p.a).value;
  const double t = p.t;
  CoframeValue w{kNormalBasis, Mat3::Zero()};
  w.m.row(0) << 1.0, v, p.a;
  switch (c) {
    case CurvatureCase::PositiveOne:
      w.m.row(1) << 0.0, -std::cos(t) / u, u * std::sin(t);
      w.m.row(2) << 0.0, std::sin(t) / u, u * std::cos(t);
      break;
    case CurvatureCase::Zero:
      w.m.row(1) << 0.0, -1.0 / u, t * u;
      w.m.row(2) << 0.0, 0.0, u;
      break;
    case CurvatureCase::NegativeOne:
      w.m.row(1) << 0.0, -std::cosh(t) / u, u * std::sinh(t);
      w.m.row(2) << 0.0, -std::sinh(t) / u, u * std::cosh(t);
      break;
  }
  return w;
}

NormalScalars scalars(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p) {
  ProfileValue uu;
  const double u = positive_u(prof, p.a, &uu);
  const double du = uu.d1;
  const double v = prof.v(p.a).value;
  const double t = p.t, a = p.a;
  switch (c) {
    case CurvatureCase::PositiveOne:
      return {(du + a / u) * std::sin(t) - u * v * std::cos(t), (du + a / u) * std::cos(t) + u * v * std::sin(t)};
    case CurvatureCase::Zero:
      return {du * t - u * v, du};
    case CurvatureCase::NegativeOne:
      return {(du - a / u) * std::sinh(t) - u * v * std::cosh(t), (du - a / u) * std::cosh(t) - u * v * std::sinh(t)};
  }
  return {};
}

double FrameResiduals::max() const { return std::max({R1, R2, R3}); }

FrameResiduals verify_structure(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p,
                                FdStep step) {
  const CoframeValue w = coframe(c, prof, p);
  const NormalScalars s = scalars(c, prof, p);
  const double K = curvature_value(c);
  auto field = [&](const Vec3& q) { return coframe(c, prof, NormalChartPoint::from(q)).m; };
  const auto dw = exterior_derivative_rows(field, p.chart(), step);

  const TwoForm w23 = wedge(w.row(1), w.row(2));
  const TwoForm w31 = wedge(w.row(2), w.row(0));
  const TwoForm w12 = wedge(w.row(0), w.row(1));
  const TwoForm rhs1 = -1.0 * w23;
  const TwoForm rhs2 = -1.0 * w31 - s.I * w23;
  const TwoForm rhs3 = -K * w12 - s.J * w23;
  return {(TwoForm{kNormalBasis, dw[0]} - rhs1).norm_inf(), (TwoForm{kNormalBasis, dw[1]} - rhs2).norm_inf(),
          (TwoForm{kNormalBasis, dw[2]} - rhs3).norm_inf()};
}

KillingReconstruction reconstruct_a(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p) {
  const double u = positive_u(prof, p.a);
  switch (c) {
    case CurvatureCase::PositiveOne: return {u * std::sin(p.t), u * std::cos(p.t)};
    case CurvatureCase::Zero: return {u * p.t, u};
    case CurvatureCase::NegativeOne: return {u * std::sinh(p.t), u * std::cosh(p.t)};
  }
  return {};
}

double ConservationResiduals::max() const { return std::max({std::abs(quadratic), std::abs(derivative), std::abs(mixed)}); }

ConservationResiduals conservation_check(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p) {
  ProfileValue uu;
  const double u = positive_u(prof, p.a, &uu);
  const double v = prof.v(p.a).value;
  const double K = curvature_value(c);
  const KillingReconstruction k = reconstruct_a(c, prof, p);
  const NormalScalars s = scalars(c, prof, p);
  ConservationResiduals out;
  // K = 0 carries no quadratic law beyond a3 = u.
  out.quadratic = (c == CurvatureCase::Zero ? k.a3 * k.a3 : K * k.a2 * k.a2 + k.a3 * k.a3) - u * u;
  out.derivative = K * s.I * k.a2 + s.J * k.a3 - (u * uu.d1 + K * p.a);
  out.mixed = k.a2 * s.J - k.a3 * s.I - u * u * v;
  return out;
}

GeometricFields geometric_fields(CurvatureCase c, const ProfileFunctions& prof, const NormalChartPoint& p) {
  const CoframeValue w = coframe(c, prof, p);
  if (std::abs(w.det()) < 1e-14) throw SingularCoframe("normal-form coframe is singular");
  const KillingReconstruction k = reconstruct_a(c, prof, p);
  GeometricFields g;
  g.xhat = Vec3::UnitZ();
  g.reeb = w.m.partialPivLu().solve(Vec3::UnitX());
  g.omega_xhat = w.m * g.xhat;
  g.omega_reeb = w.m * g.reeb;
  g.residual = std::max((g.omega_xhat - Vec3(p.a, k.a2, k.a3)).cwiseAbs().maxCoeff(),
                        (g.omega_reeb - Vec3::UnitX()).cwiseAbs().maxCoeff());
  return g;
}

std::vector<NormalChartPoint> sample_normal_chart(CurvatureCase c, int count, std::uint64_t seed, double a_min,
                                                  double a_max) {
  if (!(a_min <= a_max)) throw DomainError("empty a range");
  std::mt19937_64 rng(seed);
  const double tspan = c == CurvatureCase::PositiveOne ? std::numbers::pi : 2.0;
  std::uniform_real_distribution<double> T(-tspan, tspan), A(a_min, a_max), B(-1.0, 1.0);
  std::vector<NormalChartPoint> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double t = T(rng), a = A(rng), b = B(rng);
    out.push_back({t, a, b});
  }
  return out;
}

RoundtripReport roundtrip(CurvatureCase c, const ProfilePair& profiles, int points, std::uint64_t seed,
                          const std::optional<ProfileReference>& reference, FdStep step) {
  const ProfileFunctions prof = ProfileFunctions::interpolate(profiles);
  RoundtripReport rep;
  rep.curvature_case = c;
  // Keep the finite-difference stencil inside the interpolation range.
  const double margin = 4.0 * step.h;
  const double a0 = profiles.a.front() + margin, a1 = profiles.a.back() - margin;
  for (const NormalChartPoint& p : sample_normal_chart(c, points, seed, a0, a1)) {
    rep.max_structure = std::max(rep.max_structure, verify_structure(c, prof, p, step).max());
    rep.max_conservation = std::max(rep.max_conservation, conservation_check(c, prof, p).max());
    rep.max_geometric = std::max(rep.max_geometric, geometric_fields(c, prof, p).residual);
    ++rep.points;
  }
  if (reference) {
    double du = 0.0, dv = 0.0;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      du = std::max(du, std::abs(profiles.u[i] - reference->u(profiles.a[i])));
      dv = std::max(dv, std::abs(profiles.v[i] - reference->v(profiles.a[i])));
    }
    rep.reference_u = du;
    rep.reference_v = dv;
  }
  return rep;
}

void write_normal_form_csv(std::ostream& os, CurvatureCase c, const ProfileFunctions& prof,
                           const std::vector<NormalChartPoint>& points) {
  csv::write_header(os, {"t", "a", "b", "w11", "w12", "w13", "w21", "w22", "w23", "w31", "w32", "w33", "I", "J"});
  for (const NormalChartPoint& p : points) {
    const CoframeValue w = coframe(c, prof, p);
    const NormalScalars s = scalars(c, prof, p);
    std::vector<double> row{p.t, p.a, p.b};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) row.push_back(w.m(i, j));
    }
    row.push_back(s.I);
    row.push_back(s.J);
    csv::write_row(os, row);
  }
}

}  // namespace finsler
