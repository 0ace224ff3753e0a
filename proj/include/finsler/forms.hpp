#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <string_view>

#include "finsler/errors.hpp"

namespace finsler {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Ordered names of the three coordinates of a 3-dimensional chart.
struct ChartBasis {
  std::array<std::string_view, 3> names;

  friend bool operator==(const ChartBasis&, const ChartBasis&) = default;
  std::string to_string() const;
};

/// (x1, x2, psi) on the unit tangent bundle.
inline constexpr ChartBasis kSigmaBasis{{"x1", "x2", "psi"}};
/// (t, a, b) of the normal forms.
inline constexpr ChartBasis kNormalBasis{{"t", "a", "b"}};

/// A 1-form at a point: coefficients of de1, de2, de3.
struct OneForm {
  ChartBasis basis;
  Vec3 c = Vec3::Zero();
};

/// A 2-form at a point: coefficients of e2^e3, e3^e1, e1^e2.
struct TwoForm {
  ChartBasis basis;
  Vec3 c = Vec3::Zero();

  double norm_inf() const { return c.cwiseAbs().maxCoeff(); }
};

TwoForm wedge(const OneForm& a, const OneForm& b);

TwoForm operator+(const TwoForm& a, const TwoForm& b);
TwoForm operator-(const TwoForm& a, const TwoForm& b);
TwoForm operator*(double k, const TwoForm& a);
OneForm operator+(const OneForm& a, const OneForm& b);
OneForm operator-(const OneForm& a, const OneForm& b);
OneForm operator*(double k, const OneForm& a);

/// Three 1-forms at a point; row i holds omega_{i+1} over the chart basis.
struct CoframeValue {
  ChartBasis basis;
  Mat3 m = Mat3::Zero();

  OneForm row(int i) const { return {basis, m.row(i).transpose()}; }
  double det() const { return m.determinant(); }
};

/// Components (c23, c31, c12) of a 2-form in the basis
/// {omega2^omega3, omega3^omega1, omega1^omega2} of a coframe.
Vec3 coframe_components(const TwoForm& form, const CoframeValue& coframe);

/// Components (f1, f2, f3) of a 1-form in the coframe: form = sum f_i omega_i.
Vec3 coframe_components(const OneForm& form, const CoframeValue& coframe);

/// Central-difference settings for numeric exterior calculus.
struct FdStep {
  double h = 1e-4;
  /// One level of Richardson extrapolation (h and h/2), error O(h^4).
  bool richardson = true;
};

/// Derivative of a (vector- or matrix-valued) field along one chart axis.
template <class F>
auto directional_derivative(const F& field, const Vec3& p, int axis, FdStep step) {
  auto central = [&](double h) {
    const Vec3 e = Vec3::Unit(axis) * h;
    return ((field(p + e) - field(p - e)) / (2.0 * h)).eval();
  };
  auto coarse = central(step.h);
  if (!step.richardson) return coarse;
  auto fine = central(0.5 * step.h);
  return ((4.0 * fine - coarse) / 3.0).eval();
}

/// Gradient of a scalar field on a chart.
template <class F>
Vec3 gradient(const F& field, const Vec3& p, FdStep step) {
  auto wrapped = [&](const Vec3& q) { return Eigen::Matrix<double, 1, 1>(field(q)); };
  Vec3 g;
  for (int k = 0; k < 3; ++k) g(k) = directional_derivative(wrapped, p, k, step)(0);
  if (!g.allFinite()) throw NonFiniteError("non-finite gradient");
  return g;
}

/// Curl of the coefficient rows of a matrix-valued field: row i of `field(q)` is a
/// 1-form, and entry i of the result is d of that row.
template <class F>
std::array<Vec3, 3> exterior_derivative_rows(const F& field, const Vec3& p, FdStep step) {
  std::array<Mat3, 3> dm;
  for (int k = 0; k < 3; ++k) dm[k] = directional_derivative(field, p, k, step);
  std::array<Vec3, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = Vec3(dm[1](i, 2) - dm[2](i, 1), dm[2](i, 0) - dm[0](i, 2), dm[0](i, 1) - dm[1](i, 0));
    if (!out[i].allFinite()) throw NonFiniteError("non-finite exterior derivative");
  }
  return out;
}

/// Numeric d of a 1-form field (chart point -> OneForm) at p.
template <class F>
TwoForm exterior_derivative(const F& field, const Vec3& p, FdStep step = {}) {
  const ChartBasis basis = field(p).basis;
  auto rows = [&](const Vec3& q) {
    const OneForm w = field(q);
    if (!(w.basis == basis)) throw BasisMismatch("field changes basis between chart points");
    Mat3 m = Mat3::Zero();
    m.row(0) = w.c.transpose();
    return m;
  };
  return {basis, exterior_derivative_rows(rows, p, step)[0]};
}

}  // namespace finsler
