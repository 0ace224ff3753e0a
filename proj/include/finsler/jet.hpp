#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>

#include "finsler/errors.hpp"

namespace finsler {

/// Truncated Taylor expansion of a scalar function of (t, s) to total degree 4.
///
/// Storage is in Taylor normalization, `coeff(i, j) = f_{t^i s^j} / (i! j!)`;
/// `partial(i, j)` returns the derivative itself. `order()` is the highest total
/// degree that is still exact. It starts at 4 and drops by one under each of
/// `d_t()` / `d_s()`; binary operations keep the smaller order of the operands.
/// Coefficients above `order()` are kept at zero.
class Jet2 {
 public:
  static constexpr int kMaxOrder = 4;
  static constexpr std::size_t kSize = 15;

  Jet2() = default;
  explicit Jet2(double value) { c_[0] = value; }

  static Jet2 constant(double value) { return Jet2(value); }
  /// The coordinate function t expanded at t0.
  static Jet2 variable_t(double t0);
  /// The coordinate function s expanded at s0.
  static Jet2 variable_s(double s0);
  /// Builds a jet from derivative values `partials[index(i, j)] = f_{t^i s^j}`.
  static Jet2 from_partials(const std::array<double, kSize>& partials, int order = kMaxOrder);

  static constexpr std::size_t index(int i, int j) {
    const int n = i + j;
    return static_cast<std::size_t>(n * (n + 1) / 2 + j);
  }

  double value() const { return c_[0]; }
  double coeff(int i, int j) const { return c_[index(i, j)]; }
  double partial(int i, int j) const;
  int order() const { return order_; }
  const std::array<double, kSize>& coeffs() const { return c_; }

  /// Partial derivative in t (resp. s) as a jet of one lower order.
  Jet2 d_t() const;
  Jet2 d_s() const;

  bool is_constant() const;
  bool all_finite() const;

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator/=(const Jet2& o);
  Jet2& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet2& operator-=(double v) {
    c_[0] -= v;
    return *this;
  }
  Jet2& operator*=(double v);
  Jet2& operator/=(double v);

  /// f(jet) for a univariate f, given f and its first four derivatives at value().
  Jet2 compose(const std::array<double, kMaxOrder + 1>& derivs) const;

  std::string to_string() const;

 private:
  void truncate();

  std::array<double, kSize> c_{};
  int order_ = kMaxOrder;
};

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
inline Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
inline Jet2 operator+(Jet2 a, double b) { return a += b; }
inline Jet2 operator-(Jet2 a, double b) { return a -= b; }
inline Jet2 operator*(Jet2 a, double b) { return a *= b; }
inline Jet2 operator/(Jet2 a, double b) { return a /= b; }
inline Jet2 operator+(double a, Jet2 b) { return b += a; }
inline Jet2 operator-(double a, const Jet2& b) { return -b + a; }
inline Jet2 operator*(double a, Jet2 b) { return b *= a; }
Jet2 operator/(double a, const Jet2& b);

// Leading values with |value| below this are rejected by division, sqrt, log
// and non-integer powers.
inline constexpr double kJetSingularity = 1e-12;

Jet2 reciprocal(const Jet2& x);
Jet2 sqrt(const Jet2& x);
Jet2 exp(const Jet2& x);
Jet2 log(const Jet2& x);
Jet2 sin(const Jet2& x);
Jet2 cos(const Jet2& x);
Jet2 sinh(const Jet2& x);
Jet2 cosh(const Jet2& x);
Jet2 pow(const Jet2& x, int n);
Jet2 pow(const Jet2& x, double p);
/// Integer-valued constant exponents use repeated products (negative bases allowed).
Jet2 pow(const Jet2& x, const Jet2& p);

enum class DiffMode { analytic, finite_difference };

struct JetOptions {
  DiffMode mode = DiffMode::analytic;
  /// Base step of the finite-difference mode.
  double h = 1e-3;
};

namespace detail {

double central_stencil_partial(int i, int j, double t0, double s0, double h,
                               double (*eval)(const void*, double, double), const void* ctx);

Jet2 finite_difference_jet(double t0, double s0, double h,
                           double (*eval)(const void*, double, double), const void* ctx);

}  // namespace detail

/// Jet of `f` at (t0, s0).
///
/// `f` must be callable as `f(Jet2, Jet2)` (analytic mode) and `f(double, double)`
/// (finite-difference mode). The finite-difference mode uses tensor products of
/// central stencils with one Richardson level; a partial of total order n uses the
/// step `h * {1, 1, 4, 8, 16}[n]` so higher orders stay clear of rounding noise.
template <class F>
Jet2 jet_of(const F& f, double t0, double s0, JetOptions opts = {}) {
  Jet2 out;
  if (opts.mode == DiffMode::analytic) {
    if constexpr (std::is_invocable_r_v<Jet2, const F&, Jet2, Jet2>) {
      out = f(Jet2::variable_t(t0), Jet2::variable_s(s0));
    } else {
      throw DomainError("function cannot be evaluated on jets");
    }
  } else {
    if constexpr (std::is_invocable_r_v<double, const F&, double, double>) {
      auto eval = [](const void* ctx, double t, double s) -> double {
        return (*static_cast<const F*>(ctx))(t, s);
      };
      out = detail::finite_difference_jet(t0, s0, opts.h, eval, &f);
    } else {
      throw DomainError("function cannot be evaluated on reals");
    }
  }
  if (!out.all_finite()) throw NonFiniteError("non-finite jet coefficient at (" + std::to_string(t0) +
                                              ", " + std::to_string(s0) + ")");
  return out;
}

}  // namespace finsler
