#include "finsler/jet.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace finsler {
namespace {

constexpr std::array<double, 5> kFactorial = {1.0, 1.0, 2.0, 6.0, 24.0};

void require_nonsingular(const Jet2& x, const char* op) {
  if (!std::isfinite(x.value()) || std::abs(x.value()) < kJetSingularity) {
    throw DomainError(std::string(op) + " of a jet with leading value " + std::to_string(x.value()));
  }
}

void require_positive(const Jet2& x, const char* op) {
  if (!(x.value() >= kJetSingularity)) {
    throw DomainError(std::string(op) + " of a jet with leading value " + std::to_string(x.value()));
  }
}

// Derivatives of x^p at x0 > 0 (or any x0 != 0 when p is an integer).
std::array<double, 5> power_derivatives(double x0, double p) {
  std::array<double, 5> d{};
  double falling = 1.0;
  for (int k = 0; k <= 4; ++k) {
    d[k] = falling * std::pow(x0, p - k);
    falling *= (p - k);
  }
  return d;
}

bool is_small_integer(double p) { return std::isfinite(p) && p == std::round(p) && std::abs(p) <= 64.0; }

}  // namespace

Jet2 Jet2::variable_t(double t0) {
  Jet2 j(t0);
  j.c_[index(1, 0)] = 1.0;
  return j;
}

Jet2 Jet2::variable_s(double s0) {
  Jet2 j(s0);
  j.c_[index(0, 1)] = 1.0;
  return j;
}

Jet2 Jet2::from_partials(const std::array<double, kSize>& partials, int order) {
  Jet2 j;
  j.order_ = std::clamp(order, 0, kMaxOrder);
  for (int n = 0; n <= j.order_; ++n) {
    for (int jj = 0; jj <= n; ++jj) {
      const int ii = n - jj;
      j.c_[index(ii, jj)] = partials[index(ii, jj)] / (kFactorial[ii] * kFactorial[jj]);
    }
  }
  return j;
}

double Jet2::partial(int i, int j) const { return c_[index(i, j)] * kFactorial[i] * kFactorial[j]; }

void Jet2::truncate() {
  for (int n = order_ + 1; n <= kMaxOrder; ++n) {
    for (int j = 0; j <= n; ++j) c_[index(n - j, j)] = 0.0;
  }
}

Jet2 Jet2::d_t() const {
  Jet2 out;
  out.order_ = std::max(order_ - 1, 0);
  for (int n = 0; n < order_; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      out.c_[index(i, j)] = (i + 1) * c_[index(i + 1, j)];
    }
  }
  if (order_ == 0) out.c_[0] = 0.0;
  return out;
}

Jet2 Jet2::d_s() const {
  Jet2 out;
  out.order_ = std::max(order_ - 1, 0);
  for (int n = 0; n < order_; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      out.c_[index(i, j)] = (j + 1) * c_[index(i, j + 1)];
    }
  }
  if (order_ == 0) out.c_[0] = 0.0;
  return out;
}

bool Jet2::is_constant() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](double v) { return v == 0.0; });
}

bool Jet2::all_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

Jet2 Jet2::operator-() const {
  Jet2 out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  for (std::size_t k = 0; k < kSize; ++k) c_[k] += o.c_[k];
  order_ = std::min(order_, o.order_);
  truncate();
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  for (std::size_t k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
  order_ = std::min(order_, o.order_);
  truncate();
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) {
  const int order = std::min(order_, o.order_);
  std::array<double, kSize> r{};
  for (int n = 0; n <= order; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      double acc = 0.0;
      for (int i1 = 0; i1 <= i; ++i1) {
        for (int j1 = 0; j1 <= j; ++j1) acc += c_[index(i1, j1)] * o.c_[index(i - i1, j - j1)];
      }
      r[index(i, j)] = acc;
    }
  }
  c_ = r;
  order_ = order;
  return *this;
}

Jet2& Jet2::operator/=(const Jet2& o) { return *this *= reciprocal(o); }

Jet2& Jet2::operator*=(double v) {
  for (double& x : c_) x *= v;
  return *this;
}

Jet2& Jet2::operator/=(double v) {
  if (v == 0.0) throw DomainError("jet divided by zero");
  for (double& x : c_) x /= v;
  return *this;
}

Jet2 operator/(double a, const Jet2& b) { return reciprocal(b) * a; }

Jet2 Jet2::compose(const std::array<double, kMaxOrder + 1>& derivs) const {
  Jet2 h = *this;
  h.c_[0] = 0.0;
  Jet2 out(derivs[0]);
  out.order_ = order_;
  Jet2 hp(1.0);
  for (int k = 1; k <= order_; ++k) {
    hp *= h;
    Jet2 term = hp;
    term *= derivs[k] / kFactorial[k];
    out += term;
  }
  return out;
}

std::string Jet2::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "Jet2{order=" << order_;
  for (int n = 0; n <= kMaxOrder; ++n) {
    for (int j = 0; j <= n; ++j) os << ", d" << (n - j) << j << "=" << partial(n - j, j);
  }
  os << "}";
  return os.str();
}

Jet2 reciprocal(const Jet2& x) {
  require_nonsingular(x, "reciprocal");
  return x.compose(power_derivatives(x.value(), -1.0));
}

Jet2 sqrt(const Jet2& x) {
  require_positive(x, "sqrt");
  return x.compose(power_derivatives(x.value(), 0.5));
}

Jet2 exp(const Jet2& x) {
  const double e = std::exp(x.value());
  return x.compose({e, e, e, e, e});
}

Jet2 log(const Jet2& x) {
  require_positive(x, "log");
  const double v = x.value();
  return x.compose({std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), -6.0 / (v * v * v * v)});
}

Jet2 sin(const Jet2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.compose({s, c, -s, -c, s});
}

Jet2 cos(const Jet2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.compose({c, -s, -c, s, c});
}

Jet2 sinh(const Jet2& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return x.compose({s, c, s, c, s});
}

Jet2 cosh(const Jet2& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return x.compose({c, s, c, s, c});
}

Jet2 pow(const Jet2& x, int n) {
  if (n < 0) return reciprocal(pow(x, -n));
  Jet2 result = 0.0 * x + 1.0;
  Jet2 base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Jet2 pow(const Jet2& x, double p) {
  if (is_small_integer(p)) return pow(x, static_cast<int>(p));
  require_positive(x, "pow");
  return x.compose(power_derivatives(x.value(), p));
}

Jet2 pow(const Jet2& x, const Jet2& p) {
  if (p.is_constant()) {
    Jet2 out = pow(x, p.value());
    if (p.order() < out.order()) out += 0.0 * p;
    return out;
  }
  return exp(p * log(x));
}

namespace detail {
namespace {

struct Stencil {
  std::array<int, 5> offsets;
  std::array<double, 5> weights;
  int size;
};

// Second-order central stencils for the k-th derivative, in units of h^-k.
constexpr std::array<Stencil, 5> kStencils = {{
    {{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, 1},
    {{-1, 1, 0, 0, 0}, {-0.5, 0.5, 0, 0, 0}, 2},
    {{-1, 0, 1, 0, 0}, {1, -2, 1, 0, 0}, 3},
    {{-2, -1, 1, 2, 0}, {-0.5, 1, -1, 0.5, 0}, 4},
    {{-2, -1, 0, 1, 2}, {1, -4, 6, -4, 1}, 5},
}};

constexpr std::array<double, 5> kOrderStepScale = {1.0, 1.0, 4.0, 8.0, 16.0};

double plain_partial(int i, int j, double t0, double s0, double h, double (*eval)(const void*, double, double),
                     const void* ctx) {
  const Stencil& st = kStencils[i];
  const Stencil& ss = kStencils[j];
  double acc = 0.0;
  for (int a = 0; a < st.size; ++a) {
    for (int b = 0; b < ss.size; ++b) {
      acc += st.weights[a] * ss.weights[b] * eval(ctx, t0 + st.offsets[a] * h, s0 + ss.offsets[b] * h);
    }
  }
  return acc / std::pow(h, i + j);
}

}  // namespace

double central_stencil_partial(int i, int j, double t0, double s0, double h,
                               double (*eval)(const void*, double, double), const void* ctx) {
  const double coarse = plain_partial(i, j, t0, s0, h, eval, ctx);
  if (i + j == 0) return coarse;
  const double fine = plain_partial(i, j, t0, s0, 0.5 * h, eval, ctx);
  return (4.0 * fine - coarse) / 3.0;
}

Jet2 finite_difference_jet(double t0, double s0, double h, double (*eval)(const void*, double, double),
                           const void* ctx) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  std::array<double, Jet2::kSize> partials{};
  for (int n = 0; n <= Jet2::kMaxOrder; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      partials[Jet2::index(i, j)] = central_stencil_partial(i, j, t0, s0, h * kOrderStepScale[n], eval, ctx);
    }
  }
  return Jet2::from_partials(partials);
}

}  // namespace detail
}  // namespace finsler
