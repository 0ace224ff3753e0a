#include "finsler/interp.hpp"

#include <cmath>

// Boost 1.74 pchip.hpp calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <string>

#include "finsler/errors.hpp"

namespace finsler {

struct MonotoneCubic::Impl {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw InterpolationError("grid and values differ in length");
  if (x.size() < 4) throw InterpolationError("monotone cubic needs at least 4 points");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InterpolationError("non-finite grid data");
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw InterpolationError("grid is not strictly increasing at index " + std::to_string(i));
    }
  }
  front_ = x.front();
  back_ = x.back();
  impl_ = std::make_shared<const Impl>(Impl{{std::move(x), std::move(y)}});
}

void MonotoneCubic::check(double x) const {
  if (!(x >= front_ && x <= back_)) {
    throw InterpolationError(std::to_string(x) + " outside the interpolation range [" + std::to_string(front_) +
                             ", " + std::to_string(back_) + "]");
  }
}

double MonotoneCubic::operator()(double x) const {
  check(x);
  return impl_->spline(x);
}

double MonotoneCubic::prime(double x) const {
  check(x);
  return impl_->spline.prime(x);
}

double MonotoneCubic::second(double x) const {
  check(x);
  const double h = 1e-5 * std::max(1.0, back_ - front_);
  const double lo = std::max(front_, x - h), hi = std::min(back_, x + h);
  return (impl_->spline.prime(hi) - impl_->spline.prime(lo)) / (hi - lo);
}

}  // namespace finsler
