#pragma once

#include <memory>
#include <vector>

namespace finsler {

/// Shape-preserving piecewise cubic Hermite interpolant (PCHIP) on a strictly
/// increasing grid. Evaluation outside [front, back] throws InterpolationError.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double prime(double x) const;
  /// Central difference of prime(); the interpolant is only C1 at the knots.
  double second(double x) const;

  double front() const { return front_; }
  double back() const { return back_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double front_ = 0, back_ = 0;

  void check(double x) const;
};

}  // namespace finsler
