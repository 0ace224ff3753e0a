#include "finsler/forms.hpp"

#include <cmath>

namespace finsler {
namespace {

void require_same(const ChartBasis& a, const ChartBasis& b) {
  if (!(a == b)) throw BasisMismatch("basis " + a.to_string() + " vs " + b.to_string());
}

}  // namespace

std::string ChartBasis::to_string() const {
  return "(" + std::string(names[0]) + "," + std::string(names[1]) + "," + std::string(names[2]) + ")";
}

TwoForm wedge(const OneForm& a, const OneForm& b) {
  require_same(a.basis, b.basis);
  return {a.basis, a.c.cross(b.c)};
}

TwoForm operator+(const TwoForm& a, const TwoForm& b) {
  require_same(a.basis, b.basis);
  return {a.basis, a.c + b.c};
}

TwoForm operator-(const TwoForm& a, const TwoForm& b) {
  require_same(a.basis, b.basis);
  return {a.basis, a.c - b.c};
}

TwoForm operator*(double k, const TwoForm& a) { return {a.basis, k * a.c}; }

OneForm operator+(const OneForm& a, const OneForm& b) {
  require_same(a.basis, b.basis);
  return {a.basis, a.c + b.c};
}

OneForm operator-(const OneForm& a, const OneForm& b) {
  require_same(a.basis, b.basis);
  return {a.basis, a.c - b.c};
}

OneForm operator*(double k, const OneForm& a) { return {a.basis, k * a.c}; }

// With C the matrix whose rows are the chart components of w2^w3, w3^w1, w1^w2,
// C = det(W) W^{-T}, so solving C^T x = c gives x = W c / det(W).
Vec3 coframe_components(const TwoForm& form, const CoframeValue& coframe) {
  require_same(form.basis, coframe.basis);
  const double det = coframe.det();
  if (!std::isfinite(det) || std::abs(det) < 1e-14) throw SingularCoframe("coframe determinant " + std::to_string(det));
  return coframe.m * form.c / det;
}

Vec3 coframe_components(const OneForm& form, const CoframeValue& coframe) {
  require_same(form.basis, coframe.basis);
  const double det = coframe.det();
  if (!std::isfinite(det) || std::abs(det) < 1e-14) throw SingularCoframe("coframe determinant " + std::to_string(det));
  return coframe.m.transpose().partialPivLu().solve(form.c);
}

}  // namespace finsler
