#pragma once

#include <cmath>
#include <stdexcept>

#include "prolate/taylor.hpp"

namespace prolate::detail {

// Scaled Taylor coefficients of a solution of
//   (1-x^2) f'' - 2x f' + (chi - c^2 x^2) f = rhs0 + rhs1 * (t - x) + ...
// at x, where rhs0 and rhs1 are the right-hand side and its first derivative
// at x (zero for the homogeneous prolate equation). Coefficients of order >= 2
// follow from differentiating the equation k times.
inline TaylorJet prolate_jet(double c, double chi, double x, double f0, double f1,
                             int order, double scale, double rhs0, double rhs1) {
  if (!(std::abs(x) < 1.0)) throw std::domain_error("jet center must satisfy |x| < 1");
  if (order < 2) throw std::invalid_argument("jet order must be at least 2");
  TaylorJet jet;
  jet.center = x;
  jet.scale = scale;
  jet.coeffs.assign(static_cast<std::size_t>(order) + 1, 0.0);
  auto& a = jet.coeffs;

  const double s = scale;
  const double s2 = s * s;
  const double c2 = c * c;
  const double c2x2 = c2 * x * x;
  const double one_minus_x2 = (1.0 - x) * (1.0 + x);

  a[0] = f0;
  a[1] = f1 * s;
  for (int k = 0; k + 2 <= order; ++k) {
    const double kd = k;
    double num = 2.0 * x * (kd + 1.0) * (kd + 1.0) * s * a[k + 1] +
                 ((kd * (kd + 1.0) - chi) + c2x2) * s2 * a[k];
    if (k >= 1) num += 2.0 * c2 * x * s2 * s * a[k - 1];
    if (k >= 2) num += c2 * s2 * s2 * a[k - 2];
    if (k == 0) num += rhs0 * s2;
    if (k == 1) num += rhs1 * s2 * s;
    a[k + 2] = num / (one_minus_x2 * (kd + 1.0) * (kd + 2.0));
  }
  return jet;
}

}  // namespace prolate::detail
