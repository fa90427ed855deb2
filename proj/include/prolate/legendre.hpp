#pragma once

#include <span>
#include <vector>

namespace prolate {

struct ValueDerivative {
  double value = 0.0;
  double derivative = 0.0;
};

/// Coefficients a_0..a_N of a Legendre series sum_k a_k P_k (or Q_k).
using LegendreSeries = std::vector<double>;

/// sum_k a_k P_k(x) and its derivative, |x| <= 1, one forward recurrence pass.
ValueDerivative eval_p_series(std::span<const double> coeffs, double x);

/// Q_k(x), Q_k'(x) for k = 0..k_max. Throws std::domain_error unless |x| < 1.
std::vector<ValueDerivative> eval_q_batch(int k_max, double x);

/// sum_k a_k Q_k(x) and its derivative. Throws std::domain_error unless |x| < 1.
ValueDerivative eval_q_series(std::span<const double> coeffs, double x);

}  // namespace prolate
