#include "prolate/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace prolate {

ValueDerivative eval_p_series(std::span<const double> coeffs, double x) {
  if (coeffs.empty()) return {};
  const std::size_t count = coeffs.size();

  if (x == 1.0 || x == -1.0) {
    // P_k(+-1) = (+-1)^k, P_k'(+-1) = (+-1)^(k+1) k(k+1)/2
    double value = 0.0, derivative = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const double sign_k = (x < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
      const double sign_d = (x < 0.0) ? -sign_k : 1.0;
      const double kd = static_cast<double>(k);
      value += coeffs[k] * sign_k;
      derivative += coeffs[k] * sign_d * 0.5 * kd * (kd + 1.0);
    }
    return {value, derivative};
  }

  double p_prev = 1.0, p_cur = x;     // P_0, P_1
  double dp_prev = 0.0, dp_cur = 1.0;  // P_0', P_1'
  double value = coeffs[0];
  double derivative = 0.0;
  if (count > 1) {
    value += coeffs[1] * x;
    derivative += coeffs[1];
  }
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double kd = static_cast<double>(k);
    const double p_next = ((2.0 * kd + 1.0) * x * p_cur - kd * p_prev) / (kd + 1.0);
    const double dp_next =
        ((2.0 * kd + 1.0) * (p_cur + x * dp_cur) - kd * dp_prev) / (kd + 1.0);
    value += coeffs[k + 1] * p_next;
    derivative += coeffs[k + 1] * dp_next;
    p_prev = p_cur;
    p_cur = p_next;
    dp_prev = dp_cur;
    dp_cur = dp_next;
  }
  return {value, derivative};
}

namespace {

void require_open_interval(double x) {
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("Legendre Q_k requires |x| < 1");
  }
}

// Calls sink(k, Q_k, Q_k') for k = 0..k_max.
template <class Sink>
void q_recurrence(int k_max, double x, Sink&& sink) {
  const double log_ratio = std::log1p(x) - std::log1p(-x);
  const double one_minus_x2 = (1.0 - x) * (1.0 + x);
  double q_prev = 0.5 * log_ratio;
  double dq_prev = 1.0 / one_minus_x2;
  sink(0, q_prev, dq_prev);
  if (k_max == 0) return;
  double q_cur = x * q_prev - 1.0;
  double dq_cur = q_prev + x * dq_prev;
  sink(1, q_cur, dq_cur);
  for (int k = 1; k < k_max; ++k) {
    const double kd = k;
    const double q_next = ((2.0 * kd + 1.0) * x * q_cur - kd * q_prev) / (kd + 1.0);
    const double dq_next =
        ((2.0 * kd + 1.0) * (q_cur + x * dq_cur) - kd * dq_prev) / (kd + 1.0);
    sink(k + 1, q_next, dq_next);
    q_prev = q_cur;
    q_cur = q_next;
    dq_prev = dq_cur;
    dq_cur = dq_next;
  }
}

}  // namespace

std::vector<ValueDerivative> eval_q_batch(int k_max, double x) {
  if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
  require_open_interval(x);
  std::vector<ValueDerivative> out(static_cast<std::size_t>(k_max) + 1);
  q_recurrence(k_max, x, [&](int k, double q, double dq) { out[k] = {q, dq}; });
  return out;
}

ValueDerivative eval_q_series(std::span<const double> coeffs, double x) {
  require_open_interval(x);
  if (coeffs.empty()) return {};
  ValueDerivative sum;
  q_recurrence(static_cast<int>(coeffs.size()) - 1, x, [&](int k, double q, double dq) {
    sum.value += coeffs[k] * q;
    sum.derivative += coeffs[k] * dq;
  });
  return sum;
}

}  // namespace prolate
