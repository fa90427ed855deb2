#include "prolate/pswf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "jet_recurrence.hpp"
#include "prolate/errors.hpp"

namespace prolate {

namespace {

constexpr double kMachineEps = 0x1p-52;

}  // namespace

SymTridiagonal build_operator_matrix(double c, Parity parity, int m) {
  if (m < 1) throw std::invalid_argument("operator matrix needs at least one row");
  SymTridiagonal t;
  t.diag.resize(m);
  t.offdiag.resize(m - 1);
  const double c2 = c * c;
  for (int i = 0; i < m; ++i) {
    const double k = i;
    if (parity == Parity::even) {
      t.diag[i] = 2.0 * k * (2.0 * k + 1.0) +
                  (4.0 * k * (2.0 * k + 1.0) - 1.0) / ((4.0 * k + 3.0) * (4.0 * k - 1.0)) * c2;
      if (i + 1 < m) {
        t.offdiag[i] = (2.0 * k + 2.0) * (2.0 * k + 1.0) /
                       ((4.0 * k + 3.0) * std::sqrt((4.0 * k + 1.0) * (4.0 * k + 5.0))) * c2;
      }
    } else {
      t.diag[i] = (2.0 * k + 1.0) * (2.0 * k + 2.0) +
                  ((4.0 * k + 2.0) * (2.0 * k + 2.0) - 1.0) / ((4.0 * k + 5.0) * (4.0 * k + 1.0)) * c2;
      if (i + 1 < m) {
        t.offdiag[i] = (2.0 * k + 3.0) * (2.0 * k + 2.0) /
                       ((4.0 * k + 5.0) * std::sqrt((4.0 * k + 3.0) * (4.0 * k + 7.0))) * c2;
      }
    }
  }
  return t;
}

int bisection_dimension(double c, int n) {
  return static_cast<int>(std::ceil(1.1 * c + n + 1000.0));
}

int rqi_dimension(double c, int n) {
  // 2n + 4 rows resolve psi_n once n is past the 2c/pi transition. Below it the
  // Legendre coefficients extend to degree ~c, so the block is widened.
  const int base_rows = 2 * n + 4;
  const int low_index_rows = static_cast<int>(std::ceil(0.5 * (1.1 * c + n))) + 40;
  return std::max(base_rows, low_index_rows);
}

Bracket estimate_chi_bracket(double c, int n, const ToleranceConfig& cfg) {
  if (!(c > 0.0)) throw std::invalid_argument("bandlimit c must be positive");
  if (n < 0) throw std::invalid_argument("PSWF index must be non-negative");
  const auto t = build_operator_matrix(c, parity_of(n), bisection_dimension(c, n));
  const int m = n / 2 + 1;  // chi_n is the (floor(n/2)+1)-th smallest eigenvalue
  const double b0 = (1.0 + 2.0 * n) * c;
  Bracket bracket = bisect_kth_bracket(t, m, 0.0, b0, cfg.bisection_stop);

  // The midpoint is closer to chi_n than to chi_{n-2} or chi_{n+2} when no
  // other eigenvalue lies within one bracket width of the bracket.
  const double w = bracket.width();
  const bool separated = sturm_count(t, bracket.lower - w) == m - 1 &&
                         sturm_count(t, bracket.upper + w) == m;
  if (!separated) {
    throw NumericalError("chi", "bisection bracket for n=" + std::to_string(n) +
                                    " does not separate chi_n from its neighbours");
  }
  return bracket;
}

double estimate_chi(double c, int n, const ToleranceConfig& cfg) {
  return estimate_chi_bracket(c, n, cfg).midpoint();
}

PswfExpansion compute_expansion(double c, int n, const ToleranceConfig& cfg) {
  const double chi_estimate = estimate_chi(c, n, cfg);
  const Parity parity = parity_of(n);

  int rows = rqi_dimension(c, n);
  RqiResult rqi;
  for (;;) {
    rqi = rayleigh_iterate(build_operator_matrix(c, parity, rows), chi_estimate, cfg);
    const auto& v = rqi.eigenvector;
    const double tail = std::max(std::abs(v[rows - 1]), std::abs(v[rows - 2]));
    if (tail < 1e-6 * kMachineEps) break;
    if (rows > (1 << 28) / 2) throw NumericalError("expansion", "coefficient tail never decays");
    rows *= 2;
  }

  PswfExpansion exp;
  exp.c = c;
  exp.n = n;
  exp.chi = rqi.eigenvalue;
  exp.parity = parity;

  const int offset = (parity == Parity::even) ? 0 : 1;
  const std::size_t full = 2 * rqi.eigenvector.size() + offset;
  exp.alpha.assign(full, 0.0);
  for (std::size_t i = 0; i < rqi.eigenvector.size(); ++i) {
    const std::size_t k = 2 * i + offset;
    exp.alpha[k] = rqi.eigenvector[i] * std::sqrt(k + 0.5);
  }
  std::size_t last = full - 1;
  while (last > 0 && std::abs(exp.alpha[last]) < kMachineEps) --last;
  last = std::max<std::size_t>(last, n);
  exp.alpha.resize(last + 1);
  return exp;
}

ValueDerivative eval_psi(const PswfExpansion& exp, double x) {
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("eval_psi requires |x| <= 1");
  return eval_p_series(exp.alpha, x);
}

double default_jet_scale(const PswfExpansion& exp, double x) {
  const double frequency = std::sqrt(std::abs(exp.chi) + exp.c * exp.c) + 1.0;
  return std::min(1.0 / frequency, 0.5 * (1.0 - std::abs(x)));
}

TaylorJet psi_taylor_jet(const PswfExpansion& exp, double center, double psi0,
                         double dpsi0, int order, double scale) {
  return detail::prolate_jet(exp.c, exp.chi, center, psi0, dpsi0, order, scale, 0.0, 0.0);
}

TaylorJet psi_taylor_jet(const PswfExpansion& exp, double center, double psi0,
                         double dpsi0, int order) {
  if (!(std::abs(center) < 1.0)) throw std::domain_error("jet center must satisfy |x| < 1");
  return psi_taylor_jet(exp, center, psi0, dpsi0, order, default_jet_scale(exp, center));
}

LambdaMagnitude compute_lambda(const PswfExpansion& exp) {
  const auto at_zero = eval_psi(exp, 0.0);
  constexpr double kTiny = std::numeric_limits<double>::min();
  if (exp.parity == Parity::even) {
    if (std::abs(at_zero.value) < kTiny) {
      throw NumericalError("lambda", "psi_n(0) vanishes for even n");
    }
    return {std::abs(2.0 * exp.alpha[0] / at_zero.value), LambdaAxis::real};
  }
  if (std::abs(at_zero.derivative) < kTiny) {
    throw NumericalError("lambda", "psi_n'(0) vanishes for odd n");
  }
  const double alpha1 = exp.alpha.size() > 1 ? exp.alpha[1] : 0.0;
  return {std::abs(2.0 * exp.c * alpha1 / (3.0 * at_zero.derivative)),
          LambdaAxis::imaginary};
}

}  // namespace prolate
