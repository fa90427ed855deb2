#include "prolate/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jet_recurrence.hpp"
#include "prolate/errors.hpp"

namespace prolate {

namespace {

// Nodes nearest x = 1 where Psi_n is summed directly instead of propagated.
constexpr int kDirectTailNodes = 4;

}  // namespace

ValueDerivative psi2_direct(const PswfExpansion& exp, double x) {
  return eval_q_series(exp.alpha, x);
}

PsiJet psi2_taylor_jet(const PswfExpansion& exp, double center, double val, double der,
                       int order, double scale) {
  const double c2 = exp.c * exp.c;
  const double alpha0 = exp.alpha.empty() ? 0.0 : exp.alpha[0];
  const double alpha1 = exp.alpha.size() > 1 ? exp.alpha[1] : 0.0;
  const double rhs = -c2 * alpha0 * center - c2 * alpha1 / 3.0;
  const double rhs_slope = -c2 * alpha0;
  return detail::prolate_jet(exp.c, exp.chi, center, val, der, order, scale, rhs, rhs_slope);
}

PsiJet psi2_taylor_jet(const PswfExpansion& exp, double center, double val, double der,
                       int order) {
  if (!(std::abs(center) < 1.0)) throw std::domain_error("jet center must satisfy |x| < 1");
  return psi2_taylor_jet(exp, center, val, der, order, default_jet_scale(exp, center));
}

std::vector<double> compute_psi2_at_nodes(const PswfExpansion& exp, const RootTable& roots,
                                          const ToleranceConfig& cfg) {
  const int n = exp.n;
  if (static_cast<int>(roots.nodes.size()) != n || static_cast<int>(roots.ders.size()) != n) {
    throw std::invalid_argument("root table size does not match n");
  }
  std::vector<double> vals(n, 0.0);
  const int middle = n / 2;
  const int first_direct = std::max(middle, n - kDirectTailNodes);

  auto current = psi2_direct(exp, roots.nodes[middle]);
  vals[middle] = current.value;
  for (int j = middle; j + 1 < first_direct; ++j) {
    const auto jet = psi2_taylor_jet(exp, roots.nodes[j], current.value, current.derivative,
                                     cfg.taylor_order);
    current = jet.evaluate(roots.nodes[j + 1]);
    vals[j + 1] = current.value;
  }
  for (int j = std::max(first_direct, middle + 1); j < n; ++j) {
    vals[j] = psi2_direct(exp, roots.nodes[j]).value;
  }
  const double parity_sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n+1)
  for (int j = 0; j < middle; ++j) vals[j] = parity_sign * vals[n - 1 - j];
  return vals;
}

std::vector<double> compute_weights(const PswfExpansion& exp, const RootTable& roots,
                                    const ToleranceConfig& cfg) {
  const auto vals = compute_psi2_at_nodes(exp, roots, cfg);
  std::vector<double> w(vals.size());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (std::abs(roots.ders[j]) < std::numeric_limits<double>::min()) {
      throw NumericalError("weights", "psi_n' vanishes at node " + std::to_string(j + 1));
    }
    w[j] = -2.0 * vals[j] / roots.ders[j];
  }
  return w;
}

}  // namespace prolate
