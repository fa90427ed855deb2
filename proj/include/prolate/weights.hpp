#pragma once

#include <vector>

#include "prolate/config.hpp"
#include "prolate/pswf.hpp"
#include "prolate/rootfind.hpp"
#include "prolate/taylor.hpp"

namespace prolate {

/// Jet of Psi_n(x) = sum_k alpha_k Q_k(x).
using PsiJet = TaylorJet;

/// Psi_n(x) and Psi_n'(x) by direct Q-series summation, |x| < 1.
ValueDerivative psi2_direct(const PswfExpansion& exp, double x);

/// Taylor jet of Psi_n from its value and derivative at `center`, using the
/// inhomogeneous prolate ODE satisfied by Psi_n.
PsiJet psi2_taylor_jet(const PswfExpansion& exp, double center, double val,
                       double der, int order);
PsiJet psi2_taylor_jet(const PswfExpansion& exp, double center, double val,
                       double der, int order, double scale);

/// Psi_n at every node: direct at the middle node and the last four, Taylor
/// propagation in between, mirror symmetry for the negative half.
std::vector<double> compute_psi2_at_nodes(const PswfExpansion& exp,
                                          const RootTable& roots,
                                          const ToleranceConfig& cfg);

/// w_j = -2 Psi_n(x_j) / psi_n'(x_j).
std::vector<double> compute_weights(const PswfExpansion& exp, const RootTable& roots,
                                    const ToleranceConfig& cfg);

}  // namespace prolate
