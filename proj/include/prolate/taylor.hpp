#pragma once

#include <vector>

#include "prolate/legendre.hpp"

namespace prolate {

/// Local Taylor expansion of an ODE solution around `center`.
///
/// Coefficients are stored scaled, coeffs[k] = f^(k)(center) * scale^k / k!,
/// so that high orders stay in range near the endpoints of [-1, 1] and for
/// large bandlimits.
struct TaylorJet {
  double center = 0.0;
  double scale = 1.0;
  std::vector<double> coeffs;

  int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

  /// Unscaled k-th derivative at the center (may overflow for large k).
  double derivative(int k) const;

  /// Truncated series for f and f' at x.
  ValueDerivative evaluate(double x) const;
};

}  // namespace prolate
