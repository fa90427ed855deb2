#include "prolate/taylor.hpp"

#include <cmath>
#include <stdexcept>

namespace prolate {

double TaylorJet::derivative(int k) const {
  if (k < 0 || k > order()) throw std::out_of_range("jet derivative order out of range");
  double factor = 1.0;
  for (int j = 1; j <= k; ++j) factor *= j / scale;
  return coeffs[k] * factor;
}

ValueDerivative TaylorJet::evaluate(double x) const {
  const double t = (x - center) / scale;
  double value = 0.0;
  double slope = 0.0;
  for (int k = order(); k >= 1; --k) {
    value = value * t + coeffs[k];
    slope = slope * t + k * coeffs[k];
  }
  value = value * t + coeffs[0];
  return {value, slope / scale};
}

}  // namespace prolate
