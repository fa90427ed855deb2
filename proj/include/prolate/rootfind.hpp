#pragma once

#include <vector>

#include "prolate/config.hpp"
#include "prolate/pswf.hpp"
#include "prolate/taylor.hpp"

namespace prolate {

/// Roots x_1 < ... < x_n of psi_n in (-1, 1) and psi_n'(x_j).
struct RootTable {
  std::vector<double> nodes;
  std::vector<double> ders;
};

struct PruferPrediction {
  double x = 0.0;
  bool clamped = false;  // integration left (x_start, 1) and was pulled back
};

/// Integrates dx/dtheta of the prolate Prufer transform from theta_start to
/// theta_end with `steps` uniform second-order Runge-Kutta steps.
PruferPrediction prufer_predict(const PswfExpansion& exp, double x_start,
                                double theta_start, double theta_end, int steps);

struct NewtonResult {
  double root = 0.0;
  double derivative = 0.0;
  int iterations = 0;
  std::vector<double> steps;  // |dx| per iteration
};

/// Newton iteration on the jet's truncated Taylor series starting from x_guess.
NewtonResult newton_refine(const TaylorJet& jet, double x_guess,
                           const ToleranceConfig& cfg);

/// All n roots, marching outward from the middle one and mirroring.
RootTable find_roots(const PswfExpansion& exp, const ToleranceConfig& cfg);

}  // namespace prolate
