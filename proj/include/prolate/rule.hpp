#pragma once

#include <span>
#include <vector>

#include "prolate/config.hpp"

namespace prolate {

struct StageTimings {
  double prol = 0.0;     // chi_n and Legendre coefficients
  double roots = 0.0;
  double weights = 0.0;
  double total = 0.0;
};

/// n-point quadrature rule for functions of bandlimit c on [-1, 1].
struct QuadratureRule {
  double c = 0.0;
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  double chi = 0.0;
  double lambda_abs = 0.0;
  // n < 2c/pi: the rule exists but is not expected to be accurate.
  bool below_transition = false;
  // Accuracy bound on the weights is only established for c > 60.
  bool theory_applies = false;
  StageTimings timings;
};

/// estimate_chi -> compute_expansion -> find_roots -> compute_weights -> compute_lambda.
/// Stage failures are rethrown as NumericalError with the stage label.
QuadratureRule build_rule(double c, int n, const ToleranceConfig& cfg = {});

/// |lambda_n| for bandlimit c.
double lambda_abs(double c, int n, const ToleranceConfig& cfg = {});

/// Smallest n with |lambda_n| < eps. Throws std::domain_error unless
/// 1e-150 <= eps < 1.
int min_nodes_for_accuracy(double c, double eps, const ToleranceConfig& cfg = {});

inline constexpr int kDefaultNumFrequencies = 100;

struct AuditReport {
  double error = 0.0;           // max over the frequency grid
  double worst_frequency = 0.0;
  double sum_weights_minus_two = 0.0;
};

/// Max |int cos(w x) dx - sum_j w_j cos(w x_j)| over w_k = 2kc/num_freqs,
/// k = 1..num_freqs.
AuditReport audit(double c, std::span<const double> nodes,
                  std::span<const double> weights,
                  int num_freqs = kDefaultNumFrequencies);

double audit_error(const QuadratureRule& rule, int num_freqs = kDefaultNumFrequencies);

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Classical n-point Gauss-Legendre rule (Newton on P_n).
GaussLegendreRule gauss_legendre_rule(int n);

}  // namespace prolate
