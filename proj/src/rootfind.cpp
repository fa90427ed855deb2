#include "prolate/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "prolate/errors.hpp"

namespace prolate {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUpperLimit = 1.0 - 10.0 * kEps;

// dx/dtheta of the Prufer phase with gamma = sqrt(r p). Past the turning point
// chi = c^2 x^2 (only reachable for n below 2c/pi) the frequency is floored so
// the crude predictor keeps moving; Newton corrects the estimate.
double prufer_rate(double c, double chi, double x, double theta) {
  const double c2 = c * c;
  const double one_minus_x2 = (1.0 - x) * (1.0 + x);
  const double q = std::max(chi - c2 * x * x, 1e-6 * (chi + c2));
  const double w = std::sqrt(q / one_minus_x2);
  const double f = x * (c2 - 2.0 * c2 * x * x + chi) / (2.0 * one_minus_x2 * q);
  const double den = std::max(w - f * std::sin(2.0 * theta), 1e-3 * w);
  return -1.0 / den;
}

}  // namespace

PruferPrediction prufer_predict(const PswfExpansion& exp, double x_start,
                                double theta_start, double theta_end, int steps) {
  if (!(std::abs(x_start) < 1.0)) throw std::domain_error("Prufer start must satisfy |x| < 1");
  if (steps < 1) throw std::invalid_argument("Prufer solve needs at least one step");
  PruferPrediction out;
  const double h = (theta_end - theta_start) / steps;
  double x = x_start;
  double theta = theta_start;
  auto clamp = [&](double v) {
    if (v < x_start || v > kUpperLimit || !std::isfinite(v)) {
      out.clamped = true;
      return std::isfinite(v) && v < x_start ? x_start : kUpperLimit;
    }
    return v;
  };
  for (int i = 0; i < steps; ++i) {
    const double k1 = prufer_rate(exp.c, exp.chi, x, theta);
    const double x_mid = clamp(x + h * k1);
    const double k2 = prufer_rate(exp.c, exp.chi, x_mid, theta + h);
    x = clamp(x + 0.5 * h * (k1 + k2));
    theta += h;
  }
  out.x = x;
  return out;
}

NewtonResult newton_refine(const TaylorJet& jet, double x_guess, const ToleranceConfig& cfg) {
  NewtonResult out;
  const double spacing = std::max(std::abs(x_guess - jet.center), jet.scale * kEps);
  double x = x_guess;
  for (int it = 1;; ++it) {
    const auto f = jet.evaluate(x);
    if (f.derivative == 0.0 || !std::isfinite(f.value) || !std::isfinite(f.derivative)) {
      throw NumericalError("newton", "degenerate derivative at x=" + std::to_string(x));
    }
    const double dx = f.value / f.derivative;
    const double previous = x;
    x -= dx;
    out.steps.push_back(std::abs(dx));
    out.iterations = it;
    if (!(std::abs(x) < 1.0)) {
      throw NumericalError("newton", "iterate left (-1, 1)");
    }
    // Near +-1 the relative target can fall below one ulp of x.
    const double ulp = std::nextafter(std::abs(x), 2.0) - std::abs(x);
    if (std::abs(dx) <= std::max(cfg.newton_tol * spacing, 2.0 * ulp) || x == previous) break;
    // Steps no longer shrink: the iterate sits at roundoff level.
    if (it >= 3 && std::abs(dx) <= 1e-10 * spacing &&
        std::abs(dx) >= out.steps[out.steps.size() - 2]) {
      break;
    }
    if (it >= cfg.newton_max_iters) {
      throw NumericalError("newton", "no convergence after " + std::to_string(it) +
                                         " iterations, last iterate " + std::to_string(x));
    }
  }
  out.root = x;
  out.derivative = jet.evaluate(x).derivative;
  return out;
}

RootTable find_roots(const PswfExpansion& exp, const ToleranceConfig& cfg) {
  const int n = exp.n;
  if (n < 1) throw std::invalid_argument("find_roots requires n >= 1");
  RootTable table;
  table.nodes.assign(n, 0.0);
  table.ders.assign(n, 0.0);
  const int middle = n / 2;  // index of the smallest non-negative root
  const int order = cfg.taylor_order;
  constexpr double kHalfPi = std::numbers::pi / 2.0;

  auto fail = [&](int index, const std::exception& e) -> NumericalError {
    return NumericalError("roots", "root " + std::to_string(index + 1) + ": " + e.what());
  };

  if (n % 2 == 1) {
    table.nodes[middle] = 0.0;
    table.ders[middle] = eval_psi(exp, 0.0).derivative;
  } else {
    try {
      const double psi0 = eval_psi(exp, 0.0).value;
      const auto jet = psi_taylor_jet(exp, 0.0, psi0, 0.0, order);
      const auto guess =
          prufer_predict(exp, 0.0, 0.0, -kHalfPi, std::max(1, cfg.rk2_steps / 2));
      if (guess.x >= kUpperLimit) {
        throw NumericalError("prufer", "predicted root beyond the interval");
      }
      const auto refined = newton_refine(jet, guess.x, cfg);
      table.nodes[middle] = refined.root;
      table.ders[middle] = refined.derivative;
    } catch (const std::exception& e) {
      throw fail(middle, e);
    }
  }

  for (int j = middle; j + 1 < n; ++j) {
    try {
      const double x = table.nodes[j];
      const auto jet = psi_taylor_jet(exp, x, 0.0, table.ders[j], order);
      const auto guess = prufer_predict(exp, x, kHalfPi, -kHalfPi, cfg.rk2_steps);
      if (guess.x >= kUpperLimit) {
        throw NumericalError("prufer", "predicted root beyond the interval");
      }
      const auto refined = newton_refine(jet, guess.x, cfg);
      if (!(refined.root > x)) {
        throw NumericalError("newton", "root did not advance past its predecessor");
      }
      table.nodes[j + 1] = refined.root;
      table.ders[j + 1] = refined.derivative;
    } catch (const std::exception& e) {
      throw fail(j + 1, e);
    }
  }

  const double parity_sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n+1)
  for (int j = 0; j < middle; ++j) {
    table.nodes[j] = -table.nodes[n - 1 - j];
    table.ders[j] = parity_sign * table.ders[n - 1 - j];
  }
  return table;
}

}  // namespace prolate
