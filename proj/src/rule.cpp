#include "prolate/rule.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <utility>
#include <numbers>
#include <stdexcept>

#include "prolate/errors.hpp"
#include "prolate/pswf.hpp"
#include "prolate/rootfind.hpp"
#include "prolate/weights.hpp"

namespace prolate {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const NumericalError& e) {
    throw NumericalError(stage, e.what());
  }
}

// Neumaier compensated sum accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

void require_bandlimit(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("bandlimit c must be positive");
}

}  // namespace

QuadratureRule build_rule(double c, int n, const ToleranceConfig& cfg) {
  require_bandlimit(c);
  if (n < 1) throw std::invalid_argument("rule size n must be at least 1");
  cfg.validate();

  QuadratureRule rule;
  rule.c = c;
  rule.n = n;
  rule.below_transition = n < 2.0 * c / std::numbers::pi;
  rule.theory_applies = c > 60.0;

  const auto start = Clock::now();
  auto t0 = start;
  const auto exp = run_stage("expansion", [&] { return compute_expansion(c, n, cfg); });
  rule.chi = exp.chi;
  rule.lambda_abs = run_stage("lambda", [&] { return compute_lambda(exp).magnitude; });
  rule.timings.prol = seconds_since(t0);

  t0 = Clock::now();
  auto roots = run_stage("roots", [&] { return find_roots(exp, cfg); });
  rule.timings.roots = seconds_since(t0);

  t0 = Clock::now();
  rule.weights = run_stage("weights", [&] { return compute_weights(exp, roots, cfg); });
  rule.timings.weights = seconds_since(t0);

  rule.nodes = std::move(roots.nodes);
  rule.timings.total = seconds_since(start);
  return rule;
}

double lambda_abs(double c, int n, const ToleranceConfig& cfg) {
  require_bandlimit(c);
  return compute_lambda(compute_expansion(c, n, cfg)).magnitude;
}

int min_nodes_for_accuracy(double c, double eps, const ToleranceConfig& cfg) {
  require_bandlimit(c);
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0, 1)");
  if (eps < 1e-150) {
    throw std::domain_error("eps below 1e-150 is beyond the computable range of |lambda_n|");
  }
  cfg.validate();

  std::map<int, bool> cache;
  auto below = [&](int n) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const bool result = lambda_abs(c, n, cfg) < eps;
    cache.emplace(n, result);
    return result;
  };

  int lo = static_cast<int>(std::ceil(2.0 * c / std::numbers::pi));
  int hi;
  if (below(lo)) {
    if (below(0)) return 0;
    hi = lo;
    lo = 0;
  } else {
    const double log_c = std::log(c);
    const double margin =
        (10.0 + 1.5 * log_c + 0.5 * std::log(1.0 / eps)) * std::log(c / 2.0);
    hi = std::max(lo + 50, static_cast<int>(std::ceil(2.0 * c / std::numbers::pi + margin)) + 50);
    while (!below(hi)) {
      lo = hi;
      hi *= 2;
    }
  }
  // Invariant: below(lo) is false, below(hi) is true.
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (below(mid) ? hi : lo) = mid;
  }
  while (hi > 0 && below(hi - 1)) --hi;
  return hi;
}

AuditReport audit(double c, std::span<const double> nodes, std::span<const double> weights,
                  int num_freqs) {
  if (nodes.size() != weights.size()) throw std::invalid_argument("nodes/weights size mismatch");
  if (num_freqs < 1) throw std::invalid_argument("num_freqs must be positive");
  AuditReport report;
  CompensatedSum total;
  for (double w : weights) total.add(w);
  report.sum_weights_minus_two = total.value() - 2.0;

  for (int k = 1; k <= num_freqs; ++k) {
    const double omega = 2.0 * k * c / num_freqs;
    const double exact = 2.0 * std::sin(omega) / omega;
    CompensatedSum sum;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum.add(weights[j] * std::cos(omega * nodes[j]));
    const double err = std::abs(exact - sum.value());
    if (k == 1 || err > report.error) {
      report.error = err;
      report.worst_frequency = omega;
    }
  }
  return report;
}

double audit_error(const QuadratureRule& rule, int num_freqs) {
  return audit(rule.c, rule.nodes, rule.weights, num_freqs).error;
}

GaussLegendreRule gauss_legendre_rule(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  auto legendre = [n](double x) {
    double p_prev = 1.0, p = x;
    for (int k = 1; k < n; ++k) {
      const double next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
      p_prev = p;
      p = next;
    }
    const double dp = n * (x * p - p_prev) / (x * x - 1.0);
    return std::pair<double, double>{p, dp};
  };

  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    if (n % 2 == 1 && i == n / 2) x = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre(x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) {
        dp = legendre(x).second;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

}  // namespace prolate
