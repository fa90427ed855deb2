#include "prolate/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "prolate/errors.hpp"

namespace prolate {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// An entry belongs to the leading small run if below this fraction of the max.
constexpr double kSmallEntryFraction = 1e-8;
// Leading entries below this fraction of the max are not tracked.
constexpr double kTrackFloor = 1e-200;
// Leading entries far below the first one do not influence it.
constexpr double kHeadFraction = 1e-3;
// Trailing entries below this fraction of the max are dropped by the caller.
constexpr double kTailFraction = 1e-6 * kEps;
constexpr int kMaxBracketExpansions = 200;

double scaled_norm(std::span<const double> v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  if (vmax == 0.0 || !std::isfinite(vmax)) return vmax;
  double s = 0.0;
  for (double x : v) {
    const double y = x / vmax;
    s += y * y;
  }
  return vmax * std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::size_t leading_small_run(std::span<const double> v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double small = kSmallEntryFraction * vmax;
  std::size_t head = 0;
  while (head < v.size() && std::abs(v[head]) < small) ++head;
  return head;
}

// Largest relative change over the trailing entries and, if track_head, the
// leading small run.
double tracked_change(std::span<const double> now, std::span<const double> before,
                      bool track_head) {
  const std::size_t m = now.size();
  double vmax = 0.0;
  for (double x : now) vmax = std::max(vmax, std::abs(x));
  const double head_floor = std::max(kTrackFloor * vmax, kHeadFraction * std::abs(now[0]));
  const double tail_floor = kTailFraction * vmax;

  double worst = 0.0;
  auto consider = [&](std::size_t k, double floor) {
    const double a = std::abs(now[k]);
    if (a < floor) return;
    worst = std::max(worst, std::abs(now[k] - before[k]) / a);
  };
  const std::size_t head = leading_small_run(now);
  if (track_head) {
    for (std::size_t k = 0; k < head; ++k) consider(k, head_floor);
  }
  const std::size_t tail = std::max<std::size_t>(1, m / 10);
  for (std::size_t k = std::max(head, m - tail); k < m; ++k) consider(k, tail_floor);
  return worst;
}

// Past the turning point the leading run decays geometrically towards k = 0
// and inverse iteration only sharpens it by ~eps per step. When the leading
// block of t - lambda I is definite, that run is instead the unique decaying
// solution of rows 0..h-1 given v[h], obtained by one continued-fraction
// sweep. Returns false (leaving v alone) if the block is not definite.
bool rebuild_leading_run(const SymTridiagonal& t, double lambda, std::vector<double>& v) {
  const std::size_t h = leading_small_run(v);
  if (h == 0 || h >= v.size()) return h == 0;
  std::vector<double> q(h);
  q[0] = t.diag[0] - lambda;
  for (std::size_t i = 1; i < h; ++i) {
    q[i] = t.diag[i] - lambda - t.offdiag[i - 1] * t.offdiag[i - 1] / q[i - 1];
  }
  for (std::size_t i = 0; i < h; ++i) {
    if (!(q[i] * q[0] > 0.0) || !std::isfinite(q[i])) return false;
  }
  v[h - 1] = -t.offdiag[h - 1] * v[h] / q[h - 1];
  for (std::size_t i = h - 1; i-- > 0;) v[i] = -t.offdiag[i] * v[i + 1] / q[i];
  return true;
}

}  // namespace

void SymTridiagonal::validate() const {
  if (diag.empty()) throw std::invalid_argument("tridiagonal matrix must be non-empty");
  if (offdiag.size() + 1 != diag.size()) {
    throw std::invalid_argument("offdiag length must be diag length - 1");
  }
  for (double d : diag)
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite diagonal entry");
  for (double e : offdiag)
    if (!std::isfinite(e)) throw std::invalid_argument("non-finite off-diagonal entry");
}

std::vector<double> SymTridiagonal::multiply(std::span<const double> v) const {
  const std::size_t m = size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += offdiag[i - 1] * v[i - 1];
    if (i + 1 < m) s += offdiag[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

double SymTridiagonal::gershgorin_lower() const {
  double lo = std::numeric_limits<double>::infinity();
  const std::size_t m = size();
  for (std::size_t i = 0; i < m; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < m) r += std::abs(offdiag[i]);
    lo = std::min(lo, diag[i] - r);
  }
  return lo;
}

double SymTridiagonal::gershgorin_upper() const {
  double hi = -std::numeric_limits<double>::infinity();
  const std::size_t m = size();
  for (std::size_t i = 0; i < m; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < m) r += std::abs(offdiag[i]);
    hi = std::max(hi, diag[i] + r);
  }
  return hi;
}

double SymTridiagonal::norm_inf() const {
  double nrm = 0.0;
  const std::size_t m = size();
  for (std::size_t i = 0; i < m; ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < m) r += std::abs(offdiag[i]);
    nrm = std::max(nrm, r);
  }
  return nrm;
}

int sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t m = t.size();
  int count = 0;
  // q_r = p_r(x) / p_{r-1}(x); a vanishing ratio counts as a sign change.
  double q = t.diag[0] - x;
  if (std::abs(q) < kTiny) q = -kTiny;
  if (q < 0.0) ++count;
  for (std::size_t r = 1; r < m; ++r) {
    const double e2 = t.offdiag[r - 1] * t.offdiag[r - 1];
    q = (t.diag[r] - x) - e2 / q;
    const double pivmin = kTiny * std::max(1.0, e2);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

Bracket bisect_kth_bracket(const SymTridiagonal& t, int m, double a0, double b0,
                           double stop) {
  t.validate();
  if (m < 1 || static_cast<std::size_t>(m) > t.size()) {
    throw std::invalid_argument("eigenvalue index out of range: " + std::to_string(m));
  }
  double a = a0;
  double b = (b0 > a0) ? b0 : a0 + 1.0;

  int count_a = sturm_count(t, a);
  for (int i = 0; count_a > m - 1; ++i) {
    if (i == kMaxBracketExpansions) {
      throw NumericalError("bisection", "cannot establish lower bracket");
    }
    const double width = b - a;
    b = a;
    a -= 2.0 * std::max(width, std::max(1.0, std::abs(a)));
    count_a = sturm_count(t, a);
  }
  int count_b = sturm_count(t, b);
  for (int i = 0; count_b < m; ++i) {
    if (i == kMaxBracketExpansions) {
      throw NumericalError("bisection", "cannot establish upper bracket");
    }
    a = b;
    count_a = count_b;
    b = (b > 0.0) ? 2.0 * b : b + std::max(1.0, std::abs(b));
    count_b = sturm_count(t, b);
  }

  for (;;) {
    const double d = a + 0.5 * (b - a);
    if (d <= a || d >= b) break;
    if (count_a == m - 1 && count_b == m &&
        b - a <= stop * std::max(1.0, std::abs(d))) {
      break;
    }
    const int count_d = sturm_count(t, d);
    if (count_d <= m - 1) {
      a = d;
      count_a = count_d;
    } else {
      b = d;
      count_b = count_d;
    }
  }
  return {a, b};
}

double bisect_kth_eigenvalue(const SymTridiagonal& t, int m, double a0, double b0,
                             double stop) {
  return bisect_kth_bracket(t, m, a0, b0, stop).midpoint();
}

ShiftedSolution solve_shifted(const SymTridiagonal& t, double shift,
                              std::span<const double> rhs) {
  const std::size_t m = t.size();
  if (rhs.size() != m) throw std::invalid_argument("rhs length mismatch");

  ShiftedSolution out;
  out.x.assign(rhs.begin(), rhs.end());
  if (m == 1) {
    double p = t.diag[0] - shift;
    if (p == 0.0) {
      p = kEps * kEps * std::max(std::abs(t.diag[0]), kTiny);
      ++out.perturbed_pivots;
    }
    out.x[0] /= p;
    return out;
  }

  const double guard = kEps * kEps * std::max(t.norm_inf(), kTiny);

  // LU with partial pivoting between adjacent rows. Row i of U holds
  // d[i], du[i], du2[i] on columns i, i+1, i+2; l[i] is the multiplier.
  std::vector<double> d(m), du(m - 1), du2(m, 0.0), l(m - 1);
  std::vector<unsigned char> swapped(m - 1, 0);
  for (std::size_t i = 0; i < m; ++i) d[i] = t.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < m; ++i) du[i] = t.offdiag[i];

  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double sub = t.offdiag[i];
    if (std::abs(d[i]) >= std::abs(sub)) {
      if (std::abs(d[i]) < guard) {
        d[i] = std::copysign(guard, d[i] == 0.0 ? 1.0 : d[i]);
        ++out.perturbed_pivots;
      }
      const double fact = sub / d[i];
      l[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / sub;
      d[i] = sub;
      l[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (std::abs(d[m - 1]) < guard) {
    d[m - 1] = std::copysign(guard, d[m - 1] == 0.0 ? 1.0 : d[m - 1]);
    ++out.perturbed_pivots;
  }

  auto& b = out.x;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (swapped[i]) {
      const double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - l[i] * b[i];
    } else {
      b[i + 1] -= l[i] * b[i];
    }
  }
  b[m - 1] /= d[m - 1];
  b[m - 2] = (b[m - 2] - du[m - 2] * b[m - 1]) / d[m - 2];
  for (std::size_t i = m - 2; i-- > 0;) {
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
  return out;
}

RqiResult rayleigh_iterate(const SymTridiagonal& t, double shift0,
                           const ToleranceConfig& cfg) {
  t.validate();
  const std::size_t m = t.size();
  RqiResult result;
  if (m == 1) {
    result.eigenvalue = t.diag[0];
    result.eigenvector = {1.0};
    return result;
  }

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> beta(m);
  for (double& b : beta) b = uniform(rng);
  {
    const double nrm = scaled_norm(beta);
    for (double& b : beta) b /= nrm;
  }

  double shift = shift0;
  double previous = shift0;
  int stable = 0;
  bool track_head = false;
  double last_residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= cfg.rqi_max_iters; ++it) {
    auto solved = solve_shifted(t, shift, beta);
    auto& v = solved.x;
    const double nrm = scaled_norm(v);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
      throw NumericalError("rqi", "shifted solve produced a degenerate vector");
    }
    for (double& x : v) x /= nrm;
    if (dot(v, beta) < 0.0) {
      for (double& x : v) x = -x;
    }
    const auto tv = t.multiply(v);
    const double rq = dot(v, tv);

    const bool eig_ok = std::abs(rq - previous) <= cfg.rqi_eig_tol * (1.0 + std::abs(rq));
    const bool vec_ok = tracked_change(v, beta, track_head) <= cfg.rqi_vec_tol;
    stable = (eig_ok && vec_ok) ? stable + 1 : 0;

    double r2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = tv[i] - rq * v[i];
      r2 += r * r;
    }
    last_residual = std::sqrt(r2);

    beta = std::move(v);
    previous = rq;
    shift = rq;
    if (stable >= 2 && !track_head && !rebuild_leading_run(t, rq, beta)) {
      // Fall back to iterating until the leading run itself settles.
      track_head = true;
      stable = 0;
    }
    if (stable >= 2) {
      result.eigenvalue = rq;
      result.iterations = it;
      result.residual = last_residual;
      break;
    }
    if (it == cfg.rqi_max_iters) {
      throw NumericalError("rqi", "no convergence after " + std::to_string(it) +
                                      " iterations, residual " +
                                      std::to_string(last_residual));
    }
  }

  auto first = std::find_if(beta.begin(), beta.end(), [](double x) { return x != 0.0; });
  if (first != beta.end() && *first < 0.0) {
    for (double& x : beta) x = -x;
  }
  result.eigenvector = std::move(beta);
  return result;
}

}  // namespace prolate
