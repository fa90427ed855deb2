#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "prolate/config.hpp"

namespace prolate {

/// Real symmetric tridiagonal matrix; offdiag[k] is entry (k, k+1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const noexcept { return diag.size(); }

  /// Throws std::invalid_argument on a size mismatch or non-finite entry.
  void validate() const;

  std::vector<double> multiply(std::span<const double> v) const;

  /// Gershgorin interval containing the whole spectrum.
  double gershgorin_lower() const;
  double gershgorin_upper() const;

  /// Max absolute row sum.
  double norm_inf() const;
};

/// Number of eigenvalues of t strictly less than x (Sturm sign changes,
/// evaluated as ratios of consecutive characteristic polynomials).
int sturm_count(const SymTridiagonal& t, double x);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  double midpoint() const noexcept { return 0.5 * (lower + upper); }
  double width() const noexcept { return upper - lower; }
};

/// Bracket [a, b] with sturm_count(a) = m - 1, sturm_count(b) = m around the
/// m-th smallest eigenvalue (1-based), shrunk until its width is at most
/// stop * max(1, |midpoint|) or no representable midpoint remains.
/// The initial bracket expands (b doubles, a moves down) as needed.
Bracket bisect_kth_bracket(const SymTridiagonal& t, int m, double a0, double b0,
                           double stop);

/// Midpoint of bisect_kth_bracket.
double bisect_kth_eigenvalue(const SymTridiagonal& t, int m, double a0, double b0,
                             double stop);

struct ShiftedSolution {
  std::vector<double> x;
  int perturbed_pivots = 0;
};

/// Solves (t - shift I) y = rhs by LU with adjacent-row partial pivoting.
/// Pivots that vanish are replaced by a tiny multiple of ||t||.
ShiftedSolution solve_shifted(const SymTridiagonal& t, double shift,
                              std::span<const double> rhs);

struct RqiResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;  // unit 2-norm, first nonzero entry positive
  int iterations = 0;
  double residual = 0.0;  // ||t v - lambda v||_2
};

/// Rayleigh quotient iteration from shift0 with a seeded random start vector.
/// Converged when the eigenvalue and the tail entries above ~1e-22 of the
/// largest entry hold still for two iterations. The tiny leading run is then
/// rebuilt by back substitution from the first big entry; if that block is
/// not definite at lambda, iteration continues tracking the head as well.
RqiResult rayleigh_iterate(const SymTridiagonal& t, double shift0,
                           const ToleranceConfig& cfg);

}  // namespace prolate
