#pragma once

#include <cstdint>
#include <string>

namespace prolate {

/// Numeric knobs for the quadrature construction. Defaults reproduce the
/// double-precision setup; every field must be positive.
struct ToleranceConfig {
  double bisection_stop = 0x1p-40;  // relative width of the final Sturm bracket
  double newton_tol = 1e-14;        // Newton step, relative to local node spacing
  int taylor_order = 30;
  int rk2_steps = 10;
  double rqi_eig_tol = 1e-14;
  double rqi_vec_tol = 1e-10;
  int rqi_max_iters = 50;
  int newton_max_iters = 20;
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument on a non-positive field or taylor_order < 4.
  void validate() const;

  /// Canonical "key=value;..." rendering used for the digest and file headers.
  std::string canonical() const;

  /// FNV-1a hash of canonical().
  std::uint64_t digest() const;
};

}  // namespace prolate
