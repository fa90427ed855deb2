#include "prolate/config.hpp"

#include <cstdio>
#include <stdexcept>

namespace prolate {

void ToleranceConfig::validate() const {
  if (!(bisection_stop > 0.0)) throw std::invalid_argument("bisection_stop must be positive");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be positive");
  if (taylor_order < 4) throw std::invalid_argument("taylor_order must be at least 4");
  if (rk2_steps <= 0) throw std::invalid_argument("rk2_steps must be positive");
  if (!(rqi_eig_tol > 0.0)) throw std::invalid_argument("rqi_eig_tol must be positive");
  if (!(rqi_vec_tol > 0.0)) throw std::invalid_argument("rqi_vec_tol must be positive");
  if (rqi_max_iters <= 0) throw std::invalid_argument("rqi_max_iters must be positive");
  if (newton_max_iters <= 0) throw std::invalid_argument("newton_max_iters must be positive");
}

std::string ToleranceConfig::canonical() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "bisection_stop=%.17g;newton_tol=%.17g;taylor_order=%d;rk2_steps=%d;"
                "rqi_eig_tol=%.17g;rqi_vec_tol=%.17g;rqi_max_iters=%d;"
                "newton_max_iters=%d;rng_seed=%llu",
                bisection_stop, newton_tol, taylor_order, rk2_steps, rqi_eig_tol,
                rqi_vec_tol, rqi_max_iters, newton_max_iters,
                static_cast<unsigned long long>(rng_seed));
  return buf;
}

std::uint64_t ToleranceConfig::digest() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace prolate
