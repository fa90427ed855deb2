#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/oracles.hpp"
#include "prolate/errors.hpp"
#include "prolate/rootfind.hpp"

using namespace prolate;

namespace {

std::vector<double> oracle_roots(const PswfExpansion& exp, int samples) {
  return oracle::grid_bisection_roots([&](double x) { return eval_psi(exp, x).value; },
                                      -1.0 + 1e-15, 1.0 - 1e-15, samples, 1e-15);
}

}  // namespace

TEST_CASE("roots match grid bisection at c = 20, n = 30") {
  ToleranceConfig cfg;
  const auto exp = compute_expansion(20.0, 30, cfg);
  const auto roots = find_roots(exp, cfg);
  const auto ref = oracle_roots(exp, 20000);
  REQUIRE(ref.size() == 30);
  REQUIRE(roots.nodes.size() == 30);
  for (int j = 0; j < 30; ++j) {
    CHECK(std::abs(roots.nodes[j] - ref[j]) <= 1e-12);
    CHECK(roots.ders[j] == doctest::Approx(eval_psi(exp, roots.nodes[j]).derivative).epsilon(1e-10));
  }
}

TEST_CASE("roots match grid bisection for a mix of c and n") {
  ToleranceConfig cfg;
  for (auto [c, n] : {std::pair{1e-4, 5}, {1.0, 1}, {3.0, 2}, {50.0, 17}, {100.0, 86}, {300.0, 230}}) {
    const auto exp = compute_expansion(c, n, cfg);
    const auto roots = find_roots(exp, cfg);
    const auto ref = oracle_roots(exp, 40 * n + 200);
    INFO("c=" << c << " n=" << n);
    REQUIRE(ref.size() == static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) CHECK(std::abs(roots.nodes[j] - ref[j]) <= 1e-12);
  }
}

TEST_CASE("root table structure") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> logc(-2.0, 3.5);
  ToleranceConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const double c = std::pow(10.0, logc(rng));
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(2.0 * c / std::numbers::pi + 60));
    const auto roots = find_roots(compute_expansion(c, n, cfg), cfg);
    INFO("c=" << c << " n=" << n);
    REQUIRE(roots.nodes.size() == static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(roots.nodes[j]) < 1.0);
      CHECK(roots.nodes[j] == -roots.nodes[n - 1 - j]);
      CHECK(roots.ders[j] == (n % 2 == 1 ? 1.0 : -1.0) * roots.ders[n - 1 - j]);
      if (j > 0) CHECK(roots.nodes[j] > roots.nodes[j - 1]);
      if (j > 0) CHECK((roots.ders[j] > 0) != (roots.ders[j - 1] > 0));
    }
    if (n % 2 == 1) CHECK(roots.nodes[n / 2] == 0.0);
  }
}

TEST_CASE("roots of psi_n and psi_{n+1} interlace") {
  ToleranceConfig cfg;
  for (int n : {4, 25, 60}) {
    const auto a = find_roots(compute_expansion(40.0, n, cfg), cfg).nodes;
    const auto b = find_roots(compute_expansion(40.0, n + 1, cfg), cfg).nodes;
    for (int j = 0; j < n; ++j) {
      CHECK(b[j] < a[j]);
      CHECK(a[j] < b[j + 1]);
    }
  }
}

TEST_CASE("Pruefer prediction lands near the next root") {
  ToleranceConfig cfg;
  const auto exp = compute_expansion(100.0, 86, cfg);
  const auto roots = find_roots(exp, cfg);
  for (int j = 43; j + 1 < 86; ++j) {
    const auto p = prufer_predict(exp, roots.nodes[j], std::numbers::pi / 2, -std::numbers::pi / 2,
                                  cfg.rk2_steps);
    const double gap = roots.nodes[j + 1] - roots.nodes[j];
    CHECK(std::abs(p.x - roots.nodes[j + 1]) < 0.05 * gap);
    CHECK_FALSE(p.clamped);
  }
}

TEST_CASE("Newton on a jet converges quadratically and reports its steps") {
  ToleranceConfig cfg;
  const auto exp = compute_expansion(20.0, 7, cfg);
  const auto roots = find_roots(exp, cfg);
  const double x0 = roots.nodes[3];
  const auto jet = psi_taylor_jet(exp, x0, 0.0, roots.ders[3], cfg.taylor_order);
  const double guess = roots.nodes[4] + 0.01 * (roots.nodes[4] - roots.nodes[3]);
  const auto r = newton_refine(jet, guess, cfg);
  CHECK(r.root == doctest::Approx(roots.nodes[4]).epsilon(1e-14));
  CHECK(r.iterations == static_cast<int>(r.steps.size()));
  CHECK(r.iterations <= 6);
  ToleranceConfig strict = cfg;
  strict.newton_max_iters = 1;
  CHECK_THROWS_AS(newton_refine(jet, guess, strict), NumericalError);
}

TEST_CASE("roots near x = 1 at large n resolve below the node spacing") {
  // The outermost roots sit within ~1e-9 of 1; the Newton stopping rule has
  // to respect the spacing of doubles there.
  ToleranceConfig cfg;
  const auto exp = compute_expansion(1e4, 12000, cfg);
  const auto roots = find_roots(exp, cfg);
  for (int j = 1; j < 12000; ++j) REQUIRE(roots.nodes[j] > roots.nodes[j - 1]);
  CHECK(roots.nodes.back() < 1.0);
  CHECK(1.0 - roots.nodes.back() < 1e-6);
}
