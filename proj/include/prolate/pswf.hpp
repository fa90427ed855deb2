#pragma once

#include <vector>

#include "prolate/config.hpp"
#include "prolate/legendre.hpp"
#include "prolate/taylor.hpp"
#include "prolate/tridiag.hpp"

namespace prolate {

enum class Parity { even, odd };

inline Parity parity_of(int n) noexcept { return (n % 2 == 0) ? Parity::even : Parity::odd; }

/// Legendre expansion psi_n(x) = sum_k alpha_k P_k(x) of the order-zero
/// prolate spheroidal wave function with bandlimit c, normalized in L2[-1,1].
struct PswfExpansion {
  double c = 0.0;
  int n = 0;
  double chi = 0.0;  // eigenvalue of the prolate differential operator
  LegendreSeries alpha;
  Parity parity = Parity::even;
};

/// Leading m x m block of the even or odd Legendre-coefficient operator.
SymTridiagonal build_operator_matrix(double c, Parity parity, int m);

/// Row count used by the Sturm bisection for chi_n.
int bisection_dimension(double c, int n);

/// Row count used by the Rayleigh quotient iteration for psi_n.
int rqi_dimension(double c, int n);

/// Sturm-bisection estimate of chi_n, closer to chi_n than to any chi_m.
double estimate_chi(double c, int n, const ToleranceConfig& cfg);

/// Bracket form of estimate_chi (the bracket holds exactly chi_n).
Bracket estimate_chi_bracket(double c, int n, const ToleranceConfig& cfg);

/// chi_n and the Legendre coefficients of psi_n (bisection seed, then RQI).
PswfExpansion compute_expansion(double c, int n, const ToleranceConfig& cfg);

/// psi_n(x) and psi_n'(x) from the Legendre series, |x| <= 1.
ValueDerivative eval_psi(const PswfExpansion& exp, double x);

/// Default jet scale at x: small enough that high derivatives stay finite.
double default_jet_scale(const PswfExpansion& exp, double x);

/// Taylor jet of psi_n at `center` from psi_n and psi_n' there, derivatives of
/// order 2..order generated by the differentiated prolate ODE.
/// Throws std::domain_error unless |center| < 1.
TaylorJet psi_taylor_jet(const PswfExpansion& exp, double center, double psi0,
                         double dpsi0, int order);
TaylorJet psi_taylor_jet(const PswfExpansion& exp, double center, double psi0,
                         double dpsi0, int order, double scale);

enum class LambdaAxis { real, imaginary };

struct LambdaMagnitude {
  double magnitude = 0.0;
  LambdaAxis axis = LambdaAxis::real;  // even n: real, odd n: imaginary
};

/// |lambda_n| of the truncated Fourier transform, to high relative accuracy
/// even far below machine epsilon.
LambdaMagnitude compute_lambda(const PswfExpansion& exp);

}  // namespace prolate
