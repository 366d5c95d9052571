#pragma once

#include "zseries/real.hpp"

// Reference implementations used to validate the series modules. These are
// deliberately non-series methods (recurrence-shifted asymptotic digamma,
// Euler-Maclaurin zeta, the classical limit formula for the generalized
// Euler constants) and share no summation code with the series engines, so
// agreement constitutes independent validation.
namespace zseries::oracle {

// Euler-Maclaurin shape: shift = terms summed directly before the tail,
// bernoulli_terms = number of B_2r correction terms.
struct EMConfig {
  long shift;
  int bernoulli_terms;

  explicit EMConfig(long shift_ = 80, int bernoulli_terms_ = 28);
};

struct OracleValue {
  Real value;
  Real error_bound;  // remainder bound from the first omitted correction
};

// B_n at the given precision. Exact rational recurrence behind a
// process-wide cache; safe for concurrent initialization.
Real bernoulli(long n, mpfr_prec_t bits);

// psi(x) for x > 0: recurrence shift upward, then the asymptotic series
// ln x - 1/(2x) - sum B_2m/(2m x^2m). Absolute error well below
// 2^-(bits-16).
Real digamma_ref(const Real& x, const Precision& prec);

// zeta(s, a) for a > 0, s != 1, s > -2M+1, by Euler-Maclaurin with an
// explicit remainder bound.
OracleValue hurwitz_zeta_ref(const Real& s, const Real& a, const EMConfig& cfg,
                             const Precision& prec);
OracleValue hurwitz_zeta_ref(const Real& s, const Real& a, const Precision& prec);

// gamma_ell(a) by the classical limit formula
//   lim_N [ sum_{n<=N} ln^ell(n+a)/(n+a) - ln^(ell+1)(N+a)/(ell+1) ]
// accelerated with Euler-Maclaurin corrections applied to the summand.
// Capped at ell <= 20.
OracleValue stieltjes_ref(long ell, const Real& a, const Precision& prec);
OracleValue stieltjes_ref(long ell, const Real& a, const EMConfig& cfg, const Precision& prec);

}  // namespace zseries::oracle
