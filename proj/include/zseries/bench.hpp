#pragma once

#include <string>
#include <vector>

#include "zseries/stieltjes.hpp"

namespace zseries {

// One partial sum of an instrumented outer loop.
struct ProfileRow {
  long n;            // outer index
  Real partial;      // partial value including all leading closed-form parts
  Real abs_error;    // |partial - final|
  long inner_terms;  // cumulative inner term count
};

// Per-outer-index convergence record for one configuration.
struct ConvergenceProfile {
  std::string method;
  long ell = 0;
  Real a;
  long k = 0;
  Real s;
  std::vector<ProfileRow> rows;
  double fitted_ratio;  // exp of the least-squares slope of ln|err| vs n
  long outer_terms = 0;

  explicit ConvergenceProfile(mpfr_prec_t bits)
      : a(Real::of(0L, bits)), s(Real::of(0L, bits)), fitted_ratio(std::nan("")) {}
};

ConvergenceProfile profile_stieltjes(StieltjesMethod method, long ell, const Real& a, long k,
                                     const Tolerance& tol, const Precision& prec,
                                     const SummationLimits& lim = {});

ConvergenceProfile profile_hurwitz(const Real& s, const Real& a, const Tolerance& tol,
                                   const Precision& prec, const SummationLimits& lim = {});

}  // namespace zseries
