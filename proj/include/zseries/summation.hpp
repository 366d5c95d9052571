#pragma once

#include <cmath>
#include <functional>

#include "zseries/real.hpp"

namespace zseries {

// Target absolute error of a final value.
struct Tolerance {
  Real abs_tol;

  explicit Tolerance(Real t);
  static Tolerance parse(const std::string& s, const Precision& prec);
};

// Value plus certified error bound plus convergence telemetry.
struct SumReport {
  Real value;
  Real error_bound;  // bound on |value - true sum|, >= 0
  long outer_terms = 0;
  long inner_terms_total = 0;
  double decay_ratio = std::nan("");  // observed geometric ratio of outer terms

  explicit SumReport(mpfr_prec_t bits)
      : value(Real::of(0L, bits)), error_bound(Real::of(0L, bits)) {}
};

struct SummationLimits {
  long max_inner_terms = 1000000;  // per outer index
  long max_outer_terms = 200;
  // Tail acceleration of slowly-decaying alternating series. The direct
  // paired phase runs to the monotonicity onset when the onset is within
  // onset_cap, else to direct_base; the remaining tail is summed by
  // repeated averaging (forward-difference transform) of window terms.
  bool accelerate = true;
  long direct_base = 64;
  long onset_cap = 16384;
  int accel_window = 96;
  int accel_attempts = 4;
  // Called after each outer term with (n, term report, partial value);
  // used by the convergence benchmarks.
  std::function<void(long, const SumReport&, const Real&)> outer_observer;
};

// Sum of a strictly-alternating series term(1) + term(2) + ..., where
// |term(j)| decreases monotonically to 0 for j >= monotone_from. Terms are
// consumed in consecutive +/- pairs to suppress cancellation. With
// acceleration enabled (default) the tail past the direct phase is summed
// by the difference transform; with it disabled the classical partial sum
// is returned with the alternating remainder |term(J+1)| as the bound.
SumReport sum_alternating(const std::function<Real(long)>& term, const Tolerance& tol,
                          long monotone_from, const Precision& prec,
                          const SummationLimits& lim = {});

// Sum of outer terms T_0 + T_1 + ... that decay asymptotically
// geometrically with ratio < 1. Stops when |T_N| * r/(1-r) < tol/2 with r
// the largest ratio observed over the last three terms, capped at 0.9.
// Accumulation is in ascending index order with compensated summation;
// error bound is the accumulated inner bounds plus the outer tail estimate.
SumReport sum_geometric_outer(const std::function<SumReport(long)>& outer_term,
                              const Tolerance& tol, const Precision& prec,
                              const SummationLimits& lim = {});

}  // namespace zseries
