#pragma once

#include <doctest.h>

#include "zseries/real.hpp"
#include "zseries/summation.hpp"

namespace zt {

using zseries::Precision;
using zseries::Real;
using zseries::Tolerance;

inline const Precision& prec() {
  static Precision p(256, 30);
  return p;
}

inline Real R(const char* s) { return Real::parse(s, prec().bits); }
inline Real R(long n) { return Real::of(n, prec().bits); }
inline Real R(int n) { return Real::of(static_cast<long>(n), prec().bits); }
inline Tolerance tol(const char* s) { return Tolerance(R(s)); }

// |x - y| <= bound, with a doctest message on failure.
inline void check_close(const Real& x, const Real& y, const Real& bound, const char* what) {
  Real d = zseries::abs(x - y);
  INFO(what, ": |", x.str(25), " - ", y.str(25), "| = ", d.str(4), " vs ", bound.str(4));
  CHECK(d <= bound);
}

}  // namespace zt
