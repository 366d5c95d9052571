#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "zseries/errors.hpp"
#include "zseries/summation.hpp"

using namespace zseries;
using zt::R;

namespace {

Real alt_inv(long j, long shift) {
  Real t = R(1L) / (j + shift);
  return (j % 2 != 0) ? -t : t;
}

}  // namespace

TEST_CASE("alternating sum of (-1)^j/(j+2) hits the psi-expressible value") {
  // sum_{j>=1} (-1)^j/(j+x) = (psi((x+1)/2) - psi((x+2)/2))/2; at x = 2 the
  // value is 1/2 - ln 2.
  Real expect = R("-0.193147180559945309417232121458176568075500134");
  SumReport rep = sum_alternating([](long j) { return alt_inv(j, 2); }, zt::tol("1e-20"), 0,
                                  zt::prec());
  zt::check_close(rep.value, expect, R("1e-20"), "sum (-1)^j/(j+2)");
  CHECK(rep.error_bound <= R("1e-20"));
}

TEST_CASE("alternating sum of the zero sequence") {
  SumReport rep = sum_alternating([](long) { return R(0L); }, zt::tol("1e-20"), 0, zt::prec());
  CHECK(rep.value == R(0L));
  CHECK(rep.error_bound == R(0L));
}

TEST_CASE("alternating sum of (-1)^j/(j+1) equals ln 2 - 1") {
  Real expect = R("-0.306852819440054690582767878541823431924499866");
  SumReport rep = sum_alternating([](long j) { return alt_inv(j, 1); }, zt::tol("1e-15"), 0,
                                  zt::prec());
  zt::check_close(rep.value, expect, R("1e-15"), "sum (-1)^j/(j+1)");
}

TEST_CASE("plain mode returns the classical partial sum and remainder bound") {
  SummationLimits lim;
  lim.accelerate = false;

  SUBCASE("geometric terms terminate with |term(J+1)| as the bound") {
    auto term = [](long j) {
      Real t = Real::pow2(-j, 256);
      return (j % 2 != 0) ? -t : t;
    };
    SumReport rep = sum_alternating(term, zt::tol("1e-25"), 0, zt::prec(), lim);
    zt::check_close(rep.value, R(-1L) / 3L, R("1e-25"), "sum (-1)^j 2^-j");
    CHECK(rep.error_bound <= R("1e-25"));
  }

  SUBCASE("slow decay hits the term cap") {
    lim.max_inner_terms = 100000;
    CHECK_THROWS_AS(
        sum_alternating([](long j) { return alt_inv(j, 1); }, zt::tol("1e-15"), 0, zt::prec(), lim),
        NonConvergence);
  }
}

TEST_CASE("pairing invariance") {
  // Summing term-by-term in pairs must agree with explicitly pre-paired
  // accumulation to within accumulation-order rounding.
  SummationLimits lim;
  lim.accelerate = false;
  auto term = [](long j) {
    Real t = Real::pow2(-j, 256) * (1L + R(1L) / j);
    return (j % 2 != 0) ? -t : t;
  };
  SumReport rep = sum_alternating(term, Tolerance(Real::pow2(-240, 256)), 0, zt::prec(), lim);

  // Plain mode consumed terms 1 .. inner_terms_total-1 (the last evaluation
  // is the remainder peek); re-sum the same range in explicit pairs.
  const long pairs = (rep.inner_terms_total - 1) / 2;
  CompensatedSum paired(zt::prec().bits);
  for (long i = 1; i <= pairs; ++i) paired.add(term(2 * i - 1) + term(2 * i));
  Real rel = abs(rep.value - paired.total()) / abs(rep.value);
  CHECK(rel <= Real::pow2(-(zt::prec().bits - 8), 256));
}

TEST_CASE("recomputing with 4x smaller tol moves the value less than the bound") {
  auto term = [](long j) { return alt_inv(j, 2); };
  SumReport first = sum_alternating(term, zt::tol("1e-14"), 0, zt::prec());
  SumReport finer = sum_alternating(term, zt::tol("2.5e-15"), 0, zt::prec());
  CHECK(abs(first.value - finer.value) <= first.error_bound);
}

TEST_CASE("consecutive same-sign terms past the onset are rejected") {
  auto bad = [](long j) { return R(1L) / (j * j); };
  CHECK_THROWS_AS(sum_alternating(bad, zt::tol("1e-10"), 0, zt::prec()), InvalidSequence);
}

TEST_CASE("sign irregularities before the onset are tolerated") {
  // Terms flip polarity once at j = 40, mimicking a log factor crossing 1.
  auto term = [](long j) {
    Real t = R(1L) / (j + 100L);
    Real s = (j % 2 != 0) ? -t : t;
    return j < 40 ? -s : s;
  };
  CHECK_NOTHROW(sum_alternating(term, zt::tol("1e-18"), 64, zt::prec()));
}

TEST_CASE("geometric outer sum of 2^-n") {
  auto outer = [](long n) {
    SumReport t(zt::prec().bits);
    t.value = Real::pow2(-n, zt::prec().bits);
    t.inner_terms_total = 1;
    return t;
  };
  SumReport rep = sum_geometric_outer(outer, zt::tol("1e-12"), zt::prec());
  zt::check_close(rep.value, R(2L), rep.error_bound, "sum 2^-n");
  CHECK(rep.error_bound <= R("1e-12"));
  CHECK(rep.decay_ratio == doctest::Approx(0.5).epsilon(0.05));
  CHECK(rep.outer_terms >= 4);
}

TEST_CASE("geometric outer sum of zeros") {
  auto outer = [](long) {
    SumReport t(zt::prec().bits);
    return t;
  };
  SumReport rep = sum_geometric_outer(outer, zt::tol("1e-12"), zt::prec());
  CHECK(rep.value == R(0L));
  CHECK(rep.error_bound == R(0L));
}

TEST_CASE("outer cap raises NonConvergence when ratios stay near 1") {
  SummationLimits lim;
  lim.max_outer_terms = 50;
  auto outer = [](long n) {
    SumReport t(zt::prec().bits);
    t.value = R(1L) / (n + 1);
    return t;
  };
  CHECK_THROWS_AS(sum_geometric_outer(outer, zt::tol("1e-12"), zt::prec(), lim), NonConvergence);
}
