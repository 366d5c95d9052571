#include <doctest.h>

#include "test_util.hpp"
#include "zseries/errors.hpp"
#include "zseries/real.hpp"

using namespace zseries;
using zt::R;

TEST_CASE("Precision invariants") {
  CHECK_NOTHROW(Precision(256, 30));
  CHECK_NOTHROW(Precision(64, 1));
  CHECK_THROWS_AS(Precision(63, 1), DomainError);
  CHECK_THROWS_AS(Precision(256, 0), DomainError);
  // bits must leave 32 guard bits over ceil(out_digits * log2(10))
  CHECK_THROWS_AS(Precision(64, 30), DomainError);
  CHECK_THROWS_AS(Precision(131, 30), DomainError);
  CHECK_NOTHROW(Precision(132, 30));
}

TEST_CASE("Tolerance invariants") {
  CHECK_THROWS_AS(Tolerance(R("0")), DomainError);
  CHECK_THROWS_AS(Tolerance(R("-1e-10")), DomainError);
  CHECK_NOTHROW(Tolerance(R("1e-12")));
}

TEST_CASE("parse and decimal round-trip") {
  Real x = R("3.1415926535897932384626433832795028842");
  std::string s1 = x.str(30);
  Real y = Real::parse(s1, zt::prec().bits);
  CHECK(y.str(30) == s1);
  CHECK_THROWS_AS(Real::parse("not-a-number", 256), std::invalid_argument);
  CHECK_THROWS_AS(Real::parse("", 256), std::invalid_argument);
}

TEST_CASE("integer arithmetic is exact") {
  CHECK(R(3) * R(7) == R(21));
  CHECK(Real::pow2(10, 64) == R(1024));
  CHECK(R(10) / 2L == R(5));
  CHECK((R(1) / 3L) * 3L == R(1));  // correctly rounded back
}

TEST_CASE("pow_ln conventions") {
  CHECK(pow_ln(R(1), 0) == R(1));  // ln^0 == 1 even where ln vanishes
  CHECK(pow_ln(R(1), 1) == R(0));
  zt::check_close(pow_ln(const_e(256), 3), R(1), Real::pow2(-250, 256), "ln(e)^3");
  // negative logs raised to odd powers keep their sign
  CHECK(pow_ln(R("0.5"), 3) < 0L);
  CHECK(pow_ln(R("0.5"), 2) > 0L);
}

TEST_CASE("compensated accumulation recovers a swamped unit") {
  CompensatedSum acc(64);
  acc.add(Real::of(1e30, 64));
  acc.add(Real::of(1L, 64));
  acc.add(Real::of(-1e30, 64));
  CHECK(acc.total() == R(1));
}

TEST_CASE("identical inputs give bit-identical strings") {
  auto run = [] {
    Real x = Real::parse("1.25", 256);
    Real acc = Real::of(0L, 256);
    for (long j = 1; j <= 500; ++j) acc += pow_ln(x + j, 2) / (j * j);
    return acc.str(40);
  };
  CHECK(run() == run());
}
