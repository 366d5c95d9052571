#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace zseries {

// Binary working precision plus the number of decimal digits requested in
// output. Construction enforces bits >= 64 and leaves at least 32 guard
// bits above what out_digits requires.
struct Precision {
  long bits;
  long out_digits;

  explicit Precision(long bits_ = 256, long out_digits_ = 30);
};

// Arbitrary-precision real number. Thin RAII wrapper over an mpfr_t with
// per-value precision and round-to-nearest everywhere, so identical inputs
// produce bit-identical results.
class Real {
 public:
  explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(long n, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
  }
  static Real of(int n, mpfr_prec_t bits) { return of(static_cast<long>(n), bits); }
  static Real of(double d, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  // Parses a decimal string at the given precision; throws DomainError on
  // malformed input.
  static Real parse(const std::string& s, mpfr_prec_t bits);

  // 2^e at the given precision (exact).
  static Real pow2(long e, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Scientific decimal string with `digits` significant digits.
  std::string str(long digits) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator+=(long n) {
    mpfr_add_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(long n) {
    mpfr_sub_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long n) {
    mpfr_mul_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long n) {
    mpfr_div_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(const Real& a, long b) {
    Real r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real ln(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
// x^n for integer n (n may be negative).
Real pow_si(const Real& x, long n);
// x^y, real exponent.
Real pow(const Real& x, const Real& y);
// ln(x)^ell with ln(x)^0 == 1 by convention.
Real pow_ln(const Real& x, long ell);

Real const_pi(mpfr_prec_t bits);
Real const_ln2(mpfr_prec_t bits);
Real const_euler(mpfr_prec_t bits);
Real const_catalan(mpfr_prec_t bits);
Real const_e(mpfr_prec_t bits);

// Neumaier-compensated accumulator; deterministic for a fixed addition order.
class CompensatedSum {
 public:
  explicit CompensatedSum(mpfr_prec_t bits)
      : sum_(Real::of(0L, bits)), comp_(Real::of(0L, bits)) {}

  void add(const Real& x) {
    Real t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = std::move(t);
  }

  Real total() const { return sum_ + comp_; }

 private:
  Real sum_;
  Real comp_;
};

}  // namespace zseries
