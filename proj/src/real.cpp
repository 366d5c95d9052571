#include "zseries/real.hpp"

#include <cmath>
#include <vector>

#include "zseries/errors.hpp"

namespace zseries {

Precision::Precision(long bits_, long out_digits_) : bits(bits_), out_digits(out_digits_) {
  if (bits < 64) throw DomainError("Precision: bits must be >= 64");
  if (out_digits < 1) throw DomainError("Precision: out_digits must be >= 1");
  const long needed = static_cast<long>(std::ceil(out_digits * std::log2(10.0))) + 32;
  if (bits < needed)
    throw DomainError("Precision: bits too small for requested output digits (need " +
                      std::to_string(needed) + ")");
}

Real Real::parse(const std::string& s, mpfr_prec_t bits) {
  Real r(bits);
  if (s.empty() || mpfr_set_str(r.raw(), s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  return r;
}

std::string Real::str(long digits) const {
  if (digits < 1) digits = 1;
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(digits - 1), v_);
  return std::string(buf.data());
}

Real abs(const Real& x) {
  Real r(x.prec());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real ln(const Real& x) {
  Real r(x.prec());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.prec());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.prec());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow_si(const Real& x, long n) {
  Real r(x.prec());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow_ln(const Real& x, long ell) {
  if (ell == 0) return Real::of(1L, x.prec());
  if (ell == 1) return ln(x);
  return pow_si(ln(x), ell);
}

Real const_pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real const_ln2(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

Real const_euler(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

Real const_catalan(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_catalan(r.raw(), MPFR_RNDN);
  return r;
}

Real const_e(mpfr_prec_t bits) {
  Real one = Real::of(1L, bits);
  return exp(one);
}

}  // namespace zseries
