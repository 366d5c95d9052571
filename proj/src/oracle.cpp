#include "zseries/oracle.hpp"

#include <gmp.h>

#include <mutex>
#include <vector>

#include "zseries/errors.hpp"

namespace zseries::oracle {

namespace {

// Minimal RAII over mpq_t; only what the Bernoulli recurrence needs.
class Rat {
 public:
  Rat() { mpq_init(q_); }
  Rat(const Rat& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rat& operator=(const Rat& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  ~Rat() { mpq_clear(q_); }

  mpq_ptr raw() { return q_; }
  mpq_srcptr raw() const { return q_; }

 private:
  mpq_t q_;
};

// Cache of B_0..B_n, grown on demand. First writer wins with identical
// values, so concurrent initialization is benign under the lock.
std::mutex bernoulli_mutex;
std::vector<Rat> bernoulli_cache;

void grow_bernoulli(size_t n) {
  if (bernoulli_cache.size() > n) return;
  if (bernoulli_cache.empty()) {
    Rat one;
    mpq_set_ui(one.raw(), 1, 1);
    bernoulli_cache.push_back(one);
  }
  mpz_t binom;
  mpz_init(binom);
  Rat term, sum;
  for (size_t m = bernoulli_cache.size(); m <= n; ++m) {
    // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
    mpq_set_ui(sum.raw(), 0, 1);
    for (size_t j = 0; j < m; ++j) {
      mpz_bin_uiui(binom, m + 1, j);
      mpq_set_z(term.raw(), binom);
      mpq_mul(term.raw(), term.raw(), bernoulli_cache[j].raw());
      mpq_add(sum.raw(), sum.raw(), term.raw());
    }
    Rat bm;
    mpq_set_si(bm.raw(), -1, 1);
    mpq_mul(bm.raw(), bm.raw(), sum.raw());
    Rat div;
    mpq_set_ui(div.raw(), m + 1, 1);
    mpq_div(bm.raw(), bm.raw(), div.raw());
    bernoulli_cache.push_back(bm);
  }
  mpz_clear(binom);
}

// Derivative polynomials for G(x) = ln^ell(x)/x:
//   G^(m)(x) = (-1)^m x^-(m+1) P_m(ln x),  P_0 = L^ell,
//   P_{m+1} = (m+1) P_m - P_m'.
// Coefficients kept as exact integers (they outgrow any fixed-width type).
class DerivPolys {
 public:
  DerivPolys(long ell, long max_order) {
    polys_.reserve(max_order + 1);
    std::vector<Int> p(ell + 1);
    mpz_set_ui(p.back().z, 1);
    polys_.push_back(clone(p));
    for (long m = 0; m < max_order; ++m) {
      std::vector<Int> q(p.size());
      for (size_t i = 0; i < p.size(); ++i) {
        mpz_mul_ui(q[i].z, p[i].z, m + 1);
        if (i + 1 < p.size()) {
          mpz_t d;
          mpz_init(d);
          mpz_mul_ui(d, p[i + 1].z, i + 1);
          mpz_sub(q[i].z, q[i].z, d);
          mpz_clear(d);
        }
      }
      polys_.push_back(clone(q));
      p = std::move(q);
    }
  }

  // P_m(L) by Horner.
  Real eval(long m, const Real& L, mpfr_prec_t bits) const {
    const auto& c = polys_[m];
    Real acc(bits);
    mpfr_set_z(acc.raw(), c.back().z, MPFR_RNDN);
    for (size_t i = c.size() - 1; i-- > 0;) {
      acc *= L;
      Real ci(bits);
      mpfr_set_z(ci.raw(), c[i].z, MPFR_RNDN);
      acc += ci;
    }
    return acc;
  }

 private:
  struct Int {
    mpz_t z;
    Int() { mpz_init(z); }
    Int(const Int& o) { mpz_init_set(z, o.z); }
    Int(Int&& o) noexcept {
      mpz_init(z);
      mpz_swap(z, o.z);
    }
    Int& operator=(const Int& o) {
      if (this != &o) mpz_set(z, o.z);
      return *this;
    }
    ~Int() { mpz_clear(z); }
  };

  static std::vector<Int> clone(const std::vector<Int>& v) { return v; }

  std::vector<std::vector<Int>> polys_;
};

}  // namespace

EMConfig::EMConfig(long shift_, int bernoulli_terms_) : shift(shift_), bernoulli_terms(bernoulli_terms_) {
  if (shift < 10) throw DomainError("EMConfig: shift must be >= 10");
  if (bernoulli_terms < 2 || bernoulli_terms > 30)
    throw DomainError("EMConfig: bernoulli_terms must lie in [2, 30]");
}

Real bernoulli(long n, mpfr_prec_t bits) {
  if (n < 0) throw DomainError("bernoulli: negative index");
  std::lock_guard<std::mutex> lock(bernoulli_mutex);
  grow_bernoulli(static_cast<size_t>(n));
  Real r(bits);
  mpfr_set_q(r.raw(), bernoulli_cache[n].raw(), MPFR_RNDN);
  return r;
}

Real digamma_ref(const Real& x, const Precision& prec) {
  if (!(x > 0L)) throw DomainError("digamma_ref: requires x > 0");
  const mpfr_prec_t guard = prec.bits + 64;
  const long shift_to = std::max<long>(64, guard / 5);

  Real xs(guard);
  mpfr_set(xs.raw(), x.raw(), MPFR_RNDN);
  // psi(x) = psi(x + K) - sum_{i<K} 1/(x+i)
  CompensatedSum shift_sum(guard);
  while (xs < shift_to) {
    shift_sum.add(1L / xs);
    xs += Real::of(1L, guard);
  }

  Real acc = ln(xs) - 1L / (2L * xs);
  Real inv2 = 1L / (xs * xs);
  Real xpow = inv2;
  Real eps = Real::pow2(-(guard - 8), guard);
  Real prev_mag(guard);
  mpfr_set_inf(prev_mag.raw(), 1);
  for (long m = 1; m <= 200; ++m) {
    Real t = bernoulli(2 * m, guard) / (2 * m) * xpow;
    Real mag = abs(t);
    if (mag > prev_mag) break;  // asymptotic divergence onset
    acc -= t;
    if (mag < eps * abs(acc)) break;
    prev_mag = mag;
    xpow *= inv2;
  }
  acc -= shift_sum.total();

  Real out(prec.bits);
  mpfr_set(out.raw(), acc.raw(), MPFR_RNDN);
  return out;
}

OracleValue hurwitz_zeta_ref(const Real& s, const Real& a, const EMConfig& cfg,
                             const Precision& prec) {
  if (!(a > 0L)) throw DomainError("hurwitz_zeta_ref: requires a > 0");
  if (s == 1L) throw PolePassed("hurwitz_zeta_ref: s = 1 is the pole");
  const int M = cfg.bernoulli_terms;
  if (s <= Real::of(static_cast<long>(-2 * M + 1), prec.bits))
    throw DomainError("hurwitz_zeta_ref: s out of the Euler-Maclaurin validity range");

  const mpfr_prec_t guard = prec.bits + 64;
  const long N = cfg.shift;
  Real sg(guard), ag(guard);
  mpfr_set(sg.raw(), s.raw(), MPFR_RNDN);
  mpfr_set(ag.raw(), a.raw(), MPFR_RNDN);

  CompensatedSum direct(guard);
  for (long n = 0; n < N; ++n) direct.add(pow(ag + n, -sg));

  Real xN = ag + N;
  Real acc = direct.total();
  acc += pow(xN, 1L - sg) / (sg - 1L);
  acc += pow(xN, -sg) / 2L;

  // Correction r uses B_2r/(2r)! * s(s+1)...(s+2r-2) * xN^-(s+2r-1).
  Real poch = sg;                       // rising product up to s+2r-2
  Real fact = Real::of(2L, guard);      // (2r)!
  Real xpow = pow(xN, -sg - 1L);        // xN^-(s+2r-1)
  Real inv2 = 1L / (xN * xN);
  Real last(guard);
  for (int r = 1; r <= M; ++r) {
    Real t = bernoulli(2 * r, guard) / fact * poch * xpow;
    acc += t;
    last = abs(t);
    poch *= (sg + (2 * r - 1)) * (sg + 2 * r);
    fact *= (2 * r + 1) * (2 * r + 2);
    xpow *= inv2;
  }
  // First omitted correction, doubled for safety.
  Real rem = abs(bernoulli(2 * M + 2, guard) / fact * poch * xpow) * 2L;

  OracleValue out{Real(prec.bits), Real(prec.bits)};
  mpfr_set(out.value.raw(), acc.raw(), MPFR_RNDN);
  mpfr_set(out.error_bound.raw(), rem.raw(), MPFR_RNDU);
  return out;
}

OracleValue hurwitz_zeta_ref(const Real& s, const Real& a, const Precision& prec) {
  return hurwitz_zeta_ref(s, a, EMConfig(), prec);
}

OracleValue stieltjes_ref(long ell, const Real& a, const EMConfig& cfg, const Precision& prec) {
  if (ell < 0 || ell > 20)
    throw DomainError("stieltjes_ref: ell must lie in [0, 20]; raise precision instead");
  if (!(a > 0L)) throw DomainError("stieltjes_ref: requires a > 0");

  const mpfr_prec_t guard = prec.bits + 96;
  const long N = std::max<long>(cfg.shift, guard / 3);
  const long R_max = 44;
  DerivPolys polys(ell, 2 * R_max - 1);

  Real ag(guard);
  mpfr_set(ag.raw(), a.raw(), MPFR_RNDN);

  auto G = [&](const Real& x) { return pow_ln(x, ell) / x; };

  CompensatedSum direct(guard);
  for (long n = 0; n < N; ++n) direct.add(G(ag + n));

  Real abar = ag + N;
  Real L = ln(abar);
  Real acc = direct.total();
  acc -= pow_si(L, ell + 1) / (ell + 1);
  acc += G(abar) / 2L;

  // + sum_r B_2r/(2r)! abar^-2r P_{2r-1}(ln abar); G^(2r-1) is one-signed
  // once ln abar clears the polynomial roots, which N >= guard/3 ensures
  // for ell <= 20.
  Real fact = Real::of(2L, guard);  // (2r)!
  Real inv2 = 1L / (abar * abar);
  Real xpow = inv2;  // abar^-2r
  Real eps = Real::pow2(-(guard - 16), guard);
  Real last_corr = Real::of(0L, guard);
  Real prev_mag(guard);
  mpfr_set_inf(prev_mag.raw(), 1);
  for (long r = 1; r <= R_max; ++r) {
    Real t = bernoulli(2 * r, guard) / fact * xpow * polys.eval(2 * r - 1, L, guard);
    Real mag = abs(t);
    if (mag > prev_mag) break;
    acc += t;
    last_corr = mag;
    if (mag < eps * (abs(acc) + 1L)) break;
    prev_mag = mag;
    fact *= (2 * r + 1) * (2 * r + 2);
    xpow *= inv2;
  }
  Real rem = last_corr * 4L + Real::pow2(-(prec.bits + 24), guard) * (abs(acc) + 1L);

  OracleValue out{Real(prec.bits), Real(prec.bits)};
  mpfr_set(out.value.raw(), acc.raw(), MPFR_RNDN);
  mpfr_set(out.error_bound.raw(), rem.raw(), MPFR_RNDU);
  return out;
}

OracleValue stieltjes_ref(long ell, const Real& a, const Precision& prec) {
  return stieltjes_ref(ell, a, EMConfig(), prec);
}

}  // namespace zseries::oracle
