#include "zseries/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "zseries/errors.hpp"
#include "zseries/oracle.hpp"

namespace zseries {

namespace {

// Expected outer-term count for a target tolerance (ratio-1/k outer decay),
// used to split the error budget between inner sums and the outer tail.
long expected_outer_terms(const Tolerance& tol, long k) {
  long e = mpfr_get_exp(tol.abs_tol.raw());  // tol ~ 2^(e-1)
  double per_level = std::log2(static_cast<double>(k));
  long n = static_cast<long>(std::ceil(static_cast<double>(-e + 12) / per_level));
  return std::max<long>(n, 8);
}

// Monotonicity onset of |ln^ell(a + j/2^n)| / (j + a 2^n): the maximizer of
// ln^ell(x)/x is x = e^ell, so the magnitude decreases once
// j >= 2^n (e^ell - a). Clamped to [0, huge].
long dyadic_onset(long ell, double a, long n) {
  if (ell == 0 && a >= 1.0) return 0;
  double x = std::exp(static_cast<double>(ell)) - a;
  if (x <= 0.0) return 0;
  double onset = std::ldexp(x, static_cast<int>(std::min<long>(n, 900)));
  if (onset >= 9e17) return std::numeric_limits<long>::max() / 4;
  return static_cast<long>(onset) + 1;
}

Real eps_for(const Real& scale, const Precision& prec) {
  return Real::pow2(-(prec.bits - 8), prec.bits) * (abs(scale) + 1L);
}

// ---------------------------------------------------------------------------
// Base-k machinery. A level-n inner sum is sum_{j>=jstart} Phi(j) with
//   Phi(t) = sum_p w_p G(a + t b + o_p),   G(x) = ln^ell(x)/x,  b = k^-n,
// where the weights satisfy sum_p w_p = 0 so the combination is summable.
// Groups are summed directly up to an adaptive J; the tail is evaluated
// from the exact antiderivative H = ln^(ell+1)/(ell+1) plus endpoint and
// derivative corrections:
//   sum_{j>J} Phi(j) = int_{J+1}^inf Phi dt + Phi(J+1)/2
//                      - sum_r B_2r/(2r)! Phi^(2r-1)(J+1) + remainder,
//   int_T^inf Phi dt = -(1/b) sum_p w_p H(a + T b + o_p).
// The remainder is estimated as the last derivative correction times a
// safety factor; the route-agreement and oracle checks in the test suite
// exercise it end to end.

// B_2r/(2r)! for r = 1..5.
void bernoulli_over_factorial(std::vector<Real>& out, mpfr_prec_t bits) {
  static const long num[5] = {1, -1, 1, -1, 1};
  static const long den[5] = {12, 720, 30240, 1209600, 47900160};
  out.clear();
  for (int i = 0; i < 5; ++i) out.push_back(Real::of(num[i], bits) / den[i]);
}

// Derivative polynomials of G: G^(m)(x) = (-1)^m x^-(m+1) P_m(ln x);
// P_0 = L^ell, P_{m+1} = (m+1) P_m - P_m'. Coefficients are exact
// integers, held in Reals (far below the exactness limit at >= 64 bits
// for the orders used here).
std::vector<std::vector<Real>> deriv_polys(long ell, long max_order, mpfr_prec_t bits) {
  std::vector<std::vector<Real>> polys;
  std::vector<Real> p(ell + 1, Real::of(0L, bits));
  p.back() = Real::of(1L, bits);
  polys.push_back(p);
  for (long m = 0; m < max_order; ++m) {
    std::vector<Real> q(p.size(), Real::of(0L, bits));
    for (size_t i = 0; i < p.size(); ++i) {
      q[i] = p[i] * (m + 1);
      if (i + 1 < p.size()) q[i] -= p[i + 1] * static_cast<long>(i + 1);
    }
    polys.push_back(q);
    p = std::move(q);
  }
  return polys;
}

Real horner(const std::vector<Real>& coeff, const Real& x, mpfr_prec_t bits) {
  Real acc = Real::of(0L, bits);
  for (size_t i = coeff.size(); i-- > 0;) {
    acc *= x;
    acc += coeff[i];
  }
  return acc;
}

struct WeightedComb {
  std::vector<Real> offsets;  // offsets in x
  std::vector<Real> weights;  // sum to zero
};

struct GroupTail {
  Real value;
  Real bound;
};

class BaseKLevel {
 public:
  BaseKLevel(long ell, const Real& a, long k, const Precision& prec)
      : ell_(ell), a_(a), k_(k), prec_(prec),
        polys_(deriv_polys(ell, 2 * kDerivOrders, prec.bits)) {
    bernoulli_over_factorial(b2r_, prec.bits);
  }

  Real G(const Real& x) const { return pow_ln(x, ell_) / x; }
  Real H(const Real& x) const { return pow_ln(x, ell_ + 1) / (ell_ + 1); }

  Real phi(const WeightedComb& c, const Real& x) const {
    CompensatedSum s(prec_.bits);
    for (size_t p = 0; p < c.offsets.size(); ++p) s.add(c.weights[p] * G(x + c.offsets[p]));
    return s.total();
  }

  // sum_{j>J} Phi(j) for x(t) = a + t b.
  GroupTail tail(const WeightedComb& c, const Real& b, long J) const {
    const mpfr_prec_t bits = prec_.bits;
    Real xT = a_ + (J + 1) * b;
    CompensatedSum integral(bits);
    for (size_t p = 0; p < c.offsets.size(); ++p)
      integral.add(c.weights[p] * H(xT + c.offsets[p]));
    Real acc = -integral.total() / b + phi(c, xT) / 2L;

    Real bpow = b;  // b^(2r-1)
    Real last = Real::of(0L, bits);
    for (int r = 1; r <= kDerivOrders; ++r) {
      const long m = 2 * r - 1;
      CompensatedSum d(bits);
      for (size_t p = 0; p < c.offsets.size(); ++p) {
        Real y = xT + c.offsets[p];
        Real gm = horner(polys_[m], ln(y), bits) / pow_si(y, m + 1);
        if (m % 2 != 0) gm = -gm;
        d.add(c.weights[p] * gm);
      }
      Real corr = -b2r_[r - 1] * bpow * d.total();
      acc += corr;
      last = abs(corr);
      bpow *= b * b;
    }
    Real bound = last * 4L + eps_for(acc, prec_);
    return GroupTail{std::move(acc), std::move(bound)};
  }

  // Full level-n inner sum from jstart with adaptive direct length.
  SumReport group_sum(const WeightedComb& c, const Real& b, long jstart,
                      const Tolerance& inner_tol, const SummationLimits& lim) const {
    const mpfr_prec_t bits = prec_.bits;
    CompensatedSum direct(bits);
    long evals = 0;
    long jdone = jstart - 1;
    long J = 48;
    GroupTail t{Real::of(0L, bits), Real::of(0L, bits)};
    const long group_cost = static_cast<long>(c.offsets.size());
    for (;;) {
      for (long j = jdone + 1; j <= J; ++j) {
        direct.add(phi(c, a_ + j * b));
        evals += group_cost;
      }
      jdone = J;
      t = tail(c, b, J);
      if (t.bound <= inner_tol.abs_tol) break;
      if (evals + 4 * J * group_cost > lim.max_inner_terms)
        throw NonConvergence("base-k inner sum: term cap reached before the group tail met tolerance");
      J *= 4;
    }
    SumReport rep(bits);
    rep.value = direct.total() + t.value;
    rep.error_bound = t.bound;
    rep.inner_terms_total = evals;
    return rep;
  }

  // Grouped form: level term is
  //   -b [ (1/k) sum_{m=1}^{k-1} G(a + m delta) + sum_{j>=1} Phi_b(j) ],
  //   Phi_b = (1/k) sum_{m=0}^{k-1} G(x + m delta) - G(x).
  SumReport level_grouped(long n, const Tolerance& inner_tol, const SummationLimits& lim) const {
    const mpfr_prec_t bits = prec_.bits;
    Real b = pow_si(Real::of(k_, bits), -n);
    Real delta = b / k_;
    WeightedComb c;
    Real inv_k = Real::of(1L, bits) / k_;
    for (long m = 0; m < k_; ++m) {
      c.offsets.push_back(delta * m);
      c.weights.push_back(m == 0 ? inv_k - 1L : inv_k);
    }
    SumReport jsum = group_sum(c, b, 1, inner_tol, lim);
    CompensatedSum msum(bits);
    for (long m = 1; m < k_; ++m) msum.add(G(a_ + delta * m));
    SumReport rep(bits);
    rep.value = -b * (msum.total() * inv_k + jsum.value);
    rep.error_bound = abs(b) * jsum.error_bound + eps_for(rep.value, prec_);
    rep.inner_terms_total = jsum.inner_terms_total + (k_ - 1);
    return rep;
  }

  // Trapezoidal form: level term is -b sum_{j>=0} Phi_a(j),
  //   Phi_a = (1/2)(1/k - 1)[G(x) + G(x + b)] + (1/k) sum_{m=1}^{k-1} G(x + m delta).
  SumReport level_trapezoid(long n, const Tolerance& inner_tol, const SummationLimits& lim) const {
    const mpfr_prec_t bits = prec_.bits;
    Real b = pow_si(Real::of(k_, bits), -n);
    Real delta = b / k_;
    Real inv_k = Real::of(1L, bits) / k_;
    Real half_edge = (inv_k - 1L) / 2L;
    WeightedComb c;
    c.offsets.push_back(Real::of(0L, bits));
    c.weights.push_back(half_edge);
    for (long m = 1; m < k_; ++m) {
      c.offsets.push_back(delta * m);
      c.weights.push_back(inv_k);
    }
    c.offsets.push_back(b);
    c.weights.push_back(half_edge);
    SumReport jsum = group_sum(c, b, 0, inner_tol, lim);
    SumReport rep(bits);
    rep.value = -b * jsum.value;
    rep.error_bound = abs(b) * jsum.error_bound + eps_for(rep.value, prec_);
    rep.inner_terms_total = jsum.inner_terms_total;
    return rep;
  }

 private:
  static constexpr int kDerivOrders = 5;

  long ell_;
  Real a_;
  long k_;
  Precision prec_;
  std::vector<std::vector<Real>> polys_;
  std::vector<Real> b2r_;
};

}  // namespace

std::string to_string(StieltjesMethod m) {
  switch (m) {
    case StieltjesMethod::Dyadic: return "dyadic";
    case StieltjesMethod::BaseK: return "base-k";
    case StieltjesMethod::PsiTelescope: return "psi-telescope";
  }
  return "?";
}

StieltjesQuery::StieltjesQuery(long ell_, Real a_, StieltjesMethod method_, long k_)
    : ell(ell_), a(std::move(a_)), method(method_), k(k_) {
  if (ell < 0) throw DomainError("StieltjesQuery: ell must be >= 0");
  if (!(a > 0L)) throw DomainError("StieltjesQuery: requires a > 0");
  if (method == StieltjesMethod::BaseK && k < 2) throw DomainError("StieltjesQuery: k must be >= 2");
  if (method == StieltjesMethod::PsiTelescope && ell != 0)
    throw DomainError("StieltjesQuery: psi-telescope computes ell = 0 only");
}

StieltjesValue stieltjes_dyadic(long ell, const Real& a, const Tolerance& tol,
                                const Precision& prec, const SummationLimits& lim) {
  StieltjesQuery q(ell, a, StieltjesMethod::Dyadic);
  const mpfr_prec_t bits = prec.bits;
  const double a_d = a.to_double();

  Real lead = pow_ln(a, ell) / a - pow_ln(a, ell + 1) / (ell + 1);
  const long nhat = expected_outer_terms(tol, 2);
  Tolerance inner_tol(tol.abs_tol / (2 * nhat));

  auto outer = [&](long idx) {
    const long n = idx + 1;
    Real inv = Real::pow2(-n, bits);
    Real c = a * Real::pow2(n, bits);
    auto term = [&, c, inv](long j) {
      Real t = pow_ln(a + inv * j, ell) / (c + j);
      return (j % 2 != 0) ? -t : t;
    };
    return sum_alternating(term, inner_tol, dyadic_onset(ell, a_d, n), prec, lim);
  };
  SumReport outer_rep = sum_geometric_outer(outer, tol, prec, lim);

  StieltjesValue out{q, SumReport(bits)};
  out.report = outer_rep;
  out.report.value = lead + outer_rep.value;
  out.report.error_bound = outer_rep.error_bound + eps_for(lead, prec);
  if (out.report.error_bound > tol.abs_tol)
    throw NonConvergence("stieltjes_dyadic: certified bound exceeds requested tolerance");
  return out;
}

StieltjesValue stieltjes_base_k(long ell, const Real& a, long k, const Tolerance& tol,
                                const Precision& prec, const SummationLimits& lim,
                                bool cross_check) {
  StieltjesQuery q(ell, a, StieltjesMethod::BaseK, k);
  const mpfr_prec_t bits = prec.bits;
  BaseKLevel level(ell, a, k, prec);

  const long nhat = expected_outer_terms(tol, k);
  Tolerance inner_tol(tol.abs_tol / (2 * nhat));

  Real lead = pow_ln(a, ell) / a - pow_ln(a, ell + 1) / (ell + 1);
  SumReport outer_rep = sum_geometric_outer(
      [&](long n) { return level.level_grouped(n, inner_tol, lim); }, tol, prec, lim);

  StieltjesValue out{q, SumReport(bits)};
  out.report = outer_rep;
  out.report.value = lead + outer_rep.value;
  out.report.error_bound = outer_rep.error_bound + eps_for(lead, prec);
  if (out.report.error_bound > tol.abs_tol)
    throw NonConvergence("stieltjes_base_k: certified bound exceeds requested tolerance");

  if (cross_check) {
    Real lead_a = pow_ln(a, ell) / (2L * a) - pow_ln(a, ell + 1) / (ell + 1);
    SumReport alt = sum_geometric_outer(
        [&](long n) { return level.level_trapezoid(n, inner_tol, lim); }, tol, prec, lim);
    Real va = lead_a + alt.value;
    Real combined = out.report.error_bound + alt.error_bound + eps_for(va, prec);
    if (abs(va - out.report.value) > combined)
      throw CrossCheckMismatch("stieltjes_base_k: grouped and trapezoidal forms disagree: |" +
                               out.report.value.str(20) + " - " + va.str(20) +
                               "| > " + combined.str(6));
  }
  return out;
}

namespace {

// Telescoping digamma sum: base + sum_{n>=0} f(n) where f decays with
// ratio 1/2; each term is exact up to the reference digamma's error.
SumReport psi_telescope_sum(const std::function<Real(long)>& f, const Tolerance& tol,
                            const Precision& prec, const SummationLimits& lim) {
  const mpfr_prec_t bits = prec.bits;
  Real term_err = Real::pow2(-(prec.bits - 14), bits);
  auto outer = [&](long n) {
    SumReport r(bits);
    r.value = f(n);
    r.error_bound = term_err;
    r.inner_terms_total = 1;
    return r;
  };
  return sum_geometric_outer(outer, tol, prec, lim);
}

}  // namespace

SumReport euler_gamma_telescope(const Tolerance& tol, const Precision& prec,
                                const SummationLimits& lim) {
  const mpfr_prec_t bits = prec.bits;
  Real l2 = const_ln2(bits);
  Real half = Real::of(0.5, bits);

  auto second_form = [&](long n) {
    Real p0 = oracle::digamma_ref(Real::pow2(n, bits), prec);
    Real p1 = oracle::digamma_ref(Real::pow2(n + 1, bits), prec);
    return p1 - p0 - l2;
  };
  auto first_form = [&](long n) {
    Real x = Real::pow2(n, bits);
    return half * (oracle::digamma_ref(x + half, prec) - oracle::digamma_ref(x, prec));
  };

  SumReport main = psi_telescope_sum(second_form, tol, prec, lim);
  SumReport check = psi_telescope_sum(first_form, tol, prec, lim);
  Real gap = abs(main.value - check.value);
  if (gap > main.error_bound + check.error_bound + tol.abs_tol)
    throw CrossCheckMismatch("euler_gamma_telescope: the two telescoping forms disagree by " +
                             gap.str(6));
  return main;
}

SumReport gamma0_telescope(const Real& a, const Tolerance& tol, const Precision& prec,
                           const SummationLimits& lim) {
  if (!(a > 0L)) throw DomainError("gamma0_telescope: requires a > 0");
  const mpfr_prec_t bits = prec.bits;
  Real l2 = const_ln2(bits);
  auto f = [&](long n) {
    Real x0 = a * Real::pow2(n, bits);
    Real x1 = a * Real::pow2(n + 1, bits);
    return oracle::digamma_ref(x1, prec) - oracle::digamma_ref(x0, prec) - l2;
  };
  SumReport rep = psi_telescope_sum(f, tol, prec, lim);
  rep.value = rep.value - ln(a);
  rep.error_bound = rep.error_bound + eps_for(ln(a), prec);
  return rep;
}

}  // namespace zseries
