#include "zseries/bench.hpp"

#include <cmath>

#include "zseries/errors.hpp"
#include "zseries/zeta.hpp"

namespace zseries {

namespace {

struct Capture {
  std::vector<ProfileRow> rows;
  long cum_inner = 0;
};

SummationLimits with_observer(const SummationLimits& lim, Capture& cap, mpfr_prec_t bits) {
  SummationLimits l = lim;
  l.outer_observer = [&cap, bits](long n, const SumReport& term, const Real& partial) {
    cap.cum_inner += term.inner_terms_total;
    cap.rows.push_back(ProfileRow{n, partial, Real::of(0L, bits), cap.cum_inner});
  };
  return l;
}

// Shift partials by the closed-form lead (final_value - last outer partial),
// fill errors vs the final value, and fit the decay ratio.
void finalize(ConvergenceProfile& p, Capture& cap, const Real& final_value, mpfr_prec_t bits) {
  if (cap.rows.empty()) return;
  Real lead = final_value - cap.rows.back().partial;
  for (ProfileRow& r : cap.rows) {
    r.partial = r.partial + lead;
    r.abs_error = abs(r.partial - final_value);
  }
  p.rows = std::move(cap.rows);
  p.outer_terms = static_cast<long>(p.rows.size());

  // Least squares on ln|err| vs n, skipping the converged plateau.
  Real floor = Real::pow2(-(bits - 16), bits) * (abs(final_value) + 1L);
  std::vector<double> xs, ys;
  for (const ProfileRow& r : p.rows) {
    if (!(r.abs_error > floor)) continue;
    double e = std::log(r.abs_error.to_double());
    if (!std::isfinite(e)) continue;
    xs.push_back(static_cast<double>(r.n));
    ys.push_back(e);
  }
  if (xs.size() >= 3) {
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    p.fitted_ratio = std::exp(slope);
  }
}

}  // namespace

ConvergenceProfile profile_stieltjes(StieltjesMethod method, long ell, const Real& a, long k,
                                     const Tolerance& tol, const Precision& prec,
                                     const SummationLimits& lim) {
  ConvergenceProfile p(prec.bits);
  p.ell = ell;
  p.a = a;
  p.k = (method == StieltjesMethod::Dyadic) ? 2 : k;
  p.method = to_string(method);
  Capture cap;
  SummationLimits l = with_observer(lim, cap, prec.bits);

  Real final_value(prec.bits);
  switch (method) {
    case StieltjesMethod::Dyadic:
      final_value = stieltjes_dyadic(ell, a, tol, prec, l).report.value;
      break;
    case StieltjesMethod::BaseK:
      final_value = stieltjes_base_k(ell, a, k, tol, prec, l).report.value;
      break;
    case StieltjesMethod::PsiTelescope: {
      if (ell != 0) throw DomainError("profile_stieltjes: psi-telescope computes ell = 0 only");
      final_value = gamma0_telescope(a, tol, prec, l).value;
      break;
    }
  }
  finalize(p, cap, final_value, prec.bits);
  return p;
}

ConvergenceProfile profile_hurwitz(const Real& s, const Real& a, const Tolerance& tol,
                                   const Precision& prec, const SummationLimits& lim) {
  ConvergenceProfile p(prec.bits);
  p.method = "hurwitz-series";
  p.s = s;
  p.a = a;
  Capture cap;
  SummationLimits l = with_observer(lim, cap, prec.bits);
  Real final_value = hurwitz_zeta_series(s, a, tol, prec, l).value;
  finalize(p, cap, final_value, prec.bits);
  return p;
}

}  // namespace zseries
