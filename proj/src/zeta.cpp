#include "zseries/zeta.hpp"

#include <cmath>
#include <numeric>

#include "zseries/errors.hpp"
#include "zseries/stieltjes.hpp"

namespace zseries {

namespace {

long expected_outer_terms(const Tolerance& tol) {
  long e = mpfr_get_exp(tol.abs_tol.raw());
  return std::max<long>(-e + 12, 8);
}

Real eps_for(const Real& scale, const Precision& prec) {
  return Real::pow2(-(prec.bits - 8), prec.bits) * (abs(scale) + 1L);
}

// Shared core: sum_{n>=1} 2^(n(s-1)) * inner_n where inner_n is the
// alternating sum over j of (j + a 2^n)^-s. first_sign is the sign of the
// j = 1 term.
SumReport dyadic_power_series(const Real& s, const Real& a, int first_sign,
                              const Tolerance& tol, const Precision& prec,
                              const SummationLimits& lim) {
  const mpfr_prec_t bits = prec.bits;
  const long nhat = expected_outer_terms(tol);
  Real inner_budget = tol.abs_tol / (2 * nhat);
  Real two = Real::of(2L, bits);

  auto outer = [&](long idx) {
    const long n = idx + 1;
    Real c = a * Real::pow2(n, bits);
    Real mult = pow(two, Real::of(n, bits) * (s - 1L));
    auto term = [&, c](long j) {
      Real t = pow(c + j, -s);
      bool negate = (first_sign > 0) ? (j % 2 == 0) : (j % 2 != 0);
      return negate ? -t : t;
    };
    Tolerance inner_tol(inner_budget / mult);
    SumReport r = sum_alternating(term, inner_tol, 0, prec, lim);
    r.value = r.value * mult;
    r.error_bound = r.error_bound * mult;
    return r;
  };
  return sum_geometric_outer(outer, tol, prec, lim);
}

}  // namespace

ZetaArgs::ZetaArgs(Real s_, Real a_) : s(std::move(s_)), a(std::move(a_)) {
  if (!(a > 0L)) throw DomainError("ZetaArgs: requires a > 0");
  if (!(s > 1L)) throw DomainError("ZetaArgs: the series requires s > 1");
  if (abs(s - 1L) < Real::parse("1e-6", s.prec()))
    throw DomainError("ZetaArgs: s too close to the pole; use the Stieltjes expansion instead");
}

SumReport hurwitz_zeta_series(const ZetaArgs& args, const Tolerance& tol,
                              const Precision& prec, const SummationLimits& lim) {
  const Real& s = args.s;
  const Real& a = args.a;

  Real lead = pow(a, -s) + pow(a, 1L - s) / (s - 1L);
  SumReport rep = dyadic_power_series(s, a, -1, tol, prec, lim);
  rep.value = lead + rep.value;
  rep.error_bound = rep.error_bound + eps_for(lead, prec);
  if (rep.error_bound > tol.abs_tol)
    throw NonConvergence("hurwitz_zeta_series: certified bound exceeds requested tolerance");
  return rep;
}

SumReport hurwitz_zeta_series(const Real& s, const Real& a, const Tolerance& tol,
                              const Precision& prec, const SummationLimits& lim) {
  return hurwitz_zeta_series(ZetaArgs(s, a), tol, prec, lim);
}

SumReport brun_beta(const Real& s, const Tolerance& tol, const Precision& prec,
                    const SummationLimits& lim) {
  if (!(s >= 1L)) throw DomainError("brun_beta: requires s >= 1");
  Real one = Real::of(1L, prec.bits);
  SumReport rep = dyadic_power_series(s, one, +1, tol, prec, lim);
  if (rep.error_bound > tol.abs_tol)
    throw NonConvergence("brun_beta: certified bound exceeds requested tolerance");
  return rep;
}

SumReport brun_zeta(const Real& s, const Tolerance& tol, const Precision& prec,
                    const SummationLimits& lim) {
  if (!(s > 1L)) throw DomainError("brun_zeta: requires s > 1");
  SumReport rep = brun_beta(s, tol, prec, lim);
  rep.value = 1L / (s - 1L) + 1L - rep.value;
  return rep;
}

SumReport alternating_eta_sum(const Real& s, const Tolerance& tol, const Precision& prec,
                              const SummationLimits& lim) {
  auto term = [&](long j) {
    Real t = pow(Real::of(j + 1, prec.bits), -s);
    return (j % 2 != 0) ? -t : t;
  };
  return sum_alternating(term, tol, 0, prec, lim);
}

std::vector<IdentityResidual> identity_suite(const std::vector<Real>& s_grid,
                                             const std::vector<Real>& a_grid,
                                             const Tolerance& tol, const Precision& prec,
                                             const SummationLimits& lim) {
  const mpfr_prec_t bits = prec.bits;
  std::vector<IdentityResidual> out;
  Tolerance eval_tol(tol.abs_tol / 16L);
  Real two = Real::of(2L, bits);
  Real half = Real::of(0.5, bits);

  auto push = [&](const std::string& name, const Real& s, const Real& a, Real residual,
                  Real threshold) {
    bool pass = residual <= threshold;
    out.push_back(IdentityResidual{name, s, a, std::move(residual), std::move(threshold), pass});
  };

  for (const Real& s : s_grid) {
    Real zs = hurwitz_zeta_series(s, Real::of(1L, bits), eval_tol, prec, lim).value;

    // (i) zeta(s, 1/2) = (2^s - 1) zeta(s)
    Real lhs = hurwitz_zeta_series(s, half, eval_tol, prec, lim).value;
    Real r1 = abs(lhs - (pow(two, s) - 1L) * zs);
    push("half_identity", s, half, r1, tol.abs_tol);

    // (iii) sum (-1)^j (j+1)^-s = (1 - 2^(1-s)) zeta(s) - 1
    Real eta = alternating_eta_sum(s, eval_tol, prec, lim).value;
    Real r3 = abs(eta - ((1L - pow(two, 1L - s)) * zs - 1L));
    push("eta_identity", s, Real::of(1L, bits), r3, tol.abs_tol);

    for (const Real& a : a_grid) {
      Real za = hurwitz_zeta_series(s, a, eval_tol, prec, lim).value;

      // (ii) d/da zeta(s,a) = -s zeta(s+1,a), central difference with
      // h chosen so h^2 <= tol; the difference quotient needs evaluations
      // at tolerance ~ tol * h.
      long tol_exp = mpfr_get_exp(tol.abs_tol.raw());
      long hexp = std::max<long>(30, (-tol_exp) / 2 + 2);
      Real h = Real::pow2(-hexp, bits);
      Tolerance cd_tol(tol.abs_tol * h / 8L);
      Real plus = hurwitz_zeta_series(s, a + h, cd_tol, prec, lim).value;
      Real minus = hurwitz_zeta_series(s, a - h, cd_tol, prec, lim).value;
      Real cd = (plus - minus) / (2L * h);
      Real zs1 = hurwitz_zeta_series(s + 1L, a, cd_tol, prec, lim).value;
      Real r2 = abs(cd + s * zs1);
      // The quotient carries an h^2 f'''/6 truncation term with
      // f''' = -s(s+1)(s+2) zeta(s+3, a); allow for it on top of tol.
      Real zs3 = hurwitz_zeta_series(s + 3L, a, eval_tol, prec, lim).value;
      Real curvature = h * h * s * (s + 1L) * (s + 2L) * abs(zs3) / 6L;
      push("derivative_identity", s, a, r2, tol.abs_tol + 2L * curvature);

      // (iv) zeta(s, a) - zeta(s, a+1) = a^-s
      Real za1 = hurwitz_zeta_series(s, a + 1L, eval_tol, prec, lim).value;
      Real r4 = abs(za - za1 - pow(a, -s));
      push("hurwitz_recurrence", s, a, r4, tol.abs_tol);
    }
  }
  return out;
}

DirichletCharacter DirichletCharacter::make(long modulus, std::vector<int> values) {
  if (modulus < 1) throw DomainError("DirichletCharacter: modulus must be >= 1");
  if (modulus > 10000)
    throw DomainError("DirichletCharacter: modulus above 10^4 is impractical here "
                      "(quadratic table validation, one Hurwitz evaluation per unit residue)");
  if (static_cast<long>(values.size()) != modulus)
    throw DomainError("DirichletCharacter: table must have exactly modulus entries");
  for (long r = 1; r <= modulus; ++r) {
    int v = values[r - 1];
    if (v < -1 || v > 1)
      throw DomainError("DirichletCharacter: real characters take values in {-1, 0, +1}");
    bool coprime = std::gcd(r, modulus) == 1;
    if (coprime && v == 0)
      throw DomainError("DirichletCharacter: must be nonzero on residues coprime to the modulus");
    if (!coprime && v != 0)
      throw DomainError("DirichletCharacter: must vanish on residues sharing a factor with the modulus");
  }
  if (values[0] != 1) throw DomainError("DirichletCharacter: chi(1) must be 1");
  for (long u = 1; u <= modulus; ++u) {
    if (std::gcd(u, modulus) != 1) continue;
    for (long v = u; v <= modulus; ++v) {
      if (std::gcd(v, modulus) != 1) continue;
      long w = (u * v) % modulus;
      if (w == 0) w = modulus;
      if (values[w - 1] != values[u - 1] * values[v - 1])
        throw DomainError("DirichletCharacter: table is not completely multiplicative");
    }
  }
  bool principal = true;
  for (long r = 1; r <= modulus; ++r)
    if (std::gcd(r, modulus) == 1 && values[r - 1] != 1) principal = false;
  return DirichletCharacter{modulus, std::move(values), principal};
}

SumReport dirichlet_l_table(const Real& s, long modulus, const std::vector<int>& table,
                            const Tolerance& tol, const Precision& prec,
                            const SummationLimits& lim) {
  if (modulus < 1 || static_cast<long>(table.size()) != modulus)
    throw DomainError("dirichlet_l_table: table must have exactly modulus entries");
  const mpfr_prec_t bits = prec.bits;
  long nonzero = 0;
  for (int v : table)
    if (v != 0) ++nonzero;

  SumReport rep(bits);
  Real m_pow = pow(Real::of(modulus, bits), -s);
  if (nonzero == 0) return rep;

  // Split the budget across the nonzero Hurwitz terms, undoing the m^-s
  // scaling applied at the end.
  Tolerance term_tol(tol.abs_tol / (2 * nonzero) / m_pow);
  CompensatedSum acc(bits);
  CompensatedSum bound(bits);
  for (long r = 1; r <= modulus; ++r) {
    int coeff = table[r - 1];
    if (coeff == 0) continue;
    SumReport zr = hurwitz_zeta_series(s, Real::of(r, bits) / modulus, term_tol, prec, lim);
    acc.add(Real::of(static_cast<long>(coeff), bits) * zr.value);
    bound.add(abs(Real::of(static_cast<long>(coeff), bits)) * zr.error_bound);
    rep.outer_terms += zr.outer_terms;
    rep.inner_terms_total += zr.inner_terms_total;
  }
  rep.value = m_pow * acc.total();
  rep.error_bound = m_pow * bound.total() + eps_for(rep.value, prec);
  if (rep.error_bound > tol.abs_tol)
    throw NonConvergence("dirichlet_l: certified bound exceeds requested tolerance");
  return rep;
}

SumReport dirichlet_l(const Real& s, const DirichletCharacter& chi, const Tolerance& tol,
                      const Precision& prec, const SummationLimits& lim) {
  return dirichlet_l_table(s, chi.modulus, chi.values, tol, prec, lim);
}

}  // namespace zseries
