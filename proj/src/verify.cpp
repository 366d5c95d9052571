#include "zseries/verify.hpp"

#include <numeric>

#include "zseries/errors.hpp"
#include "zseries/oracle.hpp"
#include "zseries/stieltjes.hpp"
#include "zseries/zeta.hpp"

namespace zseries {

namespace {

struct Collector {
  VerifyReport report;
  long res_digits = 3;

  void add(const std::string& name, const std::string& detail, const Real& residual,
           const Real& threshold) {
    bool pass = residual <= threshold;
    report.checks.push_back(
        VerifyCheck{name, detail, residual.str(res_digits), threshold.str(res_digits), pass});
    if (!pass) ++report.failed;
  }
};

std::string fmt(const Real& x) { return x.str(6); }

// H_n from the exact rational sum num/den, rounded once.
Real harmonic(long n, mpfr_prec_t bits) {
  long den = 1;
  for (long k = 2; k <= n; ++k) den = std::lcm(den, k);
  long num = 0;
  for (long k = 1; k <= n; ++k) num += den / k;
  return Real::of(num, bits) / den;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& opts) {
  const Precision& prec = opts.prec;
  const mpfr_prec_t bits = prec.bits;
  const bool full = opts.grid == VerifyGrid::Full;
  const Tolerance& tol = opts.tol;
  Collector out;

  auto R = [&](double d) { return Real::of(d, bits); };
  auto Rs = [&](const char* s) { return Real::parse(s, bits); };

  std::vector<Real> s_grid, a_grid;
  if (full) {
    for (const char* s : {"1.25", "1.5", "2", "3", "5"}) s_grid.push_back(Rs(s));
    for (const char* a : {"0.25", "0.5", "1", "2"}) a_grid.push_back(Rs(a));
  } else {
    for (const char* s : {"2", "3"}) s_grid.push_back(Rs(s));
    for (const char* a : {"0.5", "1"}) a_grid.push_back(Rs(a));
  }

  // --- identity suite -------------------------------------------------
  for (const IdentityResidual& r : identity_suite(s_grid, a_grid, tol, prec)) {
    Real res = r.residual + abs(opts.perturb);
    out.add(r.name, "s=" + fmt(r.s) + " a=" + fmt(r.a), res, r.threshold);
  }

  // --- Stieltjes route agreement and base-k internal consistency -------
  std::vector<long> ells = full ? std::vector<long>{0, 1, 2, 3, 4, 5} : std::vector<long>{0, 1};
  std::vector<Real> sa_grid;
  if (full) {
    sa_grid = {Rs("0.5"), R(1.0), Rs("1.5"), R(2.0), const_e(bits)};
  } else {
    sa_grid = {Rs("0.5"), R(1.0)};
  }
  std::vector<long> ks = full ? std::vector<long>{2, 3, 5} : std::vector<long>{2, 3};

  for (long ell : ells) {
    for (const Real& a : sa_grid) {
      StieltjesValue dy = stieltjes_dyadic(ell, a, tol, prec);

      // dyadic vs independent oracle
      oracle::OracleValue ref = oracle::stieltjes_ref(ell, a, prec);
      out.add("stieltjes_oracle_agreement", "ell=" + std::to_string(ell) + " a=" + fmt(a),
              abs(dy.report.value - ref.value), dy.report.error_bound + ref.error_bound);

      if (ell == 0) {
        Real psi = oracle::digamma_ref(a, prec);
        out.add("digamma_consistency", "a=" + fmt(a), abs(dy.report.value + psi),
                dy.report.error_bound + Real::pow2(-(bits - 16), bits));
      }

      for (long k : ks) {
        StieltjesValue bk = stieltjes_base_k(ell, a, k, tol, prec, {}, /*cross_check=*/true);
        out.add("route_agreement",
                "ell=" + std::to_string(ell) + " a=" + fmt(a) + " k=" + std::to_string(k),
                abs(dy.report.value - bk.report.value),
                dy.report.error_bound + bk.report.error_bound);
      }
    }
  }

  // --- harmonic-number recovery: gamma_0(n+1) = gamma - H_n ------------
  {
    StieltjesValue g = stieltjes_dyadic(0, R(1.0), tol, prec);
    for (long n = 1; n <= 10; ++n) {
      StieltjesValue gn = stieltjes_dyadic(0, R(static_cast<double>(n + 1)), tol, prec);
      Real res = abs(gn.report.value - g.report.value + harmonic(n, bits));
      out.add("harmonic_recovery", "n=" + std::to_string(n), res,
              g.report.error_bound + gn.report.error_bound + Real::pow2(-(bits - 8), bits));
    }
  }

  // --- telescopes -------------------------------------------------------
  {
    SumReport eg = euler_gamma_telescope(tol, prec);
    Real psi1 = oracle::digamma_ref(R(1.0), prec);
    out.add("euler_gamma_telescope", "", abs(eg.value + psi1),
            eg.error_bound + Real::pow2(-(bits - 16), bits));
    for (const Real& a : sa_grid) {
      SumReport g0 = gamma0_telescope(a, tol, prec);
      Real psi = oracle::digamma_ref(a, prec);
      out.add("gamma0_telescope", "a=" + fmt(a), abs(g0.value + psi),
              g0.error_bound + Real::pow2(-(bits - 16), bits));
    }
  }

  // --- Hurwitz series vs Euler-Maclaurin oracle -------------------------
  for (const Real& s : s_grid) {
    for (const Real& a : a_grid) {
      SumReport ser = hurwitz_zeta_series(s, a, tol, prec);
      oracle::OracleValue ref = oracle::hurwitz_zeta_ref(s, a, prec);
      out.add("hurwitz_oracle_agreement", "s=" + fmt(s) + " a=" + fmt(a),
              abs(ser.value - ref.value), ser.error_bound + ref.error_bound);
    }
  }

  // --- Brun equivalence --------------------------------------------------
  for (const Real& s : s_grid) {
    if (!(s > 1L)) continue;
    SumReport bz = brun_zeta(s, tol, prec);
    SumReport hz = hurwitz_zeta_series(s, R(1.0), tol, prec);
    out.add("brun_equivalence", "s=" + fmt(s), abs(bz.value - hz.value),
            bz.error_bound + hz.error_bound);
  }
  {
    SumReport b1 = brun_beta(R(1.0), tol, prec);
    Real psi1 = oracle::digamma_ref(R(1.0), prec);
    out.add("brun_beta_at_1", "gamma = 1 - beta(1)", abs(1L - b1.value + psi1),
            b1.error_bound + Real::pow2(-(bits - 16), bits));
  }

  // --- Dirichlet L -------------------------------------------------------
  {
    Real s2 = R(2.0);
    SumReport cat = dirichlet_l(s2, DirichletCharacter::make(4, {1, 0, -1, 0}), tol, prec);
    out.add("dirichlet_catalan", "mod 4 nonprincipal at s=2",
            abs(cat.value - const_catalan(bits)), cat.error_bound + tol.abs_tol);

    SumReport mod2 = dirichlet_l(s2, DirichletCharacter::make(2, {1, 0}), tol, prec);
    Real pi = const_pi(bits);
    out.add("dirichlet_principal_mod2", "s=2 -> pi^2/8", abs(mod2.value - pi * pi / 8L),
            mod2.error_bound + tol.abs_tol);

    SumReport mod1 = dirichlet_l(s2, DirichletCharacter::make(1, {1}), tol, prec);
    out.add("dirichlet_principal_mod1", "s=2 -> zeta(2)", abs(mod1.value - pi * pi / 6L),
            mod1.error_bound + tol.abs_tol);

    // linearity of the assembly in the coefficient table
    SumReport la = dirichlet_l_table(s2, 4, {1, 0, -1, 0}, tol, prec);
    SumReport lb = dirichlet_l_table(s2, 4, {1, 0, 1, 0}, tol, prec);
    SumReport lsum = dirichlet_l_table(s2, 4, {2, 0, 0, 0}, tol, prec);
    out.add("dirichlet_linearity", "mod 4", abs(lsum.value - la.value - lb.value),
            la.error_bound + lb.error_bound + lsum.error_bound);
  }

  // --- Laurent consistency around s = 1 ---------------------------------
  {
    std::vector<Real> eps_grid = {Rs("1e-3")};
    if (full) eps_grid.push_back(Rs("1e-4"));
    std::vector<Real> la_grid = {Rs("0.5"), R(1.0), R(2.0)};
    for (const Real& a : la_grid) {
      Real g0 = stieltjes_dyadic(0, a, tol, prec).report.value;
      Real g1 = stieltjes_dyadic(1, a, tol, prec).report.value;
      Real g2 = stieltjes_dyadic(2, a, tol, prec).report.value;
      Real g3 = stieltjes_dyadic(3, a, tol, prec).report.value;
      for (const Real& eps : eps_grid) {
        SumReport z = hurwitz_zeta_series(1L + eps, a, tol, prec);
        Real res = abs(z.value - 1L / eps - g0 + eps * g1);
        Real thr = eps * eps * (abs(g2) / 2L) + eps * eps * eps * abs(g3) +
                   z.error_bound + 4L * tol.abs_tol;
        out.add("laurent_consistency", "a=" + fmt(a) + " eps=" + fmt(eps), res, thr);
      }
    }
  }

  return out.report;
}

}  // namespace zseries
