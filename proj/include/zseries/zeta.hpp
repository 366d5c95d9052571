#pragma once

#include <string>
#include <vector>

#include "zseries/summation.hpp"

namespace zseries {

// Arguments of the Hurwitz zeta double series; the series is proven for
// s > 1 only, and s within 1e-6 of the pole is rejected.
struct ZetaArgs {
  Real s;
  Real a;

  ZetaArgs(Real s_, Real a_);
};

// zeta(s, a) = a^-s + a^(1-s)/(s-1)
//              + sum_{n>=1} 2^(n(s-1)) sum_{j>=1} (-1)^j (j + a 2^n)^-s.
// Inner sums are alternating and monotone from the first term; the outer
// terms decay with ratio ~ 1/2.
SumReport hurwitz_zeta_series(const ZetaArgs& args, const Tolerance& tol,
                              const Precision& prec, const SummationLimits& lim = {});
SumReport hurwitz_zeta_series(const Real& s, const Real& a, const Tolerance& tol,
                              const Precision& prec, const SummationLimits& lim = {});

// Brun's beta(s) = sum_{n,j>=1} (-1)^(j-1) 2^(n(s-1)) / (2^n + j)^s for
// s >= 1 (the series still converges at s = 1, where 1 - beta(1) = gamma).
SumReport brun_beta(const Real& s, const Tolerance& tol, const Precision& prec,
                    const SummationLimits& lim = {});

// zeta(s) = 1/(s-1) + 1 - beta(s), s > 1.
SumReport brun_zeta(const Real& s, const Tolerance& tol, const Precision& prec,
                    const SummationLimits& lim = {});

// eta-type alternating sum sum_{j>=1} (-1)^j (j+1)^-s, used by the
// identity suite.
SumReport alternating_eta_sum(const Real& s, const Tolerance& tol, const Precision& prec,
                              const SummationLimits& lim = {});

// One named residual of the identity suite; pass means residual <= threshold.
struct IdentityResidual {
  std::string name;
  Real s;
  Real a;
  Real residual;
  Real threshold;
  bool pass;
};

// Residuals of the identity suite over a grid:
//   (i)  zeta(s, 1/2) - (2^s - 1) zeta(s)
//   (ii) central-difference d/da zeta(s, a) + s zeta(s+1, a)
//  (iii) alternating eta sum vs (1 - 2^(1-s)) zeta(s) - 1
//   (iv) zeta(s, a) - zeta(s, a+1) - a^-s
std::vector<IdentityResidual> identity_suite(const std::vector<Real>& s_grid,
                                             const std::vector<Real>& a_grid,
                                             const Tolerance& tol, const Precision& prec,
                                             const SummationLimits& lim = {});

// Real Dirichlet character table chi(1..m); values in {-1, 0, +1}, zero
// exactly on residues sharing a factor with the modulus, completely
// multiplicative on the rest.
struct DirichletCharacter {
  long modulus;
  std::vector<int> values;
  bool is_principal;

  static DirichletCharacter make(long modulus, std::vector<int> values);

  int chi(long n) const { return values[static_cast<size_t>((n - 1) % modulus)]; }
};

// L(s, chi) = m^-s sum_{r=1}^m chi(r) zeta(s, r/m), s > 1.
SumReport dirichlet_l(const Real& s, const DirichletCharacter& chi, const Tolerance& tol,
                      const Precision& prec, const SummationLimits& lim = {});

// Same assembly for an arbitrary integer coefficient table (no character
// axioms); the L assembly is linear in the table.
SumReport dirichlet_l_table(const Real& s, long modulus, const std::vector<int>& table,
                            const Tolerance& tol, const Precision& prec,
                            const SummationLimits& lim = {});

}  // namespace zseries
