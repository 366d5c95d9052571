#pragma once

#include <string>
#include <vector>

#include "zseries/summation.hpp"

namespace zseries {

enum class VerifyGrid { Small, Full };

struct VerifyCheck {
  std::string name;
  std::string detail;    // offending parameters, fixed formatting
  std::string residual;  // decimal string
  std::string threshold;
  bool pass;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  long failed = 0;
  bool all_pass() const { return failed == 0; }
};

struct VerifyOptions {
  VerifyGrid grid = VerifyGrid::Small;
  Precision prec;
  Tolerance tol;
  // Injected systematic residual; added to every identity residual as a
  // self-test of the harness (nonzero values above tol must fail).
  Real perturb;

  explicit VerifyOptions(const Precision& p)
      : prec(p), tol(Real::parse("1e-12", p.bits)), perturb(Real::of(0L, p.bits)) {}
};

// Identity suite, route agreement, and oracle cross-checks over the grid.
VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace zseries
