// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] must point at the CLI binary (used by the bench and
// determinism criteria).

#include <array>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "zseries/bench.hpp"
#include "zseries/errors.hpp"
#include "zseries/oracle.hpp"
#include "zseries/stieltjes.hpp"
#include "zseries/verify.hpp"
#include "zseries/zeta.hpp"

using namespace zseries;

namespace {

const Precision kPrec(256, 30);
std::string g_cli;

Real R(const char* s) { return Real::parse(s, kPrec.bits); }
Real R(long n) { return Real::of(n, kPrec.bits); }

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cmd(const std::string& args) {
  std::string cmd = g_cli + " " + args;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  CmdResult res{-1, {}};
  if (!pipe) return res;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe.release());
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return res;
}

struct Criterion {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (detail.empty()) detail = what;
  }
};

// 1. gamma via three routes agrees with -psi(1) to 1e-12.
Criterion criterion1() {
  Criterion c;
  Tolerance tol(R("1e-12"));
  Real gamma = -oracle::digamma_ref(R(1L), kPrec);
  Real cap = R("1e-12");

  Real dy = stieltjes_dyadic(0, R(1L), tol, kPrec).report.value;
  c.require(abs(dy - gamma) <= cap, "dyadic route off by " + abs(dy - gamma).str(3));

  Real tel = euler_gamma_telescope(tol, kPrec).value;
  c.require(abs(tel - gamma) <= cap, "telescope route off by " + abs(tel - gamma).str(3));

  Real brun = 1L - brun_beta(R(1L), tol, kPrec).value;
  c.require(abs(brun - gamma) <= cap, "brun route off by " + abs(brun - gamma).str(3));

  c.note("max deviation " +
         std::max({abs(dy - gamma), abs(tel - gamma), abs(brun - gamma)},
                  [](const Real& x, const Real& y) { return x < y; })
             .str(3));
  return c;
}

// 2. Stieltjes grid vs oracle to 1e-10, with pinned leading digits.
Criterion criterion2() {
  Criterion c;
  Tolerance tol(R("1e-12"));
  Real cap = R("1e-10");
  Real worst = R(0L);
  for (long ell = 0; ell <= 5; ++ell) {
    for (const char* as : {"0.5", "1", "1.5", "2"}) {
      Real a = R(as);
      Real dy = stieltjes_dyadic(ell, a, tol, kPrec).report.value;
      Real ref = oracle::stieltjes_ref(ell, a, kPrec).value;
      Real d = abs(dy - ref);
      if (d > worst) worst = d;
      c.require(d <= cap, "ell=" + std::to_string(ell) + " a=" + std::string(as) +
                              " off by " + d.str(3));
    }
  }
  Real g1 = stieltjes_dyadic(1, R(1L), tol, kPrec).report.value;
  c.require(abs(g1 - R("-0.0728158454836767248605863758749")) <= R("1e-11"),
            "gamma_1(1) does not begin -0.07281584548");
  Real g2 = stieltjes_dyadic(2, R(1L), tol, kPrec).report.value;
  c.require(abs(g2 - R("-0.0096903631928723184845303860352")) <= R("1e-11"),
            "gamma_2(1) does not begin -0.00969036319");
  c.note("worst grid deviation " + worst.str(3));
  return c;
}

// 3. Base-k equivalence incl. internal form cross-check.
Criterion criterion3() {
  Criterion c;
  Tolerance tol(R("1e-12"));
  Real worst = R(0L);
  for (long ell = 0; ell <= 5; ++ell) {
    for (const char* as : {"0.5", "1", "1.5", "2"}) {
      Real a = R(as);
      StieltjesValue dyv = stieltjes_dyadic(ell, a, tol, kPrec);
      const Real& dy = dyv.report.value;
      const Real& dy_bound = dyv.report.error_bound;
      for (long k : {2L, 3L, 5L}) {
        try {
          StieltjesValue bk = stieltjes_base_k(ell, a, k, tol, kPrec, {}, /*cross_check=*/true);
          Real d = abs(dy - bk.report.value);
          if (d > worst) worst = d;
          c.require(d <= dy_bound + bk.report.error_bound,
                    "ell=" + std::to_string(ell) + " a=" + std::string(as) +
                        " k=" + std::to_string(k) + " outside combined bounds (" + d.str(3) + ")");
        } catch (const CrossCheckMismatch& e) {
          c.require(false, std::string("form cross-check failed: ") + e.what());
        }
      }
    }
  }
  c.note("worst route deviation " + worst.str(3));
  return c;
}

// 4. Hurwitz series vs Euler-Maclaurin oracle to 1e-12.
Criterion criterion4() {
  Criterion c;
  Tolerance tol(R("1e-12"));
  Real cap = R("1e-12");
  Real worst = R(0L);
  for (const char* ss : {"1.25", "1.5", "2", "3", "5"}) {
    for (const char* as : {"0.25", "0.5", "1", "2"}) {
      Real v = hurwitz_zeta_series(R(ss), R(as), tol, kPrec).value;
      Real ref = oracle::hurwitz_zeta_ref(R(ss), R(as), kPrec).value;
      Real d = abs(v - ref);
      if (d > worst) worst = d;
      c.require(d <= cap,
                "s=" + std::string(ss) + " a=" + std::string(as) + " off by " + d.str(3));
    }
  }
  c.note("worst deviation " + worst.str(3));
  return c;
}

// 5. Identity suite at 1e-10 over the default grid.
Criterion criterion5() {
  Criterion c;
  std::vector<Real> s_grid, a_grid;
  for (const char* s : {"1.25", "1.5", "2", "3", "5"}) s_grid.push_back(R(s));
  for (const char* a : {"0.25", "0.5", "1", "2"}) a_grid.push_back(R(a));
  auto rows = identity_suite(s_grid, a_grid, Tolerance(R("1e-10")), kPrec);
  long fails = 0;
  for (const auto& r : rows)
    if (!r.pass) {
      ++fails;
      c.require(false, r.name + " s=" + r.s.str(3) + " a=" + r.a.str(3) + " residual " +
                           r.residual.str(3));
    }
  c.note(std::to_string(rows.size()) + " residuals checked");
  return c;
}

// 6. Brun equivalence for s in {1.25, 2, 3}.
Criterion criterion6() {
  Criterion c;
  Tolerance tol(R("1e-12"));
  for (const char* ss : {"1.25", "2", "3"}) {
    SumReport bz = brun_zeta(R(ss), tol, kPrec);
    SumReport hz = hurwitz_zeta_series(R(ss), R(1L), tol, kPrec);
    Real d = abs(bz.value - hz.value);
    c.require(d <= bz.error_bound + hz.error_bound,
              "s=" + std::string(ss) + " outside combined bounds (" + d.str(3) + ")");
  }
  return c;
}

// 7. Dirichlet L anchors to 1e-10.
Criterion criterion7() {
  Criterion c;
  Tolerance tol(R("1e-12"));
  Real cap = R("1e-10");

  SumReport cat = dirichlet_l(R(2L), DirichletCharacter::make(4, {1, 0, -1, 0}), tol, kPrec);
  Real dcat = abs(cat.value - const_catalan(kPrec.bits));
  c.require(dcat <= cap, "Catalan off by " + dcat.str(3));

  SumReport mod2 = dirichlet_l(R(2L), DirichletCharacter::make(2, {1, 0}), tol, kPrec);
  Real pi = const_pi(kPrec.bits);
  Real dm = abs(mod2.value - pi * pi / 8L);
  c.require(dm <= cap, "pi^2/8 off by " + dm.str(3));
  c.note("catalan dev " + dcat.str(3) + ", pi^2/8 dev " + dm.str(3));
  return c;
}

// 8. Convergence-rate property via the CLI bench.
Criterion criterion8() {
  Criterion c;
  CmdResult res = run_cmd("bench --quantity stieltjes --ell 0 --a 1 --k 2,4 --method base-k "
                          "--tol 1e-12 2>/dev/null");
  c.require(res.exit_code == 0, "bench exited " + std::to_string(res.exit_code));
  if (!c.ok) return c;

  double ratio2 = -1, ratio4 = -1;
  long terms2 = -1, terms4 = -1;
  std::istringstream in(res.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# fit,", 0) != 0) continue;
    std::istringstream ls(line.substr(6));
    std::string method, ell, a, k, ratio, terms;
    std::getline(ls, method, ',');
    std::getline(ls, ell, ',');
    std::getline(ls, a, ',');
    std::getline(ls, k, ',');
    std::getline(ls, ratio, ',');
    std::getline(ls, terms, ',');
    if (k == "2") {
      ratio2 = std::stod(ratio);
      terms2 = std::stol(terms);
    } else if (k == "4") {
      ratio4 = std::stod(ratio);
      terms4 = std::stol(terms);
    }
  }
  c.require(ratio2 >= 0.4 && ratio2 <= 0.6,
            "k=2 fitted ratio " + std::to_string(ratio2) + " outside [0.4, 0.6]");
  c.require(ratio4 >= 0.15 && ratio4 <= 0.35,
            "k=4 fitted ratio " + std::to_string(ratio4) + " outside [0.15, 0.35]");
  c.require(terms4 > 0 && terms4 < terms2,
            "terms-to-tolerance k=4 (" + std::to_string(terms4) + ") not below k=2 (" +
                std::to_string(terms2) + ")");
  c.note("ratios " + std::to_string(ratio2) + " / " + std::to_string(ratio4) + ", outer terms " +
         std::to_string(terms2) + " / " + std::to_string(terms4));
  return c;
}

// 9. Two runs of `verify --grid full` are byte-identical and green.
Criterion criterion9() {
  Criterion c;
  CmdResult r1 = run_cmd("verify --grid full 2>/dev/null");
  CmdResult r2 = run_cmd("verify --grid full 2>/dev/null");
  c.require(r1.exit_code == 0, "first verify exited " + std::to_string(r1.exit_code));
  c.require(r2.exit_code == 0, "second verify exited " + std::to_string(r2.exit_code));
  c.require(!r1.out.empty(), "verify produced no output");
  c.require(r1.out == r2.out, "verify output differs between runs");
  c.note(std::to_string(r1.out.size()) + " bytes compared");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
    return 64;
  }
  g_cli = argv[1];

  struct Entry {
    const char* name;
    std::function<Criterion()> fn;
  };
  const Entry entries[] = {
      {"1 gamma via three routes to 1e-12", criterion1},
      {"2 Stieltjes grid vs oracle to 1e-10", criterion2},
      {"3 base-k equivalence within combined bounds", criterion3},
      {"4 Hurwitz series vs oracle to 1e-12", criterion4},
      {"5 identity suite at 1e-10", criterion5},
      {"6 Brun equivalence within combined bounds", criterion6},
      {"7 Dirichlet L anchors to 1e-10", criterion7},
      {"8 bench decay ratios near 1/k", criterion8},
      {"9 verify --grid full is deterministic", criterion9},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Criterion c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    std::printf("%s criterion %s%s%s\n", c.ok ? "PASS" : "FAIL", e.name,
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  std::printf("acceptance: %d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
