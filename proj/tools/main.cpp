#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zseries/bench.hpp"
#include "zseries/errors.hpp"
#include "zseries/oracle.hpp"
#include "zseries/stieltjes.hpp"
#include "zseries/verify.hpp"
#include "zseries/zeta.hpp"

using json = nlohmann::ordered_json;
using namespace zseries;

namespace {

enum ExitCode {
  kOk = 0,
  kBadFlags = 1,
  kDomain = 2,
  kNonConvergence = 3,
  kVerifyFailed = 4,
};

struct CommonFlags {
  std::string tol = "1e-12";
  unsigned prec_bits = 256;
  unsigned digits = 30;
  unsigned max_inner = 1000000;
  unsigned max_outer = 200;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--tol", f.tol, "target absolute error (decimal)");
  cmd->add_option("--prec-bits", f.prec_bits, "binary working precision");
  cmd->add_option("--digits", f.digits, "decimal digits in output");
  cmd->add_option("--max-inner", f.max_inner, "inner term cap per outer index");
  cmd->add_option("--max-outer", f.max_outer, "outer term cap");
}

SummationLimits limits_from(const CommonFlags& f) {
  SummationLimits lim;
  lim.max_inner_terms = f.max_inner;
  lim.max_outer_terms = f.max_outer;
  return lim;
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    long v = std::stol(item, &pos);
    if (pos != item.size()) throw CLI::ValidationError("--", "bad integer list entry: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--", "empty list");
  return out;
}

std::vector<int> parse_chi(const std::string& s) {
  std::vector<int> out;
  for (long v : parse_list(s)) out.push_back(static_cast<int>(v));
  return out;
}

// ---------------------------------------------------------------- compute

struct ComputeFlags {
  CommonFlags common;
  std::string quantity;
  unsigned ell = 0;
  std::string a = "1";
  std::string s;
  unsigned k = 2;
  std::string method = "dyadic";
  unsigned modulus = 0;
  std::string chi;
  std::string format = "json";
};

int run_compute(const ComputeFlags& f) {
  Precision prec(static_cast<long>(f.common.prec_bits), static_cast<long>(f.common.digits));
  Tolerance tol = Tolerance::parse(f.common.tol, prec);
  SummationLimits lim = limits_from(f.common);
  const mpfr_prec_t bits = prec.bits;

  json out;
  out["quantity"] = f.quantity;
  auto t0 = std::chrono::steady_clock::now();
  SumReport rep(bits);

  if (f.quantity == "stieltjes") {
    Real a = Real::parse(f.a, bits);
    long ell = static_cast<long>(f.ell);
    if (f.method == "dyadic") {
      rep = stieltjes_dyadic(ell, a, tol, prec, lim).report;
    } else if (f.method == "base-k") {
      rep = stieltjes_base_k(ell, a, static_cast<long>(f.k), tol, prec, lim).report;
    } else if (f.method == "psi-telescope") {
      StieltjesQuery q(ell, a, StieltjesMethod::PsiTelescope);  // validates ell == 0
      rep = gamma0_telescope(a, tol, prec, lim);
    } else {
      throw CLI::ValidationError("--method", "unknown method: " + f.method);
    }
    out["method"] = f.method;
    out["ell"] = f.ell;
    out["a"] = f.a;
    if (f.method == "base-k") out["k"] = f.k;
  } else if (f.quantity == "zeta") {
    if (f.s.empty()) throw CLI::ValidationError("--s", "zeta requires --s");
    rep = hurwitz_zeta_series(Real::parse(f.s, bits), Real::parse(f.a, bits), tol, prec, lim);
    out["method"] = "double-series";
    out["s"] = f.s;
    out["a"] = f.a;
  } else if (f.quantity == "brun-beta") {
    if (f.s.empty()) throw CLI::ValidationError("--s", "brun-beta requires --s");
    rep = brun_beta(Real::parse(f.s, bits), tol, prec, lim);
    out["method"] = "double-series";
    out["s"] = f.s;
  } else if (f.quantity == "gamma0-telescope") {
    rep = gamma0_telescope(Real::parse(f.a, bits), tol, prec, lim);
    out["method"] = "psi-telescope";
    out["a"] = f.a;
  } else if (f.quantity == "euler-gamma") {
    rep = euler_gamma_telescope(tol, prec, lim);
    out["method"] = "psi-telescope";
  } else if (f.quantity == "dirichlet-l") {
    if (f.s.empty() || f.modulus == 0 || f.chi.empty())
      throw CLI::ValidationError("--chi", "dirichlet-l requires --s, --modulus and --chi");
    DirichletCharacter chr = DirichletCharacter::make(static_cast<long>(f.modulus), parse_chi(f.chi));
    rep = dirichlet_l(Real::parse(f.s, bits), chr, tol, prec, lim);
    out["method"] = "hurwitz-combination";
    out["s"] = f.s;
    out["modulus"] = f.modulus;
  } else {
    throw CLI::ValidationError("--quantity", "unknown quantity: " + f.quantity);
  }

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  out["value"] = rep.value.str(prec.out_digits);
  out["error_bound"] = rep.error_bound.str(6);
  out["outer_terms"] = rep.outer_terms;
  out["inner_terms_total"] = rep.inner_terms_total;
  out["elapsed_ms"] = static_cast<long>(ms);

  if (f.format == "csv") {
    std::string cols, vals;
    for (auto& [key, val] : out.items()) {
      cols += (cols.empty() ? "" : ",") + key;
      std::string sv = val.is_string() ? val.get<std::string>() : val.dump();
      vals += (vals.empty() ? "" : ",") + sv;
    }
    std::cout << cols << "\n" << vals << "\n";
  } else {
    std::cout << out.dump() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyFlags {
  CommonFlags common;
  std::string grid = "small";
  std::string perturb = "0";
};

int run_verify_cmd(const VerifyFlags& f) {
  Precision prec(static_cast<long>(f.common.prec_bits), static_cast<long>(f.common.digits));
  VerifyOptions opts(prec);
  opts.grid = (f.grid == "full") ? VerifyGrid::Full : VerifyGrid::Small;
  opts.tol = Tolerance::parse(f.common.tol, prec);
  opts.perturb = Real::parse(f.perturb, prec.bits);

  VerifyReport rep = run_verify(opts);
  for (const VerifyCheck& c : rep.checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) std::cout << "  " << c.detail;
    std::cout << "  residual=" << c.residual << " (<= " << c.threshold << ")\n";
  }
  std::cout << "verify: " << rep.checks.size() << " checks, " << rep.failed << " failed\n";
  return rep.all_pass() ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  CommonFlags common;
  std::string quantity = "stieltjes";
  std::string ell = "0";
  std::string a = "1";
  std::string s;
  std::string k = "2";
  std::string method;  // empty: dyadic when k = 2, base-k otherwise
};

int run_bench(const BenchFlags& f) {
  Precision prec(static_cast<long>(f.common.prec_bits), static_cast<long>(f.common.digits));
  Tolerance tol = Tolerance::parse(f.common.tol, prec);
  SummationLimits lim = limits_from(f.common);
  const mpfr_prec_t bits = prec.bits;

  std::vector<ConvergenceProfile> profiles;
  if (f.quantity == "stieltjes") {
    Real a = Real::parse(f.a, bits);
    for (long ell : parse_list(f.ell)) {
      for (long k : parse_list(f.k)) {
        StieltjesMethod m;
        if (f.method.empty())
          m = (k == 2) ? StieltjesMethod::Dyadic : StieltjesMethod::BaseK;
        else if (f.method == "dyadic")
          m = StieltjesMethod::Dyadic;
        else if (f.method == "base-k")
          m = StieltjesMethod::BaseK;
        else if (f.method == "psi-telescope")
          m = StieltjesMethod::PsiTelescope;
        else
          throw CLI::ValidationError("--method", "unknown method: " + f.method);
        profiles.push_back(profile_stieltjes(m, ell, a, k, tol, prec, lim));
      }
    }
  } else if (f.quantity == "zeta") {
    if (f.s.empty()) throw CLI::ValidationError("--s", "zeta requires --s");
    profiles.push_back(
        profile_hurwitz(Real::parse(f.s, bits), Real::parse(f.a, bits), tol, prec, lim));
  } else {
    throw CLI::ValidationError("--quantity", "unsupported bench quantity: " + f.quantity);
  }

  std::cout << "method,ell,a,k,n,partial_value,abs_error,inner_terms\n";
  for (const ConvergenceProfile& p : profiles) {
    for (const ProfileRow& r : p.rows) {
      std::cout << p.method << "," << p.ell << "," << p.a.str(6) << "," << p.k << "," << r.n
                << "," << r.partial.str(prec.out_digits) << "," << r.abs_error.str(6) << ","
                << r.inner_terms << "\n";
    }
  }
  for (const ConvergenceProfile& p : profiles) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", p.fitted_ratio);
    std::cout << "# fit," << p.method << "," << p.ell << "," << p.a.str(6) << "," << p.k << ","
              << buf << "," << p.outer_terms << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stieltjes constants, Hurwitz/Riemann zeta, and Dirichlet L-functions "
               "via rapidly-converging double series, with certified error bounds"};
  app.require_subcommand(1);

  ComputeFlags cf;
  CLI::App* compute = app.add_subcommand("compute", "compute one quantity, JSON on stdout");
  compute->add_option("--quantity", cf.quantity,
                      "stieltjes|zeta|brun-beta|dirichlet-l|gamma0-telescope|euler-gamma")
      ->required();
  compute->add_option("--ell", cf.ell, "Stieltjes index");
  compute->add_option("--a", cf.a, "parameter a > 0 (decimal)");
  compute->add_option("--s", cf.s, "exponent s (decimal)");
  compute->add_option("--k", cf.k, "base of the outer refinement (>= 2)");
  compute->add_option("--method", cf.method, "dyadic|base-k|psi-telescope");
  compute->add_option("--modulus", cf.modulus, "Dirichlet character modulus");
  compute->add_option("--chi", cf.chi, "comma-separated character table chi(1..m)");
  compute->add_option("--format", cf.format, "json|csv");
  add_common(compute, cf.common);

  VerifyFlags vf;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--grid", vf.grid, "small|full");
  verify->add_option("--perturb", vf.perturb, "inject a residual perturbation (self-test)");
  add_common(verify, vf.common);

  BenchFlags bf;
  CLI::App* bench = app.add_subcommand("bench", "convergence profiles, CSV on stdout");
  bench->add_option("--quantity", bf.quantity, "stieltjes|zeta");
  bench->add_option("--ell", bf.ell, "comma-separated Stieltjes indices");
  bench->add_option("--a", bf.a, "parameter a > 0 (decimal)");
  bench->add_option("--s", bf.s, "exponent s (decimal)");
  bench->add_option("--k", bf.k, "comma-separated bases");
  bench->add_option("--method", bf.method, "dyadic|base-k|psi-telescope");
  add_common(bench, bf.common);

  try {
    app.parse(argc, argv);
    if (*compute) return run_compute(cf);
    if (*verify) return run_verify_cmd(vf);
    if (*bench) return run_bench(bf);
    return kBadFlags;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kBadFlags;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const PolePassed& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const CrossCheckMismatch& e) {
    std::cerr << "cross-check mismatch: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const InvalidSequence& e) {
    std::cerr << "invalid sequence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kBadFlags;
  }
}
