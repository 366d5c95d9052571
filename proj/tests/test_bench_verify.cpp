#include <doctest.h>

#include <thread>

#include "test_util.hpp"
#include "zseries/bench.hpp"
#include "zseries/oracle.hpp"
#include "zseries/stieltjes.hpp"
#include "zseries/verify.hpp"

using namespace zseries;
using zt::R;

TEST_CASE("concurrent evaluations are safe and bit-identical") {
  // Pure functions plus the lock-guarded Bernoulli cache: four threads
  // computing the same quantities must agree to the last bit.
  std::vector<std::string> results(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&results, t] {
      StieltjesValue v = stieltjes_dyadic(1, R("0.5"), zt::tol("1e-12"), zt::prec());
      Real psi = oracle::digamma_ref(R("2.5"), zt::prec());
      results[t] = v.report.value.str(40) + "|" + psi.str(40);
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) CHECK(results[t] == results[0]);
}

TEST_CASE("dyadic profile decays with ratio near 1/2") {
  ConvergenceProfile p = profile_stieltjes(StieltjesMethod::Dyadic, 0, R(1L), 2,
                                           zt::tol("1e-12"), zt::prec());
  REQUIRE(p.rows.size() >= 10);
  CHECK(p.fitted_ratio == doctest::Approx(0.5).epsilon(0.2));

  // abs_error vs final is nonincreasing after the first 3 rows (slack 2x
  // for rounding plateaus).
  for (size_t i = 3; i + 2 < p.rows.size(); ++i) {
    INFO("row ", i);
    CHECK(p.rows[i + 1].abs_error <= 2L * p.rows[i].abs_error);
  }
  // cumulative inner terms are nondecreasing
  for (size_t i = 0; i + 1 < p.rows.size(); ++i)
    CHECK(p.rows[i].inner_terms <= p.rows[i + 1].inner_terms);
}

TEST_CASE("base-4 profile decays with ratio near 1/4 and needs fewer outer terms") {
  ConvergenceProfile p2 = profile_stieltjes(StieltjesMethod::BaseK, 0, R(1L), 2,
                                            zt::tol("1e-12"), zt::prec());
  ConvergenceProfile p4 = profile_stieltjes(StieltjesMethod::BaseK, 0, R(1L), 4,
                                            zt::tol("1e-12"), zt::prec());
  CHECK(p4.fitted_ratio == doctest::Approx(0.25).epsilon(0.2));
  CHECK(p4.outer_terms < p2.outer_terms);
  CHECK(p2.fitted_ratio > 0.0);
  CHECK(p2.fitted_ratio < 0.9);
}

TEST_CASE("hurwitz profile fits inside (0, 0.9)") {
  ConvergenceProfile p = profile_hurwitz(R(2L), R(1L), zt::tol("1e-12"), zt::prec());
  CHECK(p.fitted_ratio > 0.0);
  CHECK(p.fitted_ratio < 0.9);
}

TEST_CASE("verify small grid is green") {
  VerifyOptions opts(zt::prec());
  opts.grid = VerifyGrid::Small;
  opts.tol = zt::tol("1e-12");
  VerifyReport rep = run_verify(opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.detail, " residual=", c.residual, " thr=", c.threshold);
    CHECK(c.pass);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("injected perturbation trips the harness") {
  VerifyOptions opts(zt::prec());
  opts.grid = VerifyGrid::Small;
  opts.tol = zt::tol("1e-12");
  opts.perturb = R("1e-6");
  VerifyReport rep = run_verify(opts);
  CHECK(rep.failed > 0);
}
