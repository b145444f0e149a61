#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conical/conical_p.hpp"
#include "conical/conical_r.hpp"
#include "conical/verify.hpp"
#include "reference.hpp"

using namespace conical;
using conical::testing::known;
using conical::testing::rel_err;

constexpr double kEps = 2.220446049250313e-16;

TEST_CASE("series at and near x = 1") {
  CHECK(p_series(1.0, 0, 7.0).pm == 1.0);
  CHECK(p_series(1.0, 3, 7.0).pm == 0.0);
  CHECK(p_series(1.0 + 1e-12, 0, 7.0).pm == doctest::Approx(1.0).epsilon(1e-9));
  // P^m ~ prod/m! ((x-1)/2)^{m/2} as x -> 1
  const double d = 1e-10;
  const double lead = (0.25 + 4.0) * (2.25 + 4.0) / 2.0 * (d / 2.0);
  CHECK(p_series(1.0 + d, 2, 2.0).pm == doctest::Approx(lead).epsilon(1e-8));
}

TEST_CASE("series against reference inside (-1, 1)") {
  const PSeriesResult s = p_series(0.5, 3, 4.0);
  REQUIRE(s.status == EvalStatus::Ok);
  CHECK(rel_err(s.pm, known("march.P.x0.5.m3.tau4.value")) <= 1e-13);
  CHECK(rel_err(s.pmd, known("march.P.x0.5.m3.tau4.deriv")) <= 1e-13);
}

TEST_CASE("order flip") {
  CHECK(p_negative_order(0.37, 0, 12.0).value == 0.37);
  CHECK(p_negative_order(1.0, 1, 0.0).value == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(std::fabs(p_negative_order_log_factor(2, 10.0) - known("p_negative_order.log_factor.m2.tau10")) <= 1e-13);
  CHECK(std::fabs(p_negative_order_log_factor(1, 0.0) - std::log(4.0)) <= 1e-15);
  // the product form and the gamma form describe the same factor
  for (double tau : {0.0, 1.5, 30.0, 150.0}) {
    for (int m : {1, 5, 40}) {
      double lp = 0.0;
      for (int j = 0; j < m; ++j) lp -= std::log((j + 0.5) * (j + 0.5) + tau * tau);
      CHECK(std::fabs(p_negative_order_log_factor(m, tau) - lp) <= 1e-13 * std::max(1.0, std::fabs(lp)));
    }
  }
}

TEST_CASE("order flip round trip on (-1, 1) within 2 ulp") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -0.99 + 1.98 * u(gen);
    const int m = static_cast<int>(u(gen) * 30);
    const double tau = 60 * u(gen);
    const EvalResult p = conicp(x, m, tau);
    if (!p.ok() || p.value == 0.0) continue;
    const EvalResult neg = p_negative_order(p.value, m, tau);
    if (!neg.ok()) continue;
    const EvalResult back = p_negative_order(neg.value, -m, tau);
    REQUIRE(back.ok());
    worst = std::max(worst, std::fabs(back.value - p.value) / std::fabs(p.value));
  }
  MESSAGE("round trip " << worst / kEps << " ulp");
  CHECK(worst <= 2 * kEps);
}

TEST_CASE("march from the anchor") {
  const double x = 10.0;
  const double x0 = p_march_anchor(x, 30.0, 0);
  CHECK(x0 > 1.0);
  CHECK(x0 < x);
  // zero-length march hands back the series seed
  const PDeriv z = p_ode_march(x0, 0, 30.0);
  const PSeriesResult s = p_series(x0, 0, 30.0);
  CHECK(rel_err(z.pm, s.pm) <= 1e-13);
  const PDeriv p = p_ode_march(x, 0, 30.0);
  REQUIRE(p.status == EvalStatus::Ok);
  CHECK(rel_err(p.pm, known("march.P.x10.m0.tau30.value")) <= 5e-12);
  CHECK(rel_err(p.pmd, known("march.P.x10.m0.tau30.deriv")) <= 5e-12);
}

TEST_CASE("public entry points") {
  CHECK(conicp(1.0, 0, 7.0).value == 1.0);
  CHECK(conicp(-2.0, 0, 1.0).status == EvalStatus::OutOfRange);
  const EvalResult p = conicp(30.0, 5, 60.0);
  REQUIRE(p.ok());
  CHECK(rel_err(p.value, known("march.P.x30.m5.tau60.value")) <= 5e-12);
  const ConicPR q = conicpr(2.0, 1, 5.0);
  REQUIRE(q.status == EvalStatus::Ok);
  CHECK(rel_err(q.pm, known("march.P.x2.m1.tau5.value")) <= 5e-12);
  CHECK(rel_err(q.pmd, known("march.P.x2.m1.tau5.deriv")) <= 5e-12);
  CHECK(rel_err(q.rm, known("march.R.x2.m1.tau5.value")) <= 5e-12);
  CHECK(rel_err(q.rmd, known("march.R.x2.m1.tau5.deriv")) <= 5e-12);
  CHECK(conicpr(0.5, 1, 5.0).status == EvalStatus::OverUnderflow);  // conicpr folds every failure into 1
}

TEST_CASE("Wronskian of the computed pair") {
  for (auto [x, m, tau] : {std::tuple{1.3, 0, 2.0}, std::tuple{2.0, 1, 5.0}, std::tuple{1.05, 7, 60.0},
                           std::tuple{40.0, 33, 12.0}, std::tuple{88.0, 90, 95.0}}) {
    const VerificationRecord r = wronskian_record(x, m, tau);
    REQUIRE(r.status == EvalStatus::Ok);
    CHECK(r.err_wronskian <= 5e-12);
  }
}

TEST_CASE("(x^2-1) W{P,R} is constant in x") {
  const int m = 4;
  const double tau = 9.0;
  double ref_w = 0.0;
  for (double x : {1.01, 1.1, 1.7, 3.0, 12.0, 60.0}) {
    const ConicPRScaled s = conicpr_scaled(x, m, tau);
    REQUIRE(s.status == EvalStatus::Ok);
    const double w = ((s.pm * s.rmd - s.pmd * s.rm) * ((x - 1) * (x + 1))).to_double();
    if (ref_w == 0.0) ref_w = w;
    CHECK(rel_err(w, ref_w) <= 1e-10);
  }
}

TEST_CASE("order recurrence for P") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, wx = 0.0, wt = 0.0;
  int wm = 0;
  for (int i = 0; i < 300; ++i) {
    const bool inside = i % 3 == 0;
    const double x = inside ? -0.95 + 1.9 * u(gen) : 1.001 + 99 * u(gen) * u(gen);
    const int m = 1 + static_cast<int>(u(gen) * 40);
    const double tau = 100 * u(gen);
    Scaled p[3];
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      const PValue v = p_eval(x, m - 1 + k, tau);
      ok = ok && v.status == EvalStatus::Ok;
      p[k] = v.pm;
    }
    REQUIRE(ok);
    // x > 1: P^{m+1} = a P^m - c P^{m-1}; (-1,1): P^{m+1} = -a P^m + c P^{m-1}
    const double sgn = inside ? -1.0 : 1.0;
    const double a = sgn * 2.0 * m * x / std::sqrt(std::fabs(x * x - 1.0));
    const double c = sgn * ((m - 0.5) * (m - 0.5) + tau * tau);
    const double e1 = std::fabs(((p[1] * a - p[0] * c) / p[2]).to_double() - 1.0);
    const double e2 = std::fabs(((p[2] + p[0] * c) / (p[1] * a)).to_double() - 1.0);
    if (std::min(e1, e2) > worst) {
      worst = std::min(e1, e2);
      wx = x;
      wm = m;
      wt = tau;
    }
  }
  MESSAGE("max min-form residual " << worst << " at x=" << wx << " m=" << wm << " tau=" << wt);
  CHECK(worst <= 1e-12);
}

TEST_CASE("derivatives and ODE residual by finite differences") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_d = 0.0, worst_ode = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = i % 4 == 0 ? -0.95 + 1.9 * u(gen) : 1.001 + 99 * u(gen) * u(gen);
    const int m = static_cast<int>(u(gen) * 40);
    const double tau = 100 * u(gen);
    const FdCheck d = fd_derivative('P', x, m, tau);
    const FdCheck o = ode_residual('P', x, m, tau);
    REQUIRE(d.status == EvalStatus::Ok);
    REQUIRE(o.status == EvalStatus::Ok);
    worst_d = std::max(worst_d, d.err_envelope);
    worst_ode = std::max(worst_ode, o.err);
  }
  MESSAGE("derivative " << worst_d << ", ODE " << worst_ode);
  CHECK(worst_d <= 1e-6);
  CHECK(worst_ode <= 1e-6);
}
