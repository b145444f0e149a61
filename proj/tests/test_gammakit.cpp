#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "conical/gammakit.hpp"
#include "reference.hpp"

using namespace conical;
using conical::testing::known;
using conical::testing::rel_err;

constexpr double kEps = 2.220446049250313e-16;

TEST_CASE("bernoulli numbers") {
  constexpr auto b = detail::bernoulli_b2n<9>();
  CHECK(b[0] == 1.0);
  CHECK(b[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
  CHECK(b[2] == doctest::Approx(-1.0 / 30.0).epsilon(1e-16));
  CHECK(b[6] == doctest::Approx(-691.0 / 2730.0).epsilon(1e-16));
  CHECK(b[8] == doctest::Approx(-3617.0 / 510.0).epsilon(1e-16));
}

TEST_CASE("digamma at tau = 0") {
  const DigammaValue d = digamma_half(0.0);
  CHECK(d.re == doctest::Approx(-1.963510026021423).epsilon(1e-15));
  CHECK(d.im == 0.0);
}

TEST_CASE("digamma against reference at tau = 50") {
  const DigammaValue d = digamma_half(50.0);
  CHECK(rel_err(d.re, known("digamma_half.tau50.re")) <= 1e-14);
  CHECK(rel_err(d.im, known("digamma_half.tau50.im")) <= 1e-14);
}

TEST_CASE("digamma shift identity on a log grid") {
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double tau = i == 0 ? 0.0 : 1e-3 * std::pow(1e5, (i - 1) / 399.0);
    const DigammaValue a = digamma_half(tau);
    const DigammaValue b = digamma_shifted(1, tau);
    const std::complex<double> inv = 1.0 / std::complex<double>(0.5, tau);
    const double sre = std::fabs(a.re) + std::fabs(b.re) + std::fabs(inv.real());
    const double sim = std::fabs(a.im) + std::fabs(b.im) + std::fabs(inv.imag());
    worst = std::max(worst, std::fabs(b.re - a.re - inv.real()) / sre);
    if (sim > 0.0) worst = std::max(worst, std::fabs(b.im - a.im - inv.imag()) / sim);
  }
  MESSAGE("max shift residual " << worst);
  CHECK(worst <= 5e-15);
}

TEST_CASE("log |Gamma|^2 closed forms and shift") {
  CHECK(log_abs_gamma_sq(0, 0.0) == doctest::Approx(std::log(std::numbers::pi)).epsilon(1e-15));
  CHECK(log_abs_gamma_sq(1, 0.0) == doctest::Approx(std::log(std::numbers::pi / 4.0)).epsilon(1e-15));
  CHECK(std::fabs(log_abs_gamma_sq(-3, 7.0) - known("log_abs_gamma_sq.m-3.tau7")) <= 1e-13);
  // |Gamma(1/2 + i tau)|^2 = pi / cosh(pi tau)
  for (double tau : {0.3, 2.0, 17.0, 95.0}) {
    const double want = std::log(std::numbers::pi) - std::numbers::pi * tau - std::log1p(std::exp(-2 * std::numbers::pi * tau)) +
                        std::log(2.0);
    CHECK(std::fabs(log_abs_gamma_sq(0, tau) - want) <= 1e-13 * std::max(1.0, std::fabs(want)));
  }
  double worst = 0.0;
  for (double tau : {0.0, 0.5, 3.0, 40.0, 100.0}) {
    for (int m = -10; m < 60; ++m) {
      const double d = log_abs_gamma_sq(m + 1, tau) - log_abs_gamma_sq(m, tau);
      worst = std::max(worst, std::fabs(d - std::log((m + 0.5) * (m + 0.5) + tau * tau)));
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("gamma ratio polar form") {
  const double sqpi = std::sqrt(std::numbers::pi);
  GammaRatioPolar g = gamma_ratio_polar(0, 0.0);
  CHECK(g.H == doctest::Approx(sqpi).epsilon(1e-15));
  CHECK(g.rho == 0.0);
  g = gamma_ratio_polar(1, 0.0);
  CHECK(g.H == doctest::Approx(sqpi / 2).epsilon(1e-15));
  CHECK(g.rho == 0.0);
  for (int mu = 0; mu < 30; ++mu) CHECK(gamma_ratio_polar(mu, 0.0).rho == 0.0);
  for (int tau : {5, 10}) {
    g = gamma_ratio_polar(1, tau);
    const std::string key = "gamma_ratio.mu1.tau" + std::to_string(tau);
    CHECK(rel_err(g.H, known(key + ".H")) <= 1e-13);
    CHECK(std::fabs(g.rho - known(key + ".rho")) <= 1e-13);
  }
}

TEST_CASE("pochhammer sequence") {
  for (double tau : {0.0, 0.7, 12.0}) {
    const PochhammerPolarSeq s = pochhammer_inverse_seq(tau, 5);
    CHECK(std::ldexp(s.u[0], s.uv_exp[0]) == 1.0);
    CHECK(s.v[0] == 0.0);
    CHECK(std::ldexp(s.w[0], s.w_exp[0]) == 1.0);
    CHECK(std::ldexp(s.u[1], s.uv_exp[1]) == doctest::Approx(1.0).epsilon(1e-16));
    CHECK(std::ldexp(s.v[1], s.uv_exp[1]) == doctest::Approx(-tau).epsilon(1e-16));
    CHECK(std::ldexp(s.w[1], s.w_exp[1]) == doctest::Approx(1 + tau * tau).epsilon(1e-16));
  }
  const PochhammerPolarSeq s = pochhammer_inverse_seq(5.0, 3);
  const double re = std::ldexp(s.u[3] / s.w[3], s.uv_exp[3] - s.w_exp[3]);
  const double im = std::ldexp(s.v[3] / s.w[3], s.uv_exp[3] - s.w_exp[3]);
  const double want_re = known("pochhammer_inverse.tau5.k3.re"), want_im = known("pochhammer_inverse.tau5.k3.im");
  CHECK(std::hypot(re - want_re, im - want_im) <= 1e-14 * std::hypot(want_re, want_im));
}

TEST_CASE("pochhammer weights increase and the norm identity holds to 4 ulp") {
  double worst = 0.0;
  for (double tau : {0.1, 1.0, 2.0, 10.0, 100.0}) {
    const PochhammerPolarSeq s = pochhammer_inverse_seq(tau, 200);
    for (int k = 0; k <= 200; ++k) worst = std::max(worst, std::fabs(s.norm_defect(k)));
    for (int k = 1; k <= 200; ++k) CHECK(s.log_w(k) > s.log_w(k - 1));
  }
  MESSAGE("max norm defect " << worst / kEps << " ulp");
  CHECK(worst <= 4 * kEps);
}

TEST_CASE("pochhammer phase is continuous") {
  const PochhammerPolarSeq s = pochhammer_inverse_seq(30.0, 100);
  for (int k = 1; k <= 100; ++k) {
    // arg of 1/(k + i tau) lies in (-pi/2, 0)
    const double d = s.sigma[k] - s.sigma[k - 1];
    CHECK(d == doctest::Approx(-std::atan2(30.0, k)).epsilon(1e-13));
  }
}
