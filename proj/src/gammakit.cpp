#include "conical/gammakit.hpp"

#include "conical/detail/ddouble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conical {

namespace {

constexpr auto kB2n = detail::bernoulli_b2n<12>();
static_assert(kB2n[1] > 0.1666666666666666 && kB2n[1] < 0.1666666666666667);
static_assert(kB2n[8] < -7.0921 && kB2n[8] > -7.0922);  // B_16 = -3617/510

constexpr double kAsymptoticMin = 12.0;
constexpr int kDigammaTerms = 8;
constexpr int kStirlingTerms = 10;

// Minimal complex helpers on real pairs; nothing here leaks to the API.
struct Pair {
  double re, im;
};
Pair mul(Pair a, Pair b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Pair inv(Pair a) {
  const double d = a.re * a.re + a.im * a.im;
  return {a.re / d, -a.im / d};
}

int shift_count(double a, double b) {
  int n = 0;
  while ((a + n) * (a + n) + b * b < kAsymptoticMin * kAsymptoticMin) ++n;
  return n;
}

}  // namespace

DigammaValue digamma_shifted(int n0, double tau) {
  const double a0 = 0.5 + n0;
  const int n = shift_count(a0, tau);

  // psi(alpha) = psi(alpha + n) - sum_{j<n} 1/(alpha + j)
  double shift_re = 0.0, shift_im = 0.0;
  for (int j = n - 1; j >= 0; --j) {
    const Pair r = inv({a0 + j, tau});
    shift_re += r.re;
    shift_im += r.im;
  }

  const Pair beta{a0 + n, tau};
  const Pair ib = inv(beta);
  const Pair ib2 = mul(ib, ib);
  double re = 0.5 * std::log(beta.re * beta.re + beta.im * beta.im) - 0.5 * ib.re;
  double im = std::atan2(beta.im, beta.re) - 0.5 * ib.im;
  Pair pw = ib2;
  double sre = 0.0, sim = 0.0;
  for (int k = 1; k <= kDigammaTerms; ++k) {
    const double c = kB2n[k] / (2.0 * k);
    sre += c * pw.re;
    sim += c * pw.im;
    pw = mul(pw, ib2);
  }
  re -= sre;
  im -= sim;
  return {re - shift_re, im - shift_im};
}

DigammaValue digamma_half(double tau) { return digamma_shifted(0, tau); }

double log_abs_gamma_sq(int m, double tau) {
  using std::numbers::pi;
  // |Gamma(1/2 + i tau)|^2 = pi / cosh(pi tau)
  const double pt = pi * tau;
  double l = std::log(pi) - pt - std::log1p(std::exp(-2.0 * pt)) + std::numbers::ln2;
  if (m > 0) {
    for (int j = 0; j < m; ++j) l += std::log((j + 0.5) * (j + 0.5) + tau * tau);
  } else {
    for (int j = m; j < 0; ++j) l -= std::log((j + 0.5) * (j + 0.5) + tau * tau);
  }
  return l;
}

ComplexLog log_gamma_complex(double a, double b) {
  const int n = shift_count(a, b);
  double shift_re = 0.0, shift_im = 0.0;
  for (int j = 0; j < n; ++j) {
    const double aj = a + j;
    shift_re += 0.5 * std::log(aj * aj + b * b);
    shift_im += std::atan2(b, aj);
  }
  const Pair z{a + n, b};
  const double lr = 0.5 * std::log(z.re * z.re + z.im * z.im);
  const double th = std::atan2(z.im, z.re);
  // (z - 1/2) ln z - z + ln(2 pi)/2
  double re = (z.re - 0.5) * lr - z.im * th - z.re + 0.5 * std::log(2.0 * std::numbers::pi);
  double im = (z.re - 0.5) * th + z.im * lr - z.im;
  const Pair iz = inv(z);
  const Pair iz2 = mul(iz, iz);
  Pair pw = iz;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    const double c = kB2n[k] / (2.0 * k * (2.0 * k - 1.0));
    re += c * pw.re;
    im += c * pw.im;
    pw = mul(pw, iz2);
  }
  return {re - shift_re, im - shift_im};
}

GammaRatioPolar gamma_ratio_polar(int mu, double tau) {
  // ln Gamma(z+1/2) - ln Gamma(z+1) ~ -ln(z)/2 + sum_k (2^{1-2k} - 2) B_2k / ((2k-1) 2k z^{2k-1}),
  // taken at z = n + i tau with |z| >= 12, then shifted back; the two large
  // Stirling parts never get formed, so the phase keeps full relative accuracy.
  const int n = shift_count(0.0, tau);
  double lre = 0.0, lim = 0.0;
  for (int j = 0; j < n; ++j) {
    lre -= 0.5 * std::log(((j + 0.5) * (j + 0.5) + tau * tau) / ((j + 1.0) * (j + 1.0) + tau * tau));
    lim -= std::atan2(tau, j + 0.5) - std::atan2(tau, j + 1.0);
  }
  const Pair z{static_cast<double>(n), tau};
  lre -= 0.25 * std::log(z.re * z.re + z.im * z.im);
  lim -= 0.5 * std::atan2(z.im, z.re);
  const Pair iz = inv(z);
  const Pair iz2 = mul(iz, iz);
  Pair pw = iz;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    const double c = (std::ldexp(1.0, 1 - 2 * k) - 2.0) * kB2n[k] / ((2.0 * k - 1.0) * (2.0 * k));
    lre += c * pw.re;
    lim += c * pw.im;
    pw = mul(pw, iz2);
  }
  // Gamma(1/2 + mu + i tau) = (1/2 + i tau)_mu Gamma(1/2 + i tau)
  for (int j = 0; j < mu; ++j) {
    lre += 0.5 * std::log((j + 0.5) * (j + 0.5) + tau * tau);
    lim += std::atan2(tau, j + 0.5);
  }
  GammaRatioPolar g;
  g.log_H = lre;
  g.H = std::exp(lre);
  double rho = std::remainder(lim, 2.0 * std::numbers::pi);
  if (rho <= -std::numbers::pi) rho += 2.0 * std::numbers::pi;
  g.rho = rho;
  return g;
}

double PochhammerPolarSeq::r_over_w(int k) const {
  const double r = std::hypot(u[k], v[k]);
  return std::ldexp(r / w[k], static_cast<int>(uv_exp[k] - w_exp[k]));
}

double PochhammerPolarSeq::log_w(int k) const {
  return std::log(w[k]) + static_cast<double>(w_exp[k]) * std::numbers::ln2;
}

double PochhammerPolarSeq::norm_defect(int k) const {
  // (u^2 + v^2) 2^{2 e_uv} / (w 2^{e_w}) - 1
  const double q = (u[k] * u[k] + v[k] * v[k]) / w[k];
  return std::ldexp(q, static_cast<int>(2 * uv_exp[k] - w_exp[k])) - 1.0;
}

PochhammerPolarSeq pochhammer_inverse_seq(double tau, int K) {
  PochhammerPolarSeq s;
  s.tau = tau;
  const auto n = static_cast<std::size_t>(K + 1);
  s.u.resize(n);
  s.v.resize(n);
  s.w.resize(n);
  s.sigma.resize(n);
  s.uv_exp.resize(n);
  s.w_exp.resize(n);

  // double-double carries, each stored value is then the rounded exact one
  using detail::DDouble;
  auto scale = [](DDouble a, int e) { return DDouble(std::ldexp(a.hi(), e), std::ldexp(a.lo(), e)); };
  DDouble u = 1.0, v = 0.0, w = 1.0;
  const DDouble t = tau;
  double sigma = 0.0;
  std::int64_t euv = 0, ew = 0;
  for (int k = 0; k <= K; ++k) {
    s.u[k] = u.to_double();
    s.v[k] = v.to_double();
    s.w[k] = w.to_double();
    s.sigma[k] = sigma;
    s.uv_exp[k] = euv;
    s.w_exp[k] = ew;
    if (k == K) break;
    const DDouble kp = k + 1.0;
    const DDouble un = kp * u + t * v;
    const DDouble vn = kp * v - t * u;
    w *= kp * kp + t * t;
    u = un;
    v = vn;
    // rotation by (k+1) - i tau
    sigma -= std::atan2(tau, k + 1.0);
    // Rescale by even powers of two so that the quadratic identity stays exact.
    int e = 0;
    std::frexp(std::max(std::fabs(u.hi()), std::fabs(v.hi())), &e);
    if (e > 400 || e < -400) {
      const int sh = 2 * (e / 2);
      u = scale(u, -sh);
      v = scale(v, -sh);
      euv += sh;
    }
    std::frexp(w.hi(), &e);
    if (e > 400) {
      w = scale(w, -e);
      ew += e;
    }
  }
  return s;
}

}  // namespace conical
