#include "conical/conical_r.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conical/besseljy.hpp"

namespace conical {

namespace {

constexpr double kEps = SeriesStop::kEps;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

Scaled scaled_exp(double log_value) {
  const double e = std::floor(log_value / std::numbers::ln2);
  Scaled s{std::exp(log_value - e * std::numbers::ln2), static_cast<std::int64_t>(e)};
  s.normalize();
  return s;
}

// t = arccosh x without cancellation near x = 1.
double arccosh_x(double x) {
  const double xm1 = x - 1.0;
  return std::log1p(xm1 + std::sqrt(xm1 * (x + 1.0)));
}

// z = 1 / (e^{2t} - 1)
double largex_z(double t) { return 1.0 / std::expm1(2.0 * t); }

}  // namespace

NearOneVars NearOneVars::at(double x) {
  return {(1.0 - x) / 2.0, std::sqrt((x - 1.0) / (x + 1.0))};
}

R01Series r01_series(double x, double tau, const NumericConfig& cfg) {
  R01Series out;
  const NearOneVars v = NearOneVars::at(x);
  const double z = v.z;
  const double x2m1 = (x - 1.0) * (x + 1.0);
  const double lnw = 0.5 * (std::log(x - 1.0) - std::log(x + 1.0));
  const double rpsi = digamma_half(tau).re;

  // k = 0 terms: A_0 and (w^2 - 1) / (4 z) = 1 / (x^2 - 1).
  double c = 1.0;  // prod_{j<k} ((j+1/2)^2 + tau^2) / (k!)^2
  double zk = 1.0;
  double hk = 0.0;
  double s0 = 0.0, s1 = 0.0, a0 = 0.0, a1 = 0.0;
  SeriesStop stop0, stop1;
  int k = 0;
  bool done = false;
  for (; k < cfg.series_max_terms; ++k) {
    const double A = (hk - kEulerGamma) - rpsi - lnw;
    const double Amag = std::fabs(hk - kEulerGamma) + std::fabs(rpsi) + std::fabs(lnw);
    const double t0 = c * zk * A;
    double t1 = 0.0;
    double m1 = 0.0;
    if (k == 0) {
      t1 = 1.0 / x2m1;
      m1 = std::fabs(t1);
    } else {
      // (1/2) z^{k-1} ((w^2-1)/2 + k A)
      const double zkm1 = zk / z;
      const double w2m1 = -2.0 / (x + 1.0);
      t1 = 0.5 * c * zkm1 * (0.5 * w2m1 + k * A);
      m1 = 0.5 * std::fabs(c * zkm1) * (0.5 * std::fabs(w2m1) + k * Amag);
    }
    s0 += t0;
    s1 += t1;
    a0 += std::fabs(c * zk) * Amag;
    a1 += m1;
    const bool d0 = stop0.update(t0, s0);
    const bool d1 = stop1.update(t1, s1);
    if (d0 && d1) {
      done = true;
      ++k;
      break;
    }
    const double kh = k + 0.5;
    c *= (kh * kh + tau * tau) / ((k + 1.0) * (k + 1.0));
    zk *= z;
    hk += 1.0 / (k + 1.0);
  }
  out.terms = k;
  out.r0 = s0;
  out.r1 = std::sqrt(x2m1) * s1;
  const double cancel = std::max(a0 / std::fabs(s0), a1 / std::fabs(s1));
  out.est_err = 4.0 * kEps * cancel;
  if (!done) out.est_err = std::max(out.est_err, 1.0);
  if (!(out.est_err <= 1e-2) || !std::isfinite(out.r0) || !std::isfinite(out.r1)) {
    out.status = EvalStatus::OverUnderflow;
  }
  return out;
}

std::vector<double> kummer_f_coefficients(double t, double b, int N) {
  // S(y) = sinh(y)/y, h(p) = S(t(1+p)) S(tp), f_k = [p^k] (h/h_0)^b / (2t)^k.
  // Everything is carried with the powers t^k divided out.
  const int n_terms = N + 1;
  std::vector<double> A(n_terms), B(n_terms, 0.0), H(n_terms, 0.0);
  double inv_nfact = 1.0;
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) inv_nfact /= n;
    // A_n = (1/n!) sum_{i = n mod 2, step 2} t^i / (i! (i + n + 1))
    double s = 0.0;
    double ti = (n % 2 == 0) ? 1.0 : t;
    double ifact = 1.0;
    const int i0 = n % 2;
    for (int i = i0; i < 400; i += 2) {
      if (i >= 2) ifact *= static_cast<double>(i) * (i - 1);
      const double term = ti / (ifact * (i + n + 1));
      s += term;
      if (term <= 0.25 * kEps * s) break;
      ti *= t * t;
    }
    A[n] = s * inv_nfact;
  }
  double f = 1.0;
  for (int n = 0; n < n_terms; ++n) {
    f *= (n + 1);
    if (n % 2 == 0) B[n] = 1.0 / f;
  }
  for (int n = 0; n < n_terms; ++n) {
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += A[i] * B[n - i];
    H[n] = s;
  }
  std::vector<double> a(n_terms), G(n_terms, 0.0);
  for (int n = 0; n < n_terms; ++n) a[n] = H[n] / H[0];
  G[0] = 1.0;
  for (int k = 1; k < n_terms; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += (b * j - (k - j)) * a[j] * G[k - j];
    G[k] = s / k;
  }
  std::vector<double> out(n_terms);
  double p2 = 1.0;
  for (int k = 0; k < n_terms; ++k) {
    out[k] = G[k] / p2;
    p2 *= 2.0;
  }
  return out;
}

KummerState kummer_state(double x, double tau, int mu, int N) {
  KummerState s;
  s.x = x;
  s.tau = tau;
  s.mu = mu;
  s.N = N;
  const double t = arccosh_x(x);
  s.z = largex_z(t);
  s.alpha = 2.0 * t;
  s.phi = tau * t;
  s.b = -mu - 0.5;
  s.d = s.z * s.alpha;

  const double y = tau * t;  // alpha tau / 2
  const BesselQuad base = bessel_j0y0_j1y1(y);
  if (base.status != EvalStatus::Ok || !(tau > 0.0)) {
    s.status = EvalStatus::OutOfRange;
    return s;
  }
  const BesselPair hm = bessel_jy_int(mu, y, base);
  const BesselPair hm1 = bessel_jy_int(mu - 1, y, base);
  // H^(2) = J - iY. Phi_k is stored without the common factor
  // sqrt(pi) (tau/alpha)^mu e^{i alpha tau / 2}; the phase cancels e^{-i phi}.
  // Phi_0 = -(i/2) H_mu
  s.Phi_re.assign(N + 1, 0.0);
  s.Phi_im.assign(N + 1, 0.0);
  s.Phi_re[0] = -0.5 * hm.y;
  s.Phi_im[0] = -0.5 * hm.j;
  // Phi_1 = (alpha/4) (i H_mu + H_{mu-1})
  if (N >= 1) {
    s.Phi_re[1] = 0.25 * s.alpha * (hm.y + hm1.j);
    s.Phi_im[1] = 0.25 * s.alpha * (hm.j - hm1.y);
  }
  // i tau Phi_{n+1} = (n - 2 mu - i alpha tau) Phi_n + alpha (n - 1/2 - mu) Phi_{n-1}
  for (int n = 1; n < N; ++n) {
    const double ar = (n - 2.0 * mu) * s.Phi_re[n] + s.alpha * (n - 0.5 - mu) * s.Phi_re[n - 1];
    const double ai = (n - 2.0 * mu) * s.Phi_im[n] + s.alpha * (n - 0.5 - mu) * s.Phi_im[n - 1];
    s.Phi_re[n + 1] = ai / tau - s.alpha * s.Phi_re[n];
    s.Phi_im[n + 1] = -ar / tau - s.alpha * s.Phi_im[n];
  }
  s.f = kummer_f_coefficients(t, s.b, N);
  return s;
}

namespace {

// log of sqrt(pi/2) sqrt(pi) tau^mu alpha^{1/2} (x^2-1)^{-1/4}
double kummer_log_prefactor(const KummerState& s) {
  const double x2m1 = (s.x - 1.0) * (s.x + 1.0);
  return 0.5 * std::log(std::numbers::pi / 2.0) + 0.5 * std::log(std::numbers::pi) +
         s.mu * std::log(s.tau) + 0.5 * std::log(s.alpha) - 0.25 * std::log(x2m1);
}

}  // namespace

ScaledEval r_kummer(double x, double tau, int mu, int max_terms, bool fixed) {
  ScaledEval out;
  const KummerState s = kummer_state(x, tau, mu, max_terms);
  if (s.status != EvalStatus::Ok) {
    out.status = s.status;
    return out;
  }
  std::vector<double> mag(max_terms + 1);
  for (int k = 0; k <= max_terms; ++k) mag[k] = std::fabs(s.f[k]) * std::hypot(s.Phi_re[k], s.Phi_im[k]);
  // Magnitudes come in pairs of similar size, so truncate where the sum of
  // two consecutive terms is smallest.
  int last = max_terms;
  double omitted = 0.0;
  if (!fixed && max_terms >= 2) {
    last = 0;
    double best = INFINITY;
    for (int k = 1; k + 1 <= max_terms; ++k) {
      const double q = mag[k] + mag[k + 1];
      if (q < best) {
        best = q;
        last = k;
      }
    }
    omitted = mag[last + 1];
  }
  double sum = 0.0, abs_sum = 0.0;
  for (int k = 0; k <= last; ++k) {
    sum += s.f[k] * s.Phi_re[k];
    abs_sum += mag[k];
  }
  const int k = last + 1;
  out.terms = k;
  out.value = scaled_exp(kummer_log_prefactor(s)) * sum;
  // Bessel phases carry an absolute error of a few ulp of their argument.
  out.est_rel_err = (omitted + kEps * (8.0 + s.phi) * abs_sum) / std::fabs(sum) + 16.0 * kEps;
  if (!std::isfinite(sum)) out.status = EvalStatus::OverUnderflow;
  return out;
}

double r_kummer_fixed(double x, double tau, int mu, int N) {
  const ScaledEval e = r_kummer(x, tau, mu, N, true);
  return e.status == EvalStatus::Ok ? e.value.to_double() : NAN;
}

EvalResult r01_kummer(double x, double tau, int mu, const NumericConfig& cfg) {
  EvalResult r;
  r.region = Region::KummerLargeTau;
  if (mu != 0 && mu != 1) {
    r.status = EvalStatus::OutOfRange;
    return r;
  }
  const ScaledEval e = r_kummer(x, tau, mu, cfg.kummer_terms);
  r.value = e.value.to_double();
  r.est_rel_err = e.est_rel_err;
  r.status = e.status == EvalStatus::Ok ? range_status(e.value, cfg) : e.status;
  return r;
}

RaiseResult raise_order(Scaled r_prev, Scaled r_curr, int m_from, int m_to, double x, double tau,
                        const NumericConfig& cfg) {
  RaiseResult out;
  out.values.push_back(r_prev);
  out.values.push_back(r_curr);
  const double sq = std::sqrt((x - 1.0) * (x + 1.0));
  for (int m = m_from; m < m_to; ++m) {
    const double a = 2.0 * m * x / sq;
    const double b = (m - 0.5) * (m - 0.5) + tau * tau;
    Scaled next = r_curr * a - r_prev * b;
    r_prev = r_curr;
    r_curr = next;
    out.values.push_back(next);
  }
  out.status = range_status(out.values.back(), cfg);
  return out;
}

RaiseResult raise_order(double r_prev, double r_curr, int m_from, int m_to, double x, double tau,
                        const NumericConfig& cfg) {
  return raise_order(Scaled::from(r_prev), Scaled::from(r_curr), m_from, m_to, x, tau, cfg);
}

LargeXState large_x_state(double x, double tau, int mu, int K) {
  LargeXState s;
  const double t = arccosh_x(x);
  s.z = largex_z(t);
  s.phi = tau * t;
  s.gamma_polar = gamma_ratio_polar(mu, tau);
  s.poch = pochhammer_inverse_seq(tau, K);
  s.psi.resize(s.poch.size());
  for (int k = 0; k < s.poch.size(); ++k) s.psi[k] = s.phi - s.gamma_polar.rho - s.poch.sigma[k];
  return s;
}

ScaledEval r_large_x(double x, double tau, int mu, const NumericConfig& cfg) {
  ScaledEval out;
  const int K = cfg.series_max_terms;
  const LargeXState s = large_x_state(x, tau, mu, K);
  double sum = 0.0, abs_sum = 0.0;
  double c = 1.0;   // (1/2+mu)_k (1/2-mu)_k / k!
  double zk = 1.0;  // (-z)^k
  SeriesStop stop;
  bool done = false;
  int k = 0;
  for (; k <= K; ++k) {
    const double term = c * s.poch.r_over_w(k) * zk * std::cos(s.psi[k]);
    sum += term;
    abs_sum += std::fabs(c * s.poch.r_over_w(k) * zk);
    if (stop.update(c * s.poch.r_over_w(k) * zk, sum) || c == 0.0) {
      done = true;
      ++k;
      break;
    }
    c *= (0.5 + mu + k) * (0.5 - mu + k) / (k + 1.0);
    zk *= -s.z;
  }
  out.terms = k;
  const double x2m1 = (x - 1.0) * (x + 1.0);
  const double lpre = 0.5 * std::log(std::numbers::pi / 2.0) + s.gamma_polar.log_H - 0.25 * std::log(x2m1);
  out.value = scaled_exp(lpre) * sum;
  // Phase error grows with the size of the arguments of the cosines.
  const double phase = std::fabs(s.phi) + std::fabs(s.gamma_polar.rho) + std::fabs(s.poch.sigma[k - 1]);
  out.est_rel_err = kEps * (8.0 + phase) * abs_sum / std::fabs(sum) + 16.0 * kEps;
  if (!done || !std::isfinite(sum)) out.status = EvalStatus::OverUnderflow;
  return out;
}

RPair r_pair(double x, int m, double tau, const NumericConfig& cfg) {
  RPair out;
  Scaled r0, r1;
  double err = 0.0;
  EvalStatus st = EvalStatus::Ok;
  Region base;
  if (x >= cfg.x_largex_min) {
    base = Region::LargeX;
    const ScaledEval a = r_large_x(x, tau, 0, cfg);
    const ScaledEval b = r_large_x(x, tau, 1, cfg);
    r0 = a.value;
    r1 = b.value;
    err = std::max(a.est_rel_err, b.est_rel_err);
    if (a.status != EvalStatus::Ok) st = a.status;
    if (b.status != EvalStatus::Ok) st = b.status;
  } else if (tau * std::sqrt((x - 1.0) / 2.0) <= cfg.series_cancel_max || tau < cfg.tau_kummer_min) {
    base = Region::SeriesNear1;
    const R01Series s = r01_series(x, tau, cfg);
    r0 = Scaled::from(s.r0);
    r1 = Scaled::from(s.r1);
    err = s.est_err;
    st = s.status;
  } else {
    base = Region::KummerLargeTau;
    const ScaledEval a = r_kummer(x, tau, 0, cfg.kummer_terms);
    const ScaledEval b = r_kummer(x, tau, 1, cfg.kummer_terms);
    r0 = a.value;
    r1 = b.value;
    err = std::max(a.est_rel_err, b.est_rel_err);
    if (a.status != EvalStatus::Ok) st = a.status;
    if (b.status != EvalStatus::Ok) st = b.status;
  }
  out.region = m <= 1 ? base : Region::Recurrence;
  out.status = st;
  if (m == 0) {
    out.rm = r0;
    out.rm1 = r1;
  } else {
    const RaiseResult rr = raise_order(r0, r1, 1, m + 1, x, tau, cfg);
    out.rm = rr.values[m];
    out.rm1 = rr.values[m + 1];
  }
  out.est_rel_err = err + 2.0 * m * kEps;
  return out;
}

EvalResult conicr(double x, int m, double tau, const NumericConfig& cfg) {
  EvalResult r;
  r.status = validate({x, m, tau}, FunctionKind::R);
  if (r.status != EvalStatus::Ok) return r;
  const RPair p = r_pair(x, m, tau, cfg);
  r.region = p.region;
  r.est_rel_err = p.est_rel_err;
  r.status = p.status == EvalStatus::Ok ? range_status(p.rm, cfg) : p.status;
  r.value = r.status == EvalStatus::Ok ? p.rm.to_double() : 0.0;
  return r;
}

}  // namespace conical
