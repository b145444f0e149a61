#include "conical/conical_p.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conical/conical_r.hpp"
#include "conical/detail/taylor_march.hpp"
#include "conical/gammakit.hpp"

namespace conical {

namespace {

constexpr double kEps = SeriesStop::kEps;
// Upper bound on hypergeometric terms on (-1, 1), where all terms are positive.
constexpr int kPSeriesMaxTerms = 2000;
// Series window on (-1, 1): (1 - x)/2 at most this.
constexpr double kPSeriesZMax = 0.6;
// Anchor for the x > 1 march: tau sqrt((x0-1)/2) equals this.
constexpr double kAnchorCancel = 1.5;
constexpr double kCircularAnchor = -0.2;
constexpr double kAnchorCancelMax = 30.0;

Scaled scaled_pow(double b, int n) {
  Scaled r = Scaled::from(1.0);
  Scaled p = Scaled::from(b);
  while (n > 0) {
    if (n & 1) r = r * p;
    p = p * p;
    n >>= 1;
  }
  return r;
}

// prod_{j<m} ((j+1/2)^2 + tau^2) / m!
Scaled pi_over_factorial(int m, double tau) {
  Scaled r = Scaled::from(1.0);
  for (int j = 0; j < m; ++j) r = r * (((j + 0.5) * (j + 0.5) + tau * tau) / (j + 1.0));
  return r;
}

double arccosh_x(double x) {
  const double xm1 = x - 1.0;
  return std::log1p(xm1 + std::sqrt(xm1 * (x + 1.0)));
}

}  // namespace

PValue p_series_scaled(double x, int m, double tau, int max_terms) {
  PValue out;
  out.region = Region::SeriesNear1;
  const double z = (1.0 - x) / 2.0;
  double term = 1.0;  // c_k z^k, rescaled by 2^e
  double f = 0.0, df = 0.0, af = 0.0, adf = 0.0;
  std::int64_t e = 0;
  SeriesStop stop_f, stop_df;
  bool done = false;
  int k = 0;
  for (; k < max_terms; ++k) {
    const double kh = k + 0.5;
    const double ratio = (kh * kh + tau * tau) / ((k + 1.0) * (k + 1.0 + m));
    // (k+1) c_{k+1} z^k
    const double dterm = (k + 1.0) * ratio * term;
    f += term;
    df += dterm;
    af += std::fabs(term);
    adf += std::fabs(dterm);
    const bool a = stop_f.update(term, f);
    const bool b = stop_df.update(dterm, df);
    if (a && b) {
      done = true;
      ++k;
      break;
    }
    term *= ratio * z;
    if (std::fabs(f) > 0x1p600) {
      term = std::ldexp(term, -600);
      f = std::ldexp(f, -600);
      df = std::ldexp(df, -600);
      af = std::ldexp(af, -600);
      adf = std::ldexp(adf, -600);
      e += 600;
    }
  }
  out.terms = k;
  if (!done || !std::isfinite(f) || !std::isfinite(df)) {
    out.status = EvalStatus::OverUnderflow;
    return out;
  }
  const double cancel = std::max(af / std::fabs(f), adf / std::fabs(df));
  out.est_rel_err = kEps * (8.0 + 2.0 * m + 4.0 * cancel);
  if (out.est_rel_err > 1e-2) out.status = EvalStatus::OverUnderflow;

  if (x == 1.0) {
    // P^0(1) = 1, P^m(1) = 0; only the m = 0 slope is finite and nonzero.
    out.pm = Scaled::from(m == 0 ? 1.0 : 0.0);
    if (m == 0) {
      out.pmd = Scaled{-0.5 * df, e};
      out.pmd.normalize();
    } else {
      out.pmd = Scaled::from(m == 1 ? INFINITY : 0.0);
    }
    return out;
  }
  const double q = std::fabs(x - 1.0) / (x + 1.0);
  Scaled pre = pi_over_factorial(m, tau) * scaled_pow(std::sqrt(q), m);
  pre.exp2 += e;
  const double x2m1 = (x - 1.0) * (x + 1.0);
  out.pm = pre * f;
  out.pmd = pre * (m * f / x2m1 - 0.5 * df);
  return out;
}

PSeriesResult p_series(double x, int m, double tau, const NumericConfig& cfg) {
  PSeriesResult r;
  if (!(x > -1.0 && x < 3.0) || m < 0) {
    r.status = EvalStatus::OutOfRange;
    return r;
  }
  const int cap = x < 1.0 ? kPSeriesMaxTerms : std::max(cfg.series_max_terms, 1000);
  const PValue v = p_series_scaled(x, m, tau, cap);
  r.est_err = v.est_rel_err;
  r.status = v.status;
  if (r.status == EvalStatus::Ok) r.status = range_status(v.pm, cfg);
  if (r.status == EvalStatus::Ok) {
    r.pm = v.pm.to_double();
    r.pmd = v.pmd.to_double();
  }
  return r;
}

double p_negative_order_log_factor(int m, double tau) {
  // ln pi - ln cosh(pi tau) - ln |Gamma(m+1/2+i tau)|^2
  const double pt = std::numbers::pi * tau;
  const double lcosh = pt + std::log1p(std::exp(-2.0 * pt)) - std::numbers::ln2;
  return std::log(std::numbers::pi) - lcosh - log_abs_gamma_sq(m, tau);
}

EvalResult p_negative_order(double pm, int m, double tau, const NumericConfig& cfg) {
  EvalResult r;
  r.region = Region::SeriesNear1;
  if (pm == 0.0) return r;
  // pi / (cosh(pi tau) |Gamma(1/2 + i tau)|^2) = 1, so the factor is the
  // plain product 1 / prod_{j<m} ((j+1/2)^2 + tau^2). Flipping back divides
  // by the same product, which keeps the round trip at rounding level.
  const int n = m < 0 ? -m : m;
  Scaled prod = Scaled::from(1.0);
  for (int j = 0; j < n; ++j) prod = prod * ((j + 0.5) * (j + 0.5) + tau * tau);
  const Scaled v = m >= 0 ? Scaled::from(pm) / prod : Scaled::from(pm) * prod;
  r.status = range_status(v, cfg);
  if (r.status != EvalStatus::Ok) return r;
  r.value = v.to_double();
  r.est_rel_err = kEps * (1.0 + n);
  return r;
}

namespace {

// sum |c_k z^k| / |sum c_k z^k| for the hypergeometric factor, x > 1.
double series_cancellation(double x, int m, double tau) {
  const double z = (1.0 - x) / 2.0;
  double term = 1.0, f = 0.0, af = 0.0;
  SeriesStop stop;
  for (int k = 0; k < kPSeriesMaxTerms; ++k) {
    f += term;
    af += std::fabs(term);
    if (stop.update(term, f) || af > 1e300) break;
    const double kh = k + 0.5;
    term *= (kh * kh + tau * tau) / ((k + 1.0) * (k + 1.0 + m)) * z;
  }
  return af / std::fabs(f);
}

}  // namespace

double p_march_anchor(double x_target, double tau, int m, const NumericConfig& cfg) {
  if (x_target < 1.0) return kCircularAnchor;
  const double xmax = std::min(cfg.x_series_max, x_target);
  double x0 = xmax;
  if (tau > 0.0) x0 = std::min(x0, 1.0 + 2.0 * (kAnchorCancel / tau) * (kAnchorCancel / tau));
  // Push the anchor outward while the series stays well conditioned; large
  // orders damp the cancellation and the march is costlier near x = 1.
  while (x0 < xmax) {
    const double next = std::min(xmax, 1.0 + 2.0 * (x0 - 1.0));
    if (series_cancellation(next, m, tau) > kAnchorCancelMax) break;
    x0 = next;
  }
  return x0;
}

PValue p_march_scaled(double x_target, int m, double tau, const NumericConfig& cfg) {
  using detail::MarchKind;
  PValue out;
  out.region = Region::OdeMarch;
  const double x0 = p_march_anchor(x_target, tau, m, cfg);
  const PValue seed = p_series_scaled(x0, m, tau, kPSeriesMaxTerms);
  if (seed.status != EvalStatus::Ok) {
    out.status = seed.status;
    return out;
  }
  const bool hyper = x_target > 1.0;
  const MarchKind kind = hyper ? MarchKind::Hyperbolic : MarchKind::Circular;
  // Common exponent for (P, P'); the marcher works on mantissas.
  const std::int64_t e0 = seed.pm.exp2;
  const double p0 = seed.pm.mant;
  const double dp0 = std::ldexp(seed.pmd.mant, static_cast<int>(std::clamp<std::int64_t>(seed.pmd.exp2 - e0, -2000, 2000)));

  double s0, s1, sn0, cs0;
  if (hyper) {
    s0 = arccosh_x(x0);
    s1 = arccosh_x(x_target);
    sn0 = std::sqrt((x0 - 1.0) * (x0 + 1.0));
    cs0 = x0;
  } else {
    s0 = std::acos(x0);
    s1 = std::acos(x_target);
    sn0 = std::sqrt((1.0 - x0) * (1.0 + x0));
    cs0 = x0;
  }
  // w(s) = P(x(s)); dw/ds = dP/dx * dx/ds with dx/ds = sinh s or -sin s.
  const double dw0 = hyper ? dp0 * sn0 : -dp0 * sn0;
  const double r0 = std::sqrt(sn0);
  detail::MarchState st;
  st.u = r0 * p0;
  st.du = r0 * dw0 + 0.5 * cs0 / r0 * p0;
  st.exp2 = e0;
  detail::taylor_march(kind, tau, m, s0, s1, st);
  out.terms = st.steps;

  double sn1, cs1;
  if (hyper) {
    sn1 = std::sqrt((x_target - 1.0) * (x_target + 1.0));
    cs1 = x_target;
  } else {
    sn1 = std::sqrt((1.0 - x_target) * (1.0 + x_target));
    cs1 = x_target;
  }
  const double r1 = std::sqrt(sn1);
  const double w = st.u / r1;
  const double dw = st.du / r1 - 0.5 * cs1 / sn1 * w;
  const double dp = hyper ? dw / sn1 : -dw / sn1;
  out.pm = Scaled{w, st.exp2};
  out.pm.normalize();
  out.pmd = Scaled{dp, st.exp2};
  out.pmd.normalize();
  out.est_rel_err = seed.est_rel_err + kEps * 8.0 * (st.steps + 4);
  if (!st.ok || !std::isfinite(w) || !std::isfinite(dp)) out.status = EvalStatus::OverUnderflow;
  return out;
}

PDeriv p_ode_march(double x_target, int m, double tau, const NumericConfig& cfg) {
  PDeriv r;
  if (!(x_target > 1.0 && x_target <= 100.0) || m < 0 || !(tau >= 0.0)) {
    r.status = EvalStatus::OutOfRange;
    return r;
  }
  const PValue v = p_march_scaled(x_target, m, tau, cfg);
  r.status = v.status == EvalStatus::Ok ? range_status(v.pm, cfg) : v.status;
  if (r.status == EvalStatus::Ok) {
    r.pm = v.pm.to_double();
    r.pmd = v.pmd.to_double();
  }
  return r;
}

PValue p_eval(double x, int m, double tau, const NumericConfig& cfg) {
  if (x <= 1.0) {
    if ((1.0 - x) / 2.0 <= kPSeriesZMax) return p_series_scaled(x, m, tau, kPSeriesMaxTerms);
    return p_march_scaled(x, m, tau, cfg);
  }
  if (x <= cfg.x_series_max && tau * std::sqrt((x - 1.0) / 2.0) <= cfg.series_cancel_max) {
    return p_series_scaled(x, m, tau, std::max(cfg.series_max_terms, 1000));
  }
  return p_march_scaled(x, m, tau, cfg);
}

EvalResult conicp(double x, int m, double tau, const NumericConfig& cfg) {
  EvalResult r;
  r.status = validate({x, m, tau}, FunctionKind::P);
  if (r.status != EvalStatus::Ok) return r;
  const PValue v = p_eval(x, m, tau, cfg);
  r.region = v.region;
  r.est_rel_err = v.est_rel_err;
  r.status = v.status == EvalStatus::Ok ? range_status(v.pm, cfg) : v.status;
  r.value = r.status == EvalStatus::Ok ? v.pm.to_double() : 0.0;
  return r;
}

ConicPRScaled conicpr_scaled(double x, int m, double tau, const NumericConfig& cfg) {
  ConicPRScaled out;
  out.status = validate({x, m, tau}, FunctionKind::PR);
  if (out.status != EvalStatus::Ok) return out;
  const PValue p0 = p_eval(x, m, tau, cfg);
  const PValue p1 = p_eval(x, m + 1, tau, cfg);
  const RPair r = r_pair(x, m, tau, cfg);
  out.p_region = p0.region;
  out.r_region = r.region;
  for (EvalStatus s : {p0.status, p1.status, r.status}) {
    if (s != EvalStatus::Ok) out.status = s;
  }
  const double sq = std::sqrt((x - 1.0) * (x + 1.0));
  const double a = m * x / ((x - 1.0) * (x + 1.0));
  out.pm = p0.pm;
  out.rm = r.rm;
  out.pmd = p0.pm * a - p1.pm * (1.0 / sq);
  out.rmd = r.rm * a - r.rm1 * (1.0 / sq);
  out.est_rel_err = std::max({p0.est_rel_err, p1.est_rel_err, r.est_rel_err});
  return out;
}

ConicPR conicpr(double x, int m, double tau, const NumericConfig& cfg) {
  ConicPR out;
  const ConicPRScaled s = conicpr_scaled(x, m, tau, cfg);
  bool ok = s.status == EvalStatus::Ok;
  for (const Scaled* v : {&s.pm, &s.pmd, &s.rm, &s.rmd}) {
    if (ok && range_status(*v, cfg) != EvalStatus::Ok) ok = false;
  }
  if (!ok) {
    out.status = EvalStatus::OverUnderflow;
    return out;
  }
  out.pm = s.pm.to_double();
  out.pmd = s.pmd.to_double();
  out.rm = s.rm.to_double();
  out.rmd = s.rmd.to_double();
  return out;
}

}  // namespace conical
