#include "conical/oracle/oracle.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace conical::oracle {

namespace {

BigReal pi() { return boost::math::constants::pi<BigReal>(); }
BigReal euler() { return boost::math::constants::euler<BigReal>(); }

BigReal eps_for(unsigned digits) { return pow(BigReal(10), -static_cast<int>(digits)); }

// B_{2n} = (-1)^{n+1} 2 (2n)! zeta(2n) / (2 pi)^{2n}
BigReal bernoulli_2n(unsigned n) {
  BigReal z;
  mpfr_zeta_ui(z.backend().data(), 2 * n, MPFR_RNDN);
  BigReal f = 1;
  for (unsigned j = 2; j <= 2 * n; ++j) f *= j;
  BigReal b = 2 * f * z / pow(2 * pi(), 2 * n);
  return (n % 2 == 1) ? b : BigReal(-b);
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigComplex inverse(const BigComplex& a) {
  BigReal d = a.re * a.re + a.im * a.im;
  return {a.re / d, -a.im / d};
}
BigComplex clog(const BigComplex& a) { return {log(sqrt(a.re * a.re + a.im * a.im)), atan2(a.im, a.re)}; }
BigReal cabs(const BigComplex& a) { return sqrt(a.re * a.re + a.im * a.im); }

constexpr double kShift = 40.0;

unsigned current_digits() { return BigReal::default_precision(); }

}  // namespace

BigComplex digamma_half(const BigReal& tau) {
  const BigReal eps = eps_for(current_digits() + 5);
  BigComplex alpha{BigReal(0.5), tau};
  BigComplex shift{BigReal(0), BigReal(0)};
  while (cabs(alpha) < kShift) {
    shift = shift + inverse(alpha);
    alpha.re += 1;
  }
  const BigComplex ia = inverse(alpha);
  const BigComplex ia2 = ia * ia;
  BigComplex r = clog(alpha);
  r.re -= ia.re / 2;
  r.im -= ia.im / 2;
  BigComplex pw = ia2;
  for (unsigned k = 1; k < 200; ++k) {
    const BigReal c = bernoulli_2n(k) / (2 * k);
    BigComplex t{c * pw.re, c * pw.im};
    r = r - t;
    if (cabs(t) < eps * cabs(r)) break;
    pw = pw * ia2;
  }
  return r - shift;
}

BigComplex log_gamma(const BigReal& re, const BigReal& im) {
  const BigReal eps = eps_for(current_digits() + 5);
  BigComplex z{re, im};
  BigComplex shift{BigReal(0), BigReal(0)};
  while (cabs(z) < kShift) {
    shift = shift + clog(z);
    z.re += 1;
  }
  const BigComplex lz = clog(z);
  BigComplex r{(z.re - BigReal(0.5)) * lz.re - z.im * lz.im - z.re + log(2 * pi()) / 2,
               (z.re - BigReal(0.5)) * lz.im + z.im * lz.re - z.im};
  const BigComplex iz = inverse(z);
  const BigComplex iz2 = iz * iz;
  BigComplex pw = iz;
  for (unsigned k = 1; k < 200; ++k) {
    const BigReal c = bernoulli_2n(k) / (BigReal(2 * k) * (2 * k - 1));
    BigComplex t{c * pw.re, c * pw.im};
    r = r + t;
    if (cabs(t) < eps * cabs(r)) break;
    pw = pw * iz2;
  }
  return r - shift;
}

BigReal log_abs_gamma_sq(int m, const BigReal& tau) {
  if (m >= 0) return 2 * log_gamma(BigReal(0.5) + m, tau).re;
  BigReal l = 2 * log_gamma(BigReal(0.5), tau).re;
  for (int j = m; j < 0; ++j) l -= log((BigReal(j) + 0.5) * (BigReal(j) + 0.5) + tau * tau);
  return l;
}

BigPolar gamma_ratio(int mu, const BigReal& tau) {
  const BigComplex a = log_gamma(BigReal(0.5) + mu, tau);
  const BigComplex b = log_gamma(BigReal(1), tau);
  return {exp(a.re - b.re), a.im - b.im};
}

BigBessel bessel(const BigReal& z_in, unsigned digits) {
  const double zd = static_cast<double>(z_in);
  const unsigned work = digits + 10 + static_cast<unsigned>(zd / std::log(10.0) + 1);
  PrecisionScope scope(work);
  const BigReal z(z_in);
  const BigReal eps = eps_for(work);
  const BigReal hz = z / 2;
  const BigReal q = hz * hz;
  BigReal t0 = 1, t1 = 1, sj0 = 1, sj1 = 1, sy0 = 0, sy1 = 1, h = 0;
  for (int k = 1; k < 100000; ++k) {
    const BigReal hk = h + BigReal(1) / k;
    const BigReal hk1 = hk + BigReal(1) / (k + 1);
    t0 = -t0 * q / (BigReal(k) * k);
    t1 = -t1 * q / (BigReal(k) * (k + 1));
    sj0 += t0;
    sj1 += t1;
    sy0 -= hk * t0;
    sy1 += (hk + hk1) * t1;
    h = hk;
    if (k > zd && abs(t0) < eps && abs(t1) < eps) break;
  }
  const BigReal l = log(hz) + euler();
  BigBessel r;
  r.j0 = sj0;
  r.j1 = hz * sj1;
  r.y0 = 2 / pi() * (l * r.j0 + sy0);
  r.y1 = 2 / pi() * l * r.j1 - 2 / (pi() * z) - hz * sy1 / pi();
  return r;
}

BigR01 r01(const BigReal& x_in, const BigReal& tau_in, unsigned digits) {
  const double xd = static_cast<double>(x_in);
  const double td = static_cast<double>(tau_in);
  if (!(x_in > 1 && xd < 3.0)) throw std::domain_error("oracle r01: x outside (1, 3)");
  const unsigned guard = static_cast<unsigned>(2.0 * td * std::sqrt((xd - 1.0) / 2.0) / std::log(10.0)) + 1;
  const unsigned work = digits + guard + 10;
  PrecisionScope scope(work);
  const BigReal x(x_in), tau(tau_in);
  const BigReal eps = eps_for(work);

  const BigReal z = (1 - x) / 2;
  const BigReal w2 = (x - 1) / (x + 1);
  const BigReal lnw = log(w2) / 2;
  const BigReal x2m1 = x * x - 1;
  const BigReal rpsi = digamma_half(tau).re;
  const BigReal g = euler();

  BigReal c = 1;     // (1/2 - i tau)_k (1/2 + i tau)_k / (k!)^2
  BigReal zk = 1;    // z^k
  BigReal hk = 0;    // H_k
  BigReal s0 = 0, s1 = 0, d0 = 0, ds1 = 0;
  int small = 0;
  for (int k = 0; k < 100000; ++k) {
    const BigReal A = hk - g - rpsi - lnw;  // psi(k+1) - Re psi(1/2 + i tau) - ln w
    const BigReal zkm1 = zk / z;
    const BigReal t0 = c * zk * A;
    // d/dx [z^k A_k] with dz/dx = -1/2 and dA_k/dx = -1/(x^2 - 1)
    const BigReal dt0 = c * (BigReal(k) * zkm1 * (-A / 2) - zk / x2m1);
    const BigReal br = (w2 - 1) / 2 + k * A;
    const BigReal t1 = c * zkm1 * br / 2;
    // d/dx of z^{k-1} * br / 2
    const BigReal dbr = 1 / ((x + 1) * (x + 1)) - BigReal(k) / x2m1;
    const BigReal dt1 = c * ((k - 1) * (zkm1 / z) * (-br / 4) + zkm1 * dbr / 2);
    s0 += t0;
    d0 += dt0;
    s1 += t1;
    ds1 += dt1;
    if (abs(t0) < eps * abs(s0) && abs(t1) < eps * abs(s1)) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
    const BigReal kk = BigReal(k) + 0.5;
    c *= (kk * kk + tau * tau) / ((BigReal(k) + 1) * (BigReal(k) + 1));
    zk *= z;
    hk += BigReal(1) / (k + 1);
  }
  const BigReal sq = sqrt(x2m1);
  BigR01 r;
  r.r0 = s0;
  r.dr0 = d0;
  r.r1 = sq * s1;
  r.dr1 = x / sq * s1 + sq * ds1;
  return r;
}

BigValue p_series(const BigReal& x_in, int m, const BigReal& tau_in, unsigned digits) {
  const double xd = static_cast<double>(x_in);
  const double td = static_cast<double>(tau_in);
  if (!(xd > -1.0 && xd < 3.0)) throw std::domain_error("oracle p_series: x outside (-1, 3)");
  unsigned guard = 0;
  if (xd > 1.0) guard = static_cast<unsigned>(2.0 * td * std::sqrt((xd - 1.0) / 2.0) / std::log(10.0)) + 1;
  const unsigned work = digits + guard + 10;
  PrecisionScope scope(work);
  const BigReal x(x_in), tau(tau_in);
  const BigReal eps = eps_for(work);
  const BigReal z = (1 - x) / 2;

  BigReal c = 1, zk = 1, f = 0, df = 0;
  int small = 0;
  for (int k = 0; k < 1000000; ++k) {
    const BigReal t = c * zk;
    f += t;
    // dF/dz term: (k+1) c_{k+1} z^k
    const BigReal kk = BigReal(k) + 0.5;
    const BigReal cn = c * (kk * kk + tau * tau) / ((BigReal(k) + 1) * (BigReal(k) + 1 + m));
    const BigReal dt = (k + 1) * cn * zk;
    df += dt;
    if (abs(t) <= eps * abs(f) && abs(dt) <= eps * abs(df)) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
    c = cn;
    zk *= z;
  }
  if (xd == 1.0) {
    BigValue v;
    v.value = m == 0 ? 1 : 0;
    v.deriv = m == 0 ? BigReal(-df / 2) : BigReal(0);
    return v;
  }
  BigReal pref = 1;
  for (int j = 0; j < m; ++j) pref *= (BigReal(j) + 0.5) * (BigReal(j) + 0.5) + tau * tau;
  for (int j = 2; j <= m; ++j) pref /= j;
  const BigReal q = abs(x - 1) / (x + 1);
  pref *= pow(q, BigReal(m) / 2);
  BigValue v;
  v.value = pref * f;
  v.deriv = pref * (m * f / (x * x - 1) - df / 2);
  return v;
}

namespace {

struct State {
  BigReal w, dw;
};

// One Taylor step of (1-x^2)^2 w'' - 2x(1-x^2) w' - (lambda (1-x^2) + m^2) w = 0
// from x0 to x0 + h on every state; polynomial coefficients give an exact
// recursion for the scaled coefficients V_k = W_k h^k.
void taylor_step(const BigReal& x0, const BigReal& h, const BigReal& lambda, int m, const BigReal& tol,
                 std::vector<State>& states) {
  const BigReal p0 = 1 - x0 * x0, p1 = -2 * x0, p2 = -1;
  const BigReal a[5] = {p0 * p0, 2 * p0 * p1, p1 * p1 + 2 * p0 * p2, 2 * p1 * p2, p2 * p2};
  const BigReal b[4] = {-2 * x0 * p0, -2 * (x0 * p1 + p0), -2 * (x0 * p2 + p1), -2 * p2};
  const BigReal c[3] = {-(lambda * p0 + m * m), -lambda * p1, -lambda * p2};
  BigReal ah[5], bh[4], ch[3];
  BigReal hp = 1;
  for (int j = 0; j < 5; ++j) {
    ah[j] = a[j] * hp;
    if (j < 4) bh[j] = b[j] * hp * h;
    if (j < 3) ch[j] = c[j] * hp * h * h;
    hp *= h;
  }
  for (State& s : states) {
    std::vector<BigReal> V;
    V.reserve(256);
    V.push_back(s.w);
    V.push_back(s.dw * h);
    BigReal val = V[0] + V[1];
    BigReal der = V[1];
    for (int n = 0; n < 20000; ++n) {
      BigReal acc = 0;
      for (int j = 1; j <= 4; ++j) {
        const int i = n - j + 2;
        if (i >= 0) acc += ah[j] * (BigReal(i) * (i - 1)) * V[i];
      }
      for (int j = 0; j <= 3; ++j) {
        const int i = n - j + 1;
        if (i >= 0) acc += bh[j] * i * V[i];
      }
      for (int j = 0; j <= 2; ++j) {
        const int i = n - j;
        if (i >= 0) acc += ch[j] * V[i];
      }
      const BigReal vn = -acc / (ah[0] * (BigReal(n) + 2) * (n + 1));
      V.push_back(vn);
      val += vn;
      der += (n + 2) * vn;
      const BigReal scale = abs(val) + abs(der);
      if (n > 4 && abs(vn) + abs(V[V.size() - 2]) < tol * scale) break;
    }
    s.w = val;
    s.dw = der / h;
  }
}

int march_states(const BigReal& x_from, const BigReal& x_to, const BigReal& tau, int m, unsigned work,
                 std::vector<State>& states) {
  const BigReal lambda = tau * tau + BigReal(0.25);
  const BigReal tol = eps_for(work);
  BigReal x = x_from;
  const int dir = x_to > x_from ? 1 : -1;
  int steps = 0;
  while (dir * (x_to - x) > 0) {
    const double xd = static_cast<double>(x);
    const double radius = std::min(std::fabs(xd - 1.0), std::fabs(xd + 1.0));
    const double q = std::fabs(xd * xd - 1.0);
    const double kloc = std::sqrt(std::fabs(static_cast<double>(lambda) * q) + double(m) * m) / q;
    const double hd = std::min(0.35 * radius, 3.0 / kloc);
    BigReal h = dir * BigReal(hd);
    if (dir * (x + h - x_to) > 0) h = x_to - x;
    taylor_step(x, h, lambda, m, tol, states);
    x += h;
    ++steps;
  }
  return steps;
}

unsigned series_guard(double x, double tau) {
  if (x <= 1.0) return 0;
  return static_cast<unsigned>(2.0 * tau * std::sqrt((x - 1.0) / 2.0) / std::log(10.0)) + 1;
}

double anchor_for(double x_target, Function f) {
  if (f == Function::P && x_target <= 1.0) return std::max(x_target, 0.0);
  return std::min(x_target, 1.5);
}

State r_seed(const BigReal& x, int m, const BigReal& tau, unsigned digits) {
  const BigR01 s = r01(x, tau, digits);
  if (m == 0) return {s.r0, s.dr0};
  if (m == 1) return {s.r1, s.dr1};
  const BigReal sq = sqrt(x * x - 1);
  // R^{k+1} = (2 k x / sqrt(x^2-1)) R^k - ((k - 1/2)^2 + tau^2) R^{k-1}
  BigReal prev = s.r0, cur = s.r1;
  for (int k = 1; k <= m; ++k) {
    const BigReal km = BigReal(k) - 0.5;
    const BigReal next = 2 * k * x / sq * cur - (km * km + tau * tau) * prev;
    prev = cur;
    cur = next;
  }
  // prev = R^m, cur = R^{m+1}
  return {prev, -cur / sq + m * x / (x * x - 1) * prev};
}

}  // namespace

MarchResult march(double x_target, int m, double tau, Function f, unsigned digits) {
  if (!(x_target <= 100.0) || (f == Function::R && !(x_target > 1.0)) || !(x_target > -1.0)) {
    throw std::domain_error("oracle march: x outside supported range");
  }
  const double anchor = anchor_for(x_target, f);
  // The order recurrence at the anchor cancels about one digit per step.
  const unsigned rec_guard = f == Function::R ? static_cast<unsigned>(m) : 0u;
  const unsigned work = digits + series_guard(anchor, tau) + 15 + rec_guard;
  PrecisionScope scope(work);
  const BigReal xa(anchor), xt(x_target), t(tau);
  std::vector<State> st(1);
  if (f == Function::P) {
    const BigValue s = p_series(xa, m, t, work);
    st[0] = {s.value, s.deriv};
  } else {
    st[0] = r_seed(xa, m, t, work);
  }
  MarchResult r;
  r.steps = march_states(xa, xt, t, m, work, st);
  r.value = st[0].w;
  r.deriv = st[0].dw;
  r.anchor = anchor;
  r.working_digits = work;
  return r;
}

AbelCheck abel_check(double x_target, int m, double tau, unsigned digits) {
  const double anchor = anchor_for(x_target, Function::R);
  const unsigned work = digits + series_guard(anchor, tau) + 15 + static_cast<unsigned>(m);
  PrecisionScope scope(work);
  const BigReal xa(anchor), xt(x_target), t(tau);
  const BigValue p = p_series(xa, m, t, work);
  std::vector<State> st{{p.value, p.deriv}, r_seed(xa, m, t, work)};
  auto wr = [&](const BigReal& x) { return (1 - x * x) * (st[0].w * st[1].dw - st[0].dw * st[1].w); };
  AbelCheck a;
  a.w_anchor = wr(xa);
  march_states(xa, xt, t, m, work, st);
  a.w_target = wr(xt);
  return a;
}

double common_digits(const BigReal& a, const BigReal& b) {
  if (a == b) return 1e9;
  const BigReal d = abs(a - b) / abs(b);
  return -static_cast<double>(log10(d));
}

}  // namespace conical::oracle
