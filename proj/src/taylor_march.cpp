#include "conical/detail/taylor_march.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace conical::detail {

namespace {

constexpr int kMaxOrder = 60;
constexpr double kTermTol = 1e-18;

// Taylor coefficients (times h^n) of g(s0 + h r) = 1 / S(s0 + h r)^2.
void inverse_square(MarchKind kind, double s0, double h, int n, std::array<double, kMaxOrder + 1>& g) {
  std::array<double, kMaxOrder + 1> S{}, Q{};
  const double a = kind == MarchKind::Hyperbolic ? std::sinh(s0) : std::sin(s0);
  const double b = kind == MarchKind::Hyperbolic ? std::cosh(s0) : std::cos(s0);
  double hk = 1.0;
  for (int k = 0; k <= n; ++k) {
    double d;
    if (kind == MarchKind::Hyperbolic) {
      d = (k % 2 == 0) ? a : b;
    } else {
      const int r = k % 4;
      d = r == 0 ? a : r == 1 ? b : r == 2 ? -a : -b;
    }
    S[k] = d * hk;
    hk *= h / (k + 1);
  }
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += S[j] * S[k - j];
    Q[k] = s;
  }
  g[0] = 1.0 / Q[0];
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += Q[j] * g[k - j];
    g[k] = -s / Q[0];
  }
}

void rescale(MarchState& st) {
  int e = 0;
  std::frexp(std::max(std::fabs(st.u), std::fabs(st.du)), &e);
  if (e > 256 || e < -256) {
    st.u = std::ldexp(st.u, -e);
    st.du = std::ldexp(st.du, -e);
    st.exp2 += e;
  }
}

}  // namespace

void taylor_march(MarchKind kind, double tau, int m, double s0, double s1, MarchState& st) {
  const double A = kind == MarchKind::Hyperbolic ? tau * tau : -tau * tau;
  const double c = 0.25 - static_cast<double>(m) * m;
  const double dir = s1 >= s0 ? 1.0 : -1.0;
  // position carried as s + s_lo so that the steps add up to s1 - s0 exactly;
  // at tau ~ 100 a drift of a few ulp in s is a visible phase error
  double s = s0, s_lo = 0.0;
  std::array<double, kMaxOrder + 1> g{}, V{};
  while (dir * (s1 - s) > 0.0) {
    double dist = s;
    if (kind == MarchKind::Circular) dist = std::min(s, std::numbers::pi - s);
    const double sn = kind == MarchKind::Hyperbolic ? std::sinh(s) : std::sin(s);
    // Both parts of the coefficient enter the recursion separately, so the
    // step is sized on their magnitudes, not on the net value.
    const double omega = std::sqrt(std::fabs(A) + std::fabs(c) / (sn * sn));
    double h = std::min(0.25 * dist, 3.0 / omega);
    bool last = false;
    const double left = dir * ((s1 - s) - s_lo);
    if (h >= left) {
      h = left;
      last = true;
    }
    h *= dir;
    inverse_square(kind, s, h, kMaxOrder, g);
    const double h2 = h * h;
    V[0] = st.u;
    V[1] = st.du * h;
    double val = V[0] + V[1];
    double der = V[1];
    const double scale = std::fabs(V[0]) + std::fabs(V[1]);
    int small = 0;
    int n = 0;
    for (; n + 2 <= kMaxOrder; ++n) {
      double conv = 0.0;
      for (int j = 0; j <= n; ++j) conv += g[j] * V[n - j];
      const double v = -h2 * (A * V[n] + c * conv) / ((n + 2.0) * (n + 1.0));
      V[n + 2] = v;
      val += v;
      der += (n + 2) * v;
      if (std::fabs(v) * (n + 2) <= kTermTol * (scale + std::fabs(val))) {
        if (++small >= 2) break;
      } else {
        small = 0;
      }
    }
    if (n + 2 > kMaxOrder) st.ok = false;
    st.u = val;
    st.du = der / h;
    rescale(st);
    ++st.steps;
    if (last) break;
    const double t = s + h;
    const double bb = t - s;
    s_lo += (s - (t - bb)) + (h - bb);
    s = t;
  }
}

}  // namespace conical::detail
