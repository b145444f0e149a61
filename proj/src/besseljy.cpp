#include "conical/besseljy.hpp"

#include <cmath>
#include <numbers>

#include "conical/detail/ddouble.hpp"

namespace conical {

namespace {

using detail::DDouble;
constexpr double kEuler = 0.57721566490153286061;

// Hankel P, Q for order n in {0, 1}; terms run until they stop decreasing.
void hankel_pq(int n, double z, double& p, double& q) {
  const double mu = 4.0 * n * n;
  const double iz8 = 1.0 / (8.0 * z);
  p = 1.0;
  q = 0.0;
  double a = 1.0;  // a_k(n) / z^k, signless accumulation below
  double last = INFINITY;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) * iz8 / k;
    const double mag = std::fabs(a);
    if (mag > last) break;
    last = mag;
    // a_k enters P for even k with sign (-1)^{k/2}, Q for odd k with (-1)^{(k-1)/2}
    if (k % 2 == 0) {
      p += ((k / 2) % 2 == 0 ? a : -a);
    } else {
      q += (((k - 1) / 2) % 2 == 0 ? a : -a);
    }
    if (mag < 1e-18 * std::fabs(p)) break;
  }
}

}  // namespace

BesselQuad bessel_series(double z) {
  const DDouble half_z = DDouble(z) * DDouble(0.5);
  const DDouble q = half_z * half_z;

  DDouble t0(1.0);  // (-q)^k / (k!)^2
  DDouble t1(1.0);  // (-q)^k / (k! (k+1)!)
  DDouble sj0(1.0), sj1(1.0), sy0(0.0), sy1(1.0);  // sy1 starts with H_0 + H_1 = 1
  DDouble h(0.0);
  for (int k = 1; k < 200; ++k) {
    const DDouble hk = h + DDouble(1.0) / DDouble(static_cast<double>(k));
    const DDouble hk1 = hk + DDouble(1.0) / DDouble(static_cast<double>(k + 1));
    t0 = -(t0 * q) / DDouble(static_cast<double>(k) * k);
    t1 = -(t1 * q) / DDouble(static_cast<double>(k) * (k + 1));
    sj0 += t0;
    sj1 += t1;
    sy0 -= hk * t0;  // (-1)^{k+1} H_k q^k / (k!)^2
    sy1 += (hk + hk1) * t1;
    h = hk;
    if (std::fabs(t0.hi()) < 1e-34 && std::fabs(t1.hi()) < 1e-34 && k > 2) break;
  }
  const double j0 = sj0.to_double();
  const double j1 = (half_z * sj1).to_double();
  const double l = std::log(0.5 * z) + kEuler;
  const double two_pi = 2.0 / std::numbers::pi;
  BesselQuad b;
  b.j0 = j0;
  b.j1 = j1;
  b.y0 = two_pi * (l * j0 + sy0.to_double());
  b.y1 = two_pi * (l * j1) - two_pi / z - (half_z * sy1).to_double() / std::numbers::pi;
  return b;
}

BesselQuad bessel_asymptotic(double z) {
  const double c = std::cos(z), s = std::sin(z);
  const double amp = std::sqrt(2.0 / (std::numbers::pi * z));
  constexpr double r2 = 0.70710678118654752440;
  double p0, q0, p1, q1;
  hankel_pq(0, z, p0, q0);
  hankel_pq(1, z, p1, q1);
  // chi_0 = z - pi/4, chi_1 = z - 3 pi/4
  const double c0 = r2 * (c + s), s0 = r2 * (s - c);
  const double c1 = r2 * (s - c), s1 = -r2 * (s + c);
  BesselQuad b;
  b.j0 = amp * (p0 * c0 - q0 * s0);
  b.y0 = amp * (p0 * s0 + q0 * c0);
  b.j1 = amp * (p1 * c1 - q1 * s1);
  b.y1 = amp * (p1 * s1 + q1 * c1);
  return b;
}

BesselQuad bessel_j0y0_j1y1(double z) {
  if (!(z > 0.0) || z > kBesselMaxArg) {
    BesselQuad b;
    b.status = EvalStatus::OutOfRange;
    return b;
  }
  return z <= kBesselSwitch ? bessel_series(z) : bessel_asymptotic(z);
}

BesselPair bessel_jy_int(int n, double z, const BesselQuad& base) {
  const int an = n < 0 ? -n : n;
  const double sign = (n < 0 && (an % 2 == 1)) ? -1.0 : 1.0;
  if (an == 0) return {base.j0, base.y0};
  if (an == 1) return {sign * base.j1, sign * base.y1};

  double ym = base.y0, y = base.y1;
  for (int k = 1; k < an; ++k) {
    const double yn = (2.0 * k / z) * y - ym;
    ym = y;
    y = yn;
  }

  double j;
  if (an < z) {
    double jm = base.j0, jc = base.j1;
    for (int k = 1; k < an; ++k) {
      const double jn = (2.0 * k / z) * jc - jm;
      jm = jc;
      jc = jn;
    }
    j = jc;
  } else {
    const int start = an + 20 + static_cast<int>(std::sqrt(40.0 * an));
    double jp = 0.0, jc = 1e-300, jn_val = 0.0, j1r = 0.0;
    for (int k = start; k >= 1; --k) {
      const double jm = (2.0 * k / z) * jc - jp;
      jp = jc;
      jc = jm;
      if (std::fabs(jc) > 1e250) {
        jc *= 1e-250;
        jp *= 1e-250;
        jn_val *= 1e-250;
        j1r *= 1e-250;
      }
      if (k - 1 == an) jn_val = jc;
      if (k == 2) j1r = jc;
    }
    const double j0r = jc;
    j = std::fabs(base.j0) >= std::fabs(base.j1) ? jn_val * (base.j0 / j0r) : jn_val * (base.j1 / j1r);
  }
  return {sign * j, sign * y};
}

}  // namespace conical
