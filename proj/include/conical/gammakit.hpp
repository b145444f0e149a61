#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "conical/common.hpp"

namespace conical {

namespace detail {

/// B_{2n} for n = 0..N-1 as exact fractions, generated at compile time.
template <int N>
constexpr std::array<double, N> bernoulli_b2n() {
  // Akiyama-Tanigawa on 128-bit fractions; exact for the sizes used here.
  using i128 = __int128;
  constexpr int M = 2 * N;
  i128 num[M + 1] = {};
  i128 den[M + 1] = {};
  auto gcd = [](i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  std::array<double, N> out{};
  for (int m = 0; m <= M; ++m) {
    num[m] = 1;
    den[m] = m + 1;
    for (int j = m; j >= 1; --j) {
      // a[j-1] = j * (a[j-1] - a[j])
      i128 n = num[j - 1] * den[j] - num[j] * den[j - 1];
      i128 d = den[j - 1] * den[j];
      n *= j;
      const i128 g = gcd(n, d);
      if (g != 0) {
        n /= g;
        d /= g;
      }
      num[j - 1] = n;
      den[j - 1] = d;
    }
    if (m % 2 == 0 && m / 2 < N) {
      out[m / 2] = static_cast<double>(num[0]) / static_cast<double>(den[0]);
    }
  }
  return out;
}

}  // namespace detail

/// psi(1/2 + i tau) split into real and imaginary parts.
struct DigammaValue {
  double re = 0.0;
  double im = 0.0;
};

/// Digamma on the line Re = 1/2 via upward shift to |alpha| >= 12 and the
/// Bernoulli asymptotic expansion (8 terms).
DigammaValue digamma_half(double tau);

/// psi(n + 1/2 + i tau) for integer n >= 0, same kernel.
DigammaValue digamma_shifted(int n, double tau);

/// ln |Gamma(m + 1/2 + i tau)|^2 for any integer m, overflow free.
double log_abs_gamma_sq(int m, double tau);

/// ln Gamma(re + i im) on the principal branch (continuous for re > 0).
struct ComplexLog {
  double re = 0.0;
  double im = 0.0;
};
ComplexLog log_gamma_complex(double re, double im);

/// G(mu, tau) = Gamma(1/2 + mu + i tau) / Gamma(1 + i tau) = H e^{i rho}.
struct GammaRatioPolar {
  double H = 0.0;
  double rho = 0.0;  // reduced to (-pi, pi]
  double log_H = 0.0;
};

GammaRatioPolar gamma_ratio_polar(int mu, double tau);

/// (u_k + i v_k) / w_k = 1 / (1 + i tau)_k, carried with binary exponents:
/// u_k = u[k] * 2^uv_exp[k], v_k = v[k] * 2^uv_exp[k], w_k = w[k] * 2^w_exp[k].
/// sigma[k] is the unwrapped argument of u_k + i v_k.
struct PochhammerPolarSeq {
  double tau = 0.0;
  std::vector<double> u, v, w, sigma;
  std::vector<std::int64_t> uv_exp, w_exp;

  int size() const { return static_cast<int>(u.size()); }
  /// r_k / w_k = 1 / |(1 + i tau)_k|.
  double r_over_w(int k) const;
  /// ln w_k.
  double log_w(int k) const;
  /// (u_k^2 + v_k^2) / w_k - 1, evaluated without leaving the scaled form.
  double norm_defect(int k) const;
};

/// Runs the three-term recurrences for u_k, v_k, w_k, k = 0..K.
PochhammerPolarSeq pochhammer_inverse_seq(double tau, int K);

}  // namespace conical
