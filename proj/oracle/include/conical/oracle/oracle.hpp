#pragma once

// Extended-precision reference evaluators. Slow by construction; used to
// freeze fixtures and to check the binary64 library from an independent route.

#include <boost/multiprecision/mpfr.hpp>

namespace conical::oracle {

using BigReal = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 60;

/// Sets the default MPFR precision (decimal digits) for the current scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(BigReal::default_precision()) {
    BigReal::default_precision(digits);
  }
  ~PrecisionScope() { BigReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct BigComplex {
  BigReal re, im;
};

/// psi(1/2 + i tau): shift to |alpha| >= 40, Bernoulli terms from zeta(2n).
BigComplex digamma_half(const BigReal& tau);

/// ln Gamma(z) by shifted Stirling series, continuous branch for Re z > 0.
BigComplex log_gamma(const BigReal& re, const BigReal& im);

/// ln |Gamma(m + 1/2 + i tau)|^2 through complex log-gamma (m >= 0) and the
/// downward shift for m < 0.
BigReal log_abs_gamma_sq(int m, const BigReal& tau);

/// Modulus and phase of Gamma(1/2 + mu + i tau) / Gamma(1 + i tau); phase not reduced.
struct BigPolar {
  BigReal modulus, phase;
};
BigPolar gamma_ratio(int mu, const BigReal& tau);

/// J0, Y0, J1, Y1 from the ascending series with guard digits.
struct BigBessel {
  BigReal j0, y0, j1, y1;
};
BigBessel bessel(const BigReal& z, unsigned digits = kDefaultDigits);

/// R^0, R^1 and their x-derivatives from the logarithmic series, x in (1, 3).
struct BigR01 {
  BigReal r0, r1, dr0, dr1;
};
BigR01 r01(const BigReal& x, const BigReal& tau, unsigned digits = kDefaultDigits);

/// P^m and dP^m/dx from the hypergeometric series around x = 1, x in (-1, 3).
struct BigValue {
  BigReal value, deriv;
};
BigValue p_series(const BigReal& x, int m, const BigReal& tau, unsigned digits = kDefaultDigits);

enum class Function { P, R };

/// Value and x-derivative of P^m or R^m at x_target in (-1, 100] (R: x > 1),
/// by Taylor integration of the Legendre equation in x from a series anchor.
/// R^m for m >= 2 is seeded through the order recurrence at the anchor.
struct MarchResult {
  BigReal value, deriv;
  double anchor = 0.0;
  unsigned working_digits = 0;
  int steps = 0;
};
MarchResult march(double x_target, int m, double tau, Function f, unsigned digits = kDefaultDigits);

/// Same march, but returns the Wronskian-preserving pair for the Abel check:
/// both solutions' (value, derivative) at the target plus at the anchor.
struct AbelCheck {
  BigReal w_anchor, w_target;  // (1 - x^2) * (P R' - P' R)
};
AbelCheck abel_check(double x_target, int m, double tau, unsigned digits = kDefaultDigits);

/// Digits common to two values (for precision-doubling checks).
double common_digits(const BigReal& a, const BigReal& b);

}  // namespace conical::oracle
