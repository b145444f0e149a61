#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace conical {

/// Argument triple for every evaluator: P^m_{-1/2+i tau}(x), R^m_{-1/2+i tau}(x).
struct EvalPoint {
  double x = 0.0;
  int m = 0;
  double tau = 0.0;
};

/// Error flag with the integer values of the Fortran `ierr` argument.
enum class EvalStatus : int { Ok = 0, OverUnderflow = 1, OutOfRange = 2 };

constexpr int to_int(EvalStatus s) { return static_cast<int>(s); }

enum class Region { SeriesNear1, KummerLargeTau, LargeX, Recurrence, OdeMarch };

std::string_view region_name(Region r);

enum class FunctionKind { P, R, PR };

struct EvalResult {
  double value = 0.0;
  double est_rel_err = 0.0;
  EvalStatus status = EvalStatus::Ok;
  Region region = Region::SeriesNear1;

  bool ok() const { return status == EvalStatus::Ok; }
};

/// Dispatch thresholds and truncation limits shared by the evaluators.
struct NumericConfig {
  int series_max_terms = 200;
  // Upper bound on terms of the Kummer-U expansion; summation stops earlier
  // once the terms fall below the truncation rule.
  int kummer_terms = 40;
  double tau_kummer_min = 8.0;
  // Series near x = 1 is used while tau*sqrt((x-1)/2) stays below this.
  double series_cancel_max = 3.0;
  double x_largex_min = 1.2;
  // Upper end of the P series window on x > 1.
  double x_series_max = 2.5;
  double overflow_log_limit = 690.0;
  // Orders up to this use the large-x expansion directly.
  int largex_direct_max_m = 1;

  bool valid() const {
    return series_max_terms > 0 && kummer_terms >= 0 && tau_kummer_min > 0.0 &&
           series_cancel_max > 0.0 && x_largex_min > 1.0 && x_series_max > 1.0 &&
           overflow_log_limit > 0.0;
  }
};

inline const NumericConfig& default_config() {
  static const NumericConfig cfg{};
  return cfg;
}

/// OutOfRange iff the point lies outside the domain of the requested function.
EvalStatus validate(const EvalPoint& p, FunctionKind kind);

/// A double carried with a separate binary exponent: mant * 2^exp2.
/// Keeps order recurrences and ODE marches representable far outside the
/// binary64 range; converted back only at the public boundary.
struct Scaled {
  double mant = 0.0;
  std::int64_t exp2 = 0;

  static Scaled from(double v) {
    Scaled s{v, 0};
    s.normalize();
    return s;
  }

  void normalize() {
    if (mant == 0.0 || !std::isfinite(mant)) {
      exp2 = mant == 0.0 ? 0 : exp2;
      return;
    }
    int e = 0;
    mant = std::frexp(mant, &e);
    exp2 += e;
  }

  /// Natural log of |value|; -inf for zero.
  double log_abs() const {
    if (mant == 0.0) return -INFINITY;
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * M_LN2;
  }

  /// Plain double; may overflow to inf or underflow to 0.
  double to_double() const {
    if (exp2 > 4000) return mant == 0.0 ? 0.0 : std::copysign(INFINITY, mant);
    if (exp2 < -4000) return std::copysign(0.0, mant);
    return std::ldexp(mant, static_cast<int>(exp2));
  }

  friend Scaled operator*(Scaled a, Scaled b) {
    Scaled r{a.mant * b.mant, a.exp2 + b.exp2};
    r.normalize();
    return r;
  }
  friend Scaled operator*(Scaled a, double b) { return a * from(b); }
  friend Scaled operator/(Scaled a, Scaled b) {
    Scaled r{a.mant / b.mant, a.exp2 - b.exp2};
    r.normalize();
    return r;
  }
  friend Scaled operator-(Scaled a) { return Scaled{-a.mant, a.exp2}; }
  friend Scaled operator+(Scaled a, Scaled b) {
    if (a.mant == 0.0) return b;
    if (b.mant == 0.0) return a;
    if (a.exp2 < b.exp2) std::swap(a, b);
    const std::int64_t d = a.exp2 - b.exp2;
    Scaled r{a.mant + (d > 1100 ? 0.0 : std::ldexp(b.mant, -static_cast<int>(d))), a.exp2};
    r.normalize();
    return r;
  }
  friend Scaled operator-(Scaled a, Scaled b) { return a + (-b); }
};

/// Status for a scaled value against the configured log-magnitude limit.
/// Exact zeros are representable and therefore Ok.
inline EvalStatus range_status(const Scaled& v, const NumericConfig& cfg) {
  if (!std::isfinite(v.mant)) return EvalStatus::OverUnderflow;
  if (v.mant == 0.0) return EvalStatus::Ok;
  const double l = v.log_abs();
  return (l > cfg.overflow_log_limit || l < -cfg.overflow_log_limit) ? EvalStatus::OverUnderflow
                                                                      : EvalStatus::Ok;
}

/// Truncation rule shared by all series: three consecutive terms below a
/// quarter ulp of the partial sum.
class SeriesStop {
 public:
  bool update(double term, double sum) {
    if (std::fabs(term) <= 0.25 * kEps * std::fabs(sum)) {
      ++small_;
    } else {
      small_ = 0;
    }
    return small_ >= 3;
  }

  static constexpr double kEps = 2.220446049250313e-16;

 private:
  int small_ = 0;
};

}  // namespace conical
