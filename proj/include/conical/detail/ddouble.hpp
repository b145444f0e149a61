#pragma once

#include <cmath>

namespace conical::detail {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2 (Dekker/Knuth error-free
/// transforms). Only the operations the Bessel series need are provided.
class DDouble {
 public:
  constexpr DDouble() = default;
  constexpr DDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  double to_double() const { return hi_ + lo_; }

  friend DDouble operator+(DDouble a, DDouble b) {
    double s, e;
    two_sum(a.hi_, b.hi_, s, e);
    double t, f;
    two_sum(a.lo_, b.lo_, t, f);
    e += t;
    fast_two_sum(s, e, s, e);
    e += f;
    fast_two_sum(s, e, s, e);
    return {s, e};
  }

  friend DDouble operator-(DDouble a) { return {-a.hi_, -a.lo_}; }
  friend DDouble operator-(DDouble a, DDouble b) { return a + (-b); }

  friend DDouble operator*(DDouble a, DDouble b) {
    double p = a.hi_ * b.hi_;
    double e = std::fma(a.hi_, b.hi_, -p);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    fast_two_sum(p, e, p, e);
    return {p, e};
  }

  friend DDouble operator/(DDouble a, DDouble b) {
    const double q1 = a.hi_ / b.hi_;
    DDouble r = a - b * DDouble(q1);
    const double q2 = r.hi_ / b.hi_;
    r = r - b * DDouble(q2);
    const double q3 = r.hi_ / b.hi_;
    DDouble q(q1, 0.0);
    q = q + DDouble(q2);
    return q + DDouble(q3);
  }

  DDouble& operator+=(DDouble b) { return *this = *this + b; }
  DDouble& operator-=(DDouble b) { return *this = *this - b; }
  DDouble& operator*=(DDouble b) { return *this = *this * b; }
  DDouble& operator/=(DDouble b) { return *this = *this / b; }

  friend DDouble fabs(DDouble a) { return a.hi_ < 0.0 ? -a : a; }

 private:
  static void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
  }
  static void fast_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace conical::detail
