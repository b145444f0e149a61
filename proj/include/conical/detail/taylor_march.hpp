#pragma once

#include <cstdint>

namespace conical::detail {

/// Which normal form the marcher integrates:
///   Hyperbolic: u'' = -(tau^2 + c / sinh^2 s) u   (x = cosh s)
///   Circular:   u'' = -(-tau^2 + c / sin^2 s) u   (x = cos s)
/// with c = 1/4 - m^2 and u = sqrt(sinh s) w (resp. sqrt(sin s) w).
enum class MarchKind { Hyperbolic, Circular };

struct MarchState {
  double u = 0.0;
  double du = 0.0;
  std::int64_t exp2 = 0;  // common binary exponent of (u, du)
  int steps = 0;
  bool ok = true;
};

/// Taylor integration from s0 to s1 (either direction); order and step size
/// are chosen per step from the local frequency and the distance to the
/// nearest singular point of the coefficient.
void taylor_march(MarchKind kind, double tau, int m, double s0, double s1, MarchState& st);

}  // namespace conical::detail
