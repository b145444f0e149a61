#pragma once

#include "conical/common.hpp"

namespace conical {

/// J0, Y0, J1, Y1 at one real argument.
struct BesselQuad {
  double j0 = 0.0, y0 = 0.0, j1 = 0.0, y1 = 0.0;
  EvalStatus status = EvalStatus::Ok;
};

/// Argument where the ascending series hands over to the Hankel expansion.
inline constexpr double kBesselSwitch = 20.0;
inline constexpr double kBesselMaxArg = 1.0e4;

/// Orders 0 and 1 for z in (0, 1e4]. Ascending series (double-double
/// accumulation) below kBesselSwitch, large-argument Hankel expansion above.
BesselQuad bessel_j0y0_j1y1(double z);

/// Branch-forced variants, used to probe the seam.
BesselQuad bessel_series(double z);
BesselQuad bessel_asymptotic(double z);

struct BesselPair {
  double j = 0.0, y = 0.0;
};

/// J_n, Y_n for integer n (negative allowed). Y by forward recurrence, J by
/// forward recurrence while n < z and Miller's backward scheme otherwise.
BesselPair bessel_jy_int(int n, double z, const BesselQuad& base);

}  // namespace conical
