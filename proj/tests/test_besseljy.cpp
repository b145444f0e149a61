#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "conical/besseljy.hpp"
#include "reference.hpp"

using namespace conical;
using conical::testing::data_path;
using conical::testing::known;

namespace {

// J and Y individually vanish; errors are measured against the modulus.
double modulus_err(double j, double y, double jr, double yr) {
  const double mod = std::hypot(jr, yr);
  return std::max(std::fabs(j - jr), std::fabs(y - yr)) / mod;
}

}  // namespace

TEST_CASE("small argument leading behaviour") {
  const double z = 1e-6;
  const BesselQuad b = bessel_j0y0_j1y1(z);
  CHECK(b.j0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.j1 == doctest::Approx(z / 2).epsilon(1e-12));
  CHECK(b.y0 == doctest::Approx(2 / std::numbers::pi * (std::log(z / 2) + std::numbers::egamma)).epsilon(1e-10));
  CHECK(b.y1 == doctest::Approx(-2 / (std::numbers::pi * z)).epsilon(1e-10));
}

TEST_CASE("J0(1) against reference") {
  CHECK(std::fabs(bessel_j0y0_j1y1(1.0).j0 - known("bessel.j0.z1")) <= 1e-15);
  CHECK(std::fabs(bessel_j0y0_j1y1(1.0).j0 - 0.7651976865579666) <= 1e-15);
}

TEST_CASE("Wronskian J1 Y0 - J0 Y1 = 2/(pi z) on 1000 log-spaced points") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double z = 1e-3 * std::pow(2e5, i / 999.0);
    const BesselQuad b = bessel_j0y0_j1y1(z);
    REQUIRE(b.status == EvalStatus::Ok);
    const double w = b.j1 * b.y0 - b.j0 * b.y1;
    worst = std::max(worst, std::fabs(w * std::numbers::pi * z / 2 - 1.0));
  }
  MESSAGE("max Wronskian deviation " << worst);
  CHECK(worst <= 5e-14);
}

TEST_CASE("series and asymptotic branches agree at the seam") {
  for (double s : {-1e-8, 0.0, 1e-8}) {
    const double z = kBesselSwitch * (1.0 + s);
    const BesselQuad a = bessel_series(z);
    const BesselQuad b = bessel_asymptotic(z);
    CHECK(modulus_err(a.j0, a.y0, b.j0, b.y0) <= 1e-13);
    CHECK(modulus_err(a.j1, a.y1, b.j1, b.y1) <= 1e-13);
  }
}

TEST_CASE("against the 500-point reference grid") {
  std::ifstream in(data_path("bessel_grid.txt"));
  REQUIRE(in);
  std::string line;
  int n = 0;
  double worst = 0.0, worst_z = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    double z, j0, y0, j1, y1;
    REQUIRE(static_cast<bool>(is >> z >> j0 >> y0 >> j1 >> y1));
    const BesselQuad b = bessel_j0y0_j1y1(z);
    const double e = std::max(modulus_err(b.j0, b.y0, j0, y0), modulus_err(b.j1, b.y1, j1, y1));
    if (e > worst) {
      worst = e;
      worst_z = z;
    }
    ++n;
  }
  CHECK(n == 500);
  MESSAGE("max error " << worst << " at z = " << worst_z);
  CHECK(worst <= 5e-14);
}

TEST_CASE("integer orders by recurrence") {
  const double z = 7.3;
  const BesselQuad base = bessel_j0y0_j1y1(z);
  const BesselPair p0 = bessel_jy_int(0, z, base);
  const BesselPair p1 = bessel_jy_int(1, z, base);
  CHECK(p0.j == base.j0);
  CHECK(p1.y == base.y1);
  // J_{-1} = -J_1
  const BesselPair m1 = bessel_jy_int(-1, z, base);
  CHECK(m1.j == doctest::Approx(-base.j1).epsilon(1e-15));
  CHECK(m1.y == doctest::Approx(-base.y1).epsilon(1e-15));
  // three-term recurrence C_{n+1} = (2n/z) C_n - C_{n-1} at n = 5
  const BesselPair a = bessel_jy_int(4, z, base), b = bessel_jy_int(5, z, base), c = bessel_jy_int(6, z, base);
  CHECK(c.j == doctest::Approx(10 / z * b.j - a.j).epsilon(1e-12));
  CHECK(c.y == doctest::Approx(10 / z * b.y - a.y).epsilon(1e-12));
}

TEST_CASE("arguments outside (0, max] are rejected") {
  CHECK(bessel_j0y0_j1y1(0.0).status == EvalStatus::OutOfRange);
  CHECK(bessel_j0y0_j1y1(-1.0).status == EvalStatus::OutOfRange);
  CHECK(bessel_j0y0_j1y1(2 * kBesselMaxArg).status == EvalStatus::OutOfRange);
}
