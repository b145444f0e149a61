#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "conical/common.hpp"

namespace conical {

/// One reference line: x m tau pm pmd rm rmd.
struct FixtureLine {
  double x = 0.0;
  int m = 0;
  double tau = 0.0;
  double pm = 0.0, pmd = 0.0, rm = 0.0, rmd = 0.0;
};

struct FixtureFile {
  std::vector<std::string> comments;  // '#' lines, verbatim
  std::vector<FixtureLine> lines;
};

/// Fails (with a message) on a malformed data line or when no data line exists.
bool parse_fixture(std::istream& in, FixtureFile& out, std::string& error);
bool read_fixture(const std::string& path, FixtureFile& out, std::string& error);

/// Comments first, then one line per point with 17 significant digits.
void write_fixture(std::ostream& os, const FixtureFile& f);

inline constexpr double kFixtureRelTol = 5e-12;
inline constexpr double kFixtureAbsGuard = 1e-300;

/// |got - want| <= tol |want|, or both within the absolute guard.
bool fixture_match(double got, double want, double rel_tol = kFixtureRelTol);

struct FixtureLineCheck {
  double got[4] = {0, 0, 0, 0};  // pm, pmd, rm, rmd
  double rel_err[4] = {0, 0, 0, 0};
  EvalStatus status = EvalStatus::Ok;
  bool pass = false;
};

FixtureLineCheck check_fixture_line(const FixtureLine& l, const NumericConfig& cfg = default_config());

}  // namespace conical
