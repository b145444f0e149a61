#include "conical/fixture.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>

#include "conical/conical_p.hpp"
#include "conical/verify.hpp"

namespace conical {

bool parse_fixture(std::istream& in, FixtureFile& out, std::string& error) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      out.comments.push_back(line);
      continue;
    }
    std::istringstream is(line);
    is.imbue(std::locale::classic());
    FixtureLine f;
    std::string extra;
    if (!(is >> f.x >> f.m >> f.tau >> f.pm >> f.pmd >> f.rm >> f.rmd) || (is >> extra)) {
      error = "line " + std::to_string(lineno) + ": expected 7 columns x m tau pm pmd rm rmd";
      return false;
    }
    out.lines.push_back(f);
  }
  if (out.lines.empty()) {
    error = "no data lines";
    return false;
  }
  return true;
}

bool read_fixture(const std::string& path, FixtureFile& out, std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot open " + path;
    return false;
  }
  if (!parse_fixture(in, out, error)) {
    error = path + ": " + error;
    return false;
  }
  return true;
}

void write_fixture(std::ostream& os, const FixtureFile& f) {
  for (const std::string& c : f.comments) os << c << '\n';
  for (const FixtureLine& l : f.lines) {
    os << format_g17(l.x) << ' ' << l.m << ' ' << format_g17(l.tau) << ' ' << format_g17(l.pm) << ' '
       << format_g17(l.pmd) << ' ' << format_g17(l.rm) << ' ' << format_g17(l.rmd) << '\n';
  }
}

bool fixture_match(double got, double want, double rel_tol) {
  if (!std::isfinite(got)) return false;
  const double d = std::fabs(got - want);
  if (std::fabs(want) < kFixtureAbsGuard) return d < kFixtureAbsGuard;
  return d <= rel_tol * std::fabs(want);
}

FixtureLineCheck check_fixture_line(const FixtureLine& l, const NumericConfig& cfg) {
  FixtureLineCheck c;
  const ConicPRScaled s = conicpr_scaled(l.x, l.m, l.tau, cfg);
  c.status = s.status;
  if (s.status != EvalStatus::Ok) return c;
  const Scaled got[4] = {s.pm, s.pmd, s.rm, s.rmd};
  const double want[4] = {l.pm, l.pmd, l.rm, l.rmd};
  c.pass = true;
  for (int k = 0; k < 4; ++k) {
    c.got[k] = got[k].to_double();
    c.rel_err[k] = want[k] != 0.0 ? std::fabs(c.got[k] - want[k]) / std::fabs(want[k]) : std::fabs(c.got[k]);
    if (!fixture_match(c.got[k], want[k])) c.pass = false;
  }
  return c;
}

}  // namespace conical
