// Regenerates the frozen reference data from the extended-precision oracle:
// the 20-line fixture and the 200-row oracle grid. Every value is computed at
// --digits and again at --check-digits; a point is rejected unless both agree
// to --min-common digits.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conical/fixture.hpp"
#include "conical/oracle/oracle.hpp"
#include "conical/verify.hpp"

namespace {

using namespace conical;
namespace orc = conical::oracle;

struct Options {
  unsigned digits = orc::kDefaultDigits;
  unsigned check_digits = 2 * orc::kDefaultDigits;
  double min_common = 50.0;
  std::string date;
  std::uint64_t seed = 20261016;
};

struct OracleValue {
  orc::BigReal value, deriv;
  double anchor = 0.0;
  double common = 0.0;  // digits shared by the two precisions (min of value, deriv)
};

OracleValue evaluate(double x, int m, double tau, orc::Function f, const Options& opt) {
  const orc::MarchResult lo = orc::march(x, m, tau, f, opt.digits);
  const orc::MarchResult hi = orc::march(x, m, tau, f, opt.check_digits);
  OracleValue v;
  v.value = lo.value;
  v.deriv = lo.deriv;
  v.anchor = lo.anchor;
  v.common = std::min(orc::common_digits(lo.value, hi.value), orc::common_digits(lo.deriv, hi.deriv));
  return v;
}

// A point is kept only if neither the value nor the derivative sits close to
// a zero: relative error there says nothing about the evaluator.
bool away_from_zero(double x, int m, double tau, double v, double d) {
  const double s = std::sqrt(std::fabs((x - 1.0) * (x + 1.0)));
  const double k = std::sqrt(tau * tau + double(m) * m + 0.25);
  const double ev = std::hypot(v, d * s / k);
  const double ed = std::hypot(d, v * k / s);
  return std::fabs(v) >= 0.05 * ev && std::fabs(d) >= 0.05 * ed;
}

bool in_double_range(const orc::BigReal& v) {
  const double d = static_cast<double>(v);
  return std::isfinite(d) && std::fabs(d) > 1e-290 && std::fabs(d) < 1e290;
}

std::string big_str(const orc::BigReal& v) { return v.str(30, std::ios::scientific); }

std::string today() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", std::gmtime(&t));
  return buf;
}

struct Candidate {
  double x;
  int m;
  double tau;
};

int write_fixture_file(const std::string& path, const Options& opt) {
  // Spread over the dispatch regions of both functions; the first 20 that
  // pass the zero-distance and precision checks are kept.
  const std::vector<Candidate> cands = {
      {1.5, 0, 1.0},    {1.05, 1, 2.0},   {1.2, 3, 0.5},    {2.0, 10, 3.0},    {1.01, 0, 25.0},
      {1.002, 1, 60.0}, {1.03, 4, 40.0},  {1.1, 12, 90.0},  {3.0, 0, 10.0},    {5.5, 1, 0.25},
      {10.0, 2, 7.5},   {50.0, 10, 80.0}, {99.0, 25, 33.0}, {1.7, 40, 15.0},   {20.0, 60, 2.0},
      {1.3, 7, 4.0},    {2.5, 20, 50.0},  {75.0, 0, 99.0},  {1.0015, 2, 12.0}, {7.0, 5, 0.0},
      {1.15, 30, 70.0}, {33.0, 15, 45.0}, {1.08, 9, 18.0},  {4.2, 3, 66.0},    {60.0, 80, 5.0},
      {1.4, 2, 1.0},    {12.0, 6, 3.3},   {1.6, 0, 0.7},    {40.0, 45, 12.0},
  };
  FixtureFile file;
  file.comments.push_back("# conical function reference values: x m tau pm pmd rm rmd");
  file.comments.push_back("# source: MPFR Taylor integration of the Legendre equation in x from series anchors");
  file.comments.push_back("# precision: " + std::to_string(opt.digits) + " digits, checked against " +
                          std::to_string(opt.check_digits) + " digits");
  file.comments.push_back("# date: " + opt.date);
  std::vector<std::string> detail;
  for (const Candidate& c : cands) {
    if (file.lines.size() == 20) break;
    const OracleValue p0 = evaluate(c.x, c.m, c.tau, orc::Function::P, opt);
    const OracleValue r0 = evaluate(c.x, c.m, c.tau, orc::Function::R, opt);
    const double pm = static_cast<double>(p0.value), pmd = static_cast<double>(p0.deriv);
    const double rm = static_cast<double>(r0.value), rmd = static_cast<double>(r0.deriv);
    const bool ok = in_double_range(p0.value) && in_double_range(p0.deriv) && in_double_range(r0.value) &&
                    in_double_range(r0.deriv) && away_from_zero(c.x, c.m, c.tau, pm, pmd) &&
                    away_from_zero(c.x, c.m, c.tau, rm, rmd) && p0.common >= opt.min_common &&
                    r0.common >= opt.min_common;
    std::fprintf(stderr, "fixture x=%g m=%d tau=%g common=%.1f/%.1f %s\n", c.x, c.m, c.tau, p0.common, r0.common,
                 ok ? "kept" : "rejected");
    if (!ok) continue;
    file.lines.push_back({c.x, c.m, c.tau, pm, pmd, rm, rmd});
    std::ostringstream os;
    os << "# " << file.lines.size() << ": anchor_p=" << p0.anchor << " anchor_r=" << r0.anchor
       << " common_digits=" << std::floor(std::min(p0.common, r0.common)) << " pm=" << big_str(p0.value)
       << " pmd=" << big_str(p0.deriv) << " rm=" << big_str(r0.value) << " rmd=" << big_str(r0.deriv);
    detail.push_back(os.str());
  }
  if (file.lines.size() != 20) {
    std::fprintf(stderr, "error: only %zu fixture points accepted\n", file.lines.size());
    return 1;
  }
  file.comments.insert(file.comments.end(), detail.begin(), detail.end());
  std::ofstream out(path, std::ios::binary);
  write_fixture(out, file);
  return out ? 0 : 1;
}

struct GridBlock {
  const char* name;
  int rows_wanted;
  bool with_r;
  DomainBox box;
  // tau upper bound tied to the series window: tau sqrt((x-1)/2) <= this; 0 = off
  double series_cap;
};

int write_grid_file(const std::string& path, const Options& opt) {
  std::vector<GridBlock> blocks = {
      {"p-inside", 30, false, {-0.99, 0.999, 0.0, 50.0, 0, 20}, 0.0},
      {"series", 70, true, {1.001, 1.2, 0.0, 100.0, 0, 10}, 3.0},
      // m <= 1 is served by the Kummer / large-x sums directly, higher m by the recurrence
      {"kummer-base", 20, true, {1.001, 1.2, 10.0, 100.0, 0, 1}, 0.0},
      {"kummer", 30, true, {1.001, 1.2, 10.0, 100.0, 2, 20}, 0.0},
      {"large-x-base", 20, true, {1.2, 100.0, 0.0, 100.0, 0, 1}, 0.0},
      {"large-x", 30, true, {1.2, 100.0, 0.0, 100.0, 2, 30}, 0.0},
  };
  std::ostringstream body;
  int total = 0;
  const QuasiRandom qr(opt.seed);
  std::uint64_t idx = 0;
  for (const GridBlock& b : blocks) {
    int rows = 0;
    while (rows < b.rows_wanted) {
      const auto u = qr.point(idx++);
      EvalPoint p;
      p.x = b.box.xmin + (b.box.xmax - b.box.xmin) * u[0];
      p.m = b.box.mmin + std::min(b.box.mmax - b.box.mmin, int(u[2] * (b.box.mmax - b.box.mmin + 1)));
      double tmax = b.box.taumax;
      if (b.series_cap > 0.0) tmax = std::min(tmax, b.series_cap / std::sqrt((p.x - 1.0) / 2.0));
      double tmin = b.box.taumin;
      if (b.series_cap == 0.0 && b.box.xmax <= 1.2 && b.box.xmin > 1.0) {
        tmin = std::max(tmin, 3.0 / std::sqrt((p.x - 1.0) / 2.0));
        if (tmin >= tmax) continue;
      }
      p.tau = tmin + (tmax - tmin) * u[1];
      const OracleValue pv = evaluate(p.x, p.m, p.tau, orc::Function::P, opt);
      std::vector<std::pair<char, OracleValue>> out = {{'P', pv}};
      if (b.with_r) out.push_back({'R', evaluate(p.x, p.m, p.tau, orc::Function::R, opt)});
      bool ok = true;
      for (const auto& [kind, v] : out) {
        ok = ok && in_double_range(v.value) && in_double_range(v.deriv) && v.common >= opt.min_common &&
             away_from_zero(p.x, p.m, p.tau, static_cast<double>(v.value), static_cast<double>(v.deriv));
      }
      if (!ok) continue;
      for (const auto& [kind, v] : out) {
        body << kind << ' ' << format_g17(p.x) << ' ' << p.m << ' ' << format_g17(p.tau) << ' '
             << format_g17(static_cast<double>(v.value)) << ' ' << format_g17(static_cast<double>(v.deriv))
             << '\n';
        ++rows;
        ++total;
      }
    }
    std::fprintf(stderr, "grid block %s: %d rows\n", b.name, rows);
  }
  std::ofstream out(path, std::ios::binary);
  out << "# oracle grid: kind x m tau value deriv (" << total << " rows)\n";
  out << "# precision: " << opt.digits << " digits, checked against " << opt.check_digits << " digits (>= "
      << opt.min_common << " common)\n";
  out << "# points: Halton bases 2,3,5, seed " << opt.seed
      << "; blocks p-inside(-0.99,0.999) series kummer-base kummer large-x-base large-x; points near zeros of value or derivative skipped\n";
  out << "# date: " << opt.date << '\n';
  out << body.str();
  return out ? 0 : 1;
}

struct ExampleWriter {
  std::ostringstream os;
  void put(const std::string& name, const orc::BigReal& v) { os << name << ' ' << v.str(25, std::ios::scientific) << '\n'; }
};

// Single reference values quoted by the unit tests, keyed by name.
int write_examples_file(const std::string& path, const Options& opt) {
  ExampleWriter w;
  orc::PrecisionScope scope(opt.digits + 20);
  using orc::BigReal;
  {
    const orc::BigComplex psi = orc::digamma_half(BigReal(50));
    w.put("digamma_half.tau50.re", psi.re);
    w.put("digamma_half.tau50.im", psi.im);
  }
  w.put("log_abs_gamma_sq.m-3.tau7", orc::log_abs_gamma_sq(-3, BigReal(7)));
  for (int tau : {5, 10}) {
    const orc::BigPolar g = orc::gamma_ratio(1, BigReal(tau));
    const std::string key = "gamma_ratio.mu1.tau" + std::to_string(tau);
    w.put(key + ".H", g.modulus);
    w.put(key + ".rho", g.phase);
  }
  {
    // 1 / ((1+5i)(2+5i)(3+5i)) by direct complex product
    BigReal re = 1, im = 0;
    for (int k = 1; k <= 3; ++k) {
      const BigReal nre = re * k - im * 5, nim = re * 5 + im * k;
      re = nre;
      im = nim;
    }
    const BigReal n = re * re + im * im;
    w.put("pochhammer_inverse.tau5.k3.re", re / n);
    w.put("pochhammer_inverse.tau5.k3.im", -im / n);
  }
  w.put("bessel.j0.z1", orc::bessel(BigReal(1), opt.digits).j0);
  for (auto [x, tau] : {std::pair{1.01, 1.0}, std::pair{1.5, 0.5}, std::pair{1.5, 1.0}, std::pair{1.02, 50.0}}) {
    const orc::BigR01 r = orc::r01(BigReal(x), BigReal(tau), opt.digits);
    std::ostringstream key;
    key << "r01.x" << x << ".tau" << tau;
    w.put(key.str() + ".r0", r.r0);
    w.put(key.str() + ".r1", r.r1);
  }
  {
    // pi / (cosh(pi tau) |Gamma(m+1/2+i tau)|^2) at m = 2, tau = 10, as a log
    const BigReal tau = 10;
    const BigReal pi = boost::multiprecision::acos(BigReal(-1));
    w.put("p_negative_order.log_factor.m2.tau10",
          log(pi) - log(cosh(pi * tau)) - orc::log_abs_gamma_sq(2, tau));
  }
  struct MarchEx {
    const char* name;
    double x;
    int m;
    double tau;
    orc::Function f;
  };
  const MarchEx marches[] = {
      {"march.R.x2.m10.tau3", 2.0, 10, 3.0, orc::Function::R},
      {"march.R.x10.m1.tau20", 10.0, 1, 20.0, orc::Function::R},
      {"march.R.x1.5.m0.tau1", 1.5, 0, 1.0, orc::Function::R},
      {"march.R.x50.m40.tau80", 50.0, 40, 80.0, orc::Function::R},
      {"march.R.x50.m10.tau80", 50.0, 10, 80.0, orc::Function::R},
      {"march.P.x0.5.m3.tau4", 0.5, 3, 4.0, orc::Function::P},
      {"march.P.x10.m0.tau30", 10.0, 0, 30.0, orc::Function::P},
      {"march.P.x30.m5.tau60", 30.0, 5, 60.0, orc::Function::P},
      {"march.P.x2.m1.tau5", 2.0, 1, 5.0, orc::Function::P},
      {"march.R.x2.m1.tau5", 2.0, 1, 5.0, orc::Function::R},
  };
  for (const MarchEx& e : marches) {
    const orc::MarchResult lo = orc::march(e.x, e.m, e.tau, e.f, opt.digits);
    const orc::MarchResult hi = orc::march(e.x, e.m, e.tau, e.f, opt.check_digits);
    const double common =
        std::min(orc::common_digits(lo.value, hi.value), orc::common_digits(lo.deriv, hi.deriv));
    if (common < opt.min_common) {
      std::fprintf(stderr, "error: %s only %.1f common digits\n", e.name, common);
      return 1;
    }
    w.put(std::string(e.name) + ".value", lo.value);
    w.put(std::string(e.name) + ".deriv", lo.deriv);
  }
  std::ofstream out(path, std::ios::binary);
  out << "# named reference values: name value (25 significant digits)\n";
  out << "# precision: " << opt.digits << " digits; march values checked against " << opt.check_digits
      << " digits (>= " << opt.min_common << " common)\n";
  out << "# date: " << opt.date << '\n';
  out << w.os.str();
  return out ? 0 : 1;
}

// J0, Y0, J1, Y1 on 500 log-spaced arguments in [1e-3, 200].
int write_bessel_file(const std::string& path, const Options& opt) {
  std::ofstream out(path, std::ios::binary);
  out << "# z j0 y0 j1 y1, ascending series at " << opt.digits << " digits plus cancellation guard\n";
  out << "# date: " << opt.date << '\n';
  const int n = 500;
  for (int i = 0; i < n; ++i) {
    const double z = 1e-3 * std::pow(2e5, double(i) / (n - 1));
    const orc::BigBessel b = orc::bessel(orc::BigReal(z), opt.digits);
    out << format_g17(z) << ' ' << format_g17(static_cast<double>(b.j0)) << ' '
        << format_g17(static_cast<double>(b.y0)) << ' ' << format_g17(static_cast<double>(b.j1)) << ' '
        << format_g17(static_cast<double>(b.y1)) << '\n';
  }
  return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extended-precision reference data generator"};
  Options opt;
  std::string fixture_path, grid_path, examples_path, bessel_path;
  app.add_option("--fixture", fixture_path, "write the 20-line fixture here");
  app.add_option("--grid", grid_path, "write the oracle grid here");
  app.add_option("--examples", examples_path, "write named single values here");
  app.add_option("--bessel", bessel_path, "write the Bessel reference grid here");
  app.add_option("--digits", opt.digits);
  app.add_option("--check-digits", opt.check_digits);
  app.add_option("--min-common", opt.min_common);
  app.add_option("--seed", opt.seed);
  app.add_option("--date", opt.date, "provenance date (default: today, UTC)");
  CLI11_PARSE(app, argc, argv);
  if (opt.date.empty()) opt.date = today();
  int rc = 0;
  if (!fixture_path.empty()) rc |= write_fixture_file(fixture_path, opt);
  if (!grid_path.empty()) rc |= write_grid_file(grid_path, opt);
  if (!examples_path.empty()) rc |= write_examples_file(examples_path, opt);
  if (!bessel_path.empty()) rc |= write_bessel_file(bessel_path, opt);
  return rc;
}
