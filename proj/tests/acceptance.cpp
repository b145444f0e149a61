// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "conical/besseljy.hpp"
#include "conical/conical_p.hpp"
#include "conical/fixture.hpp"
#include "conical/gammakit.hpp"
#include "conical/verify.hpp"

using namespace conical;

namespace {

constexpr double kEps = 2.220446049250313e-16;

// Fixed-length (N = 7) Kummer sums at m = 1 fail only below tau = 16.45 on
// (1.001, 1.05) x (15, 100); the pass region starts at max(20, this).
constexpr double kKummerCalibratedCutoff = 16.45;

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail, double seconds) {
  std::printf("criterion %d %-28s %s  (%s; %.1f s)\n", id, title, pass ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class F>
void timed(F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body([&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); });
}

void criterion1() {
  timed([](auto elapsed) {
    SweepOptions opt;
    opt.suite = Suite::Wronskian;
    opt.samples = 10000;
    opt.seed = 1;
    const SweepSummary s = run_sweep(opt).summary;
    const bool pass = s.skipped == 0 && s.max_err <= 3e-12 && s.fraction_below_1e13() >= 0.70;
    char d[200];
    std::snprintf(d, sizeof d, "max %.2e at x=%.6g tau=%.6g m=%d, %.1f%% <= 1e-13, %llu skipped", s.max_err,
                  s.worst_x, s.worst_tau, s.worst_m, 100 * s.fraction_below_1e13(),
                  static_cast<unsigned long long>(s.skipped));
    report(1, "Wronskian sweep", pass, d, elapsed());
  });
}

void criterion2() {
  timed([](auto elapsed) {
    SweepOptions opt;
    opt.suite = Suite::Recurrence;
    opt.box = {1.2, 100.0, 0.0, 100.0, 1, 1};
    opt.samples = 10000;
    opt.seed = 2;
    opt.threshold = 5e-12;
    opt.rec.branch = RecurrenceBranch::LargeX;
    const SweepSummary s = run_sweep(opt).summary;
    const bool pass = s.skipped == 0 && s.over_threshold == 0;
    char d[160];
    std::snprintf(d, sizeof d, "max %.2e at x=%.6g tau=%.6g, %llu over 5e-12", s.max_err, s.worst_x, s.worst_tau,
                  static_cast<unsigned long long>(s.over_threshold));
    report(2, "large-x recurrence sweep", pass, d, elapsed());
  });
}

void criterion3() {
  timed([](auto elapsed) {
    const double cutoff = std::max(20.0, kKummerCalibratedCutoff);
    auto sweep = [](int m) {
      SweepOptions opt;
      opt.suite = Suite::Recurrence;
      opt.box = {1.001, 1.05, 15.0, 100.0, m, m};
      opt.samples = 10000;
      opt.seed = 3;
      opt.threshold = 1e-12;
      opt.rec.branch = RecurrenceBranch::Kummer;
      opt.rec.kummer_fixed_terms = 7;
      return run_sweep(opt);
    };
    const SweepResult m1 = sweep(1);
    const SweepResult m5 = sweep(5);
    std::uint64_t above_fail = 0;
    double max_fail_tau = 0.0;
    for (const VerificationRecord& r : m1.records) {
      const bool fail = r.status != EvalStatus::Ok || r.err > 1e-12;
      if (fail) max_fail_tau = std::max(max_fail_tau, r.tau);
      if (fail && r.tau >= cutoff) ++above_fail;
    }
    auto fails = [](const SweepResult& s) { return s.summary.over_threshold + s.summary.skipped; };
    const bool pass = above_fail == 0 && fails(m5) > fails(m1);
    char d[200];
    std::snprintf(d, sizeof d,
                  "N=7: m=1 %llu failures, largest failing tau %.2f, %llu at tau >= %.0f; m=5 %llu failures",
                  static_cast<unsigned long long>(fails(m1)), max_fail_tau,
                  static_cast<unsigned long long>(above_fail), cutoff, static_cast<unsigned long long>(fails(m5)));
    report(3, "Kummer region sweep", pass, d, elapsed());
  });
}

void criterion4() {
  timed([](auto elapsed) {
    SweepOptions opt;
    opt.suite = Suite::NearOne;
    opt.box = {1.001, default_config().x_largex_min, 0.0, 100.0, 0, 0};
    opt.samples = 10000;
    opt.seed = 4;
    const SweepSummary s = run_sweep(opt).summary;
    const bool pass = s.skipped == 0 && s.fraction_over() <= 0.01;
    char d[160];
    std::snprintf(d, sizeof d, "%llu of %llu over 1e-12 (%.2f%%), max %.2e",
                  static_cast<unsigned long long>(s.over_threshold), static_cast<unsigned long long>(s.count),
                  100 * s.fraction_over(), s.max_err);
    report(4, "near-one Wronskian", pass, d, elapsed());
  });
}

void criterion5() {
  timed([](auto elapsed) {
    std::vector<OracleGridRow> rows;
    std::string err;
    if (!read_oracle_grid(std::string(CONICAL_TEST_DATA_DIR) + "/oracle_grid.txt", rows, err)) {
      report(5, "oracle grid", false, err, elapsed());
      return;
    }
    double max_v = 0.0, max_d = 0.0, max_fd = 0.0;
    int bad = 0;
    std::map<Region, int> regions;
    for (const OracleGridRow& row : rows) {
      const OracleCheck c = check_oracle_row(row);
      const FdCheck fd = fd_derivative(row.kind, row.x, row.m, row.tau);
      if (c.status != EvalStatus::Ok || fd.status != EvalStatus::Ok) {
        ++bad;
        continue;
      }
      ++regions[c.region];
      max_v = std::max(max_v, c.err_value);
      max_d = std::max(max_d, c.err_deriv);
      max_fd = std::max(max_fd, fd.err);
    }
    bool all_regions = true;
    std::string covered;
    for (Region r : {Region::SeriesNear1, Region::KummerLargeTau, Region::LargeX, Region::Recurrence,
                     Region::OdeMarch}) {
      if (regions[r] == 0) all_regions = false;
      covered += std::string(region_name(r)) + "=" + std::to_string(regions[r]) + " ";
    }
    const bool pass = rows.size() == 200 && bad == 0 && all_regions && max_v <= 5e-12 && max_d <= 1e-6 &&
                      max_fd <= 1e-6;
    char d[300];
    std::snprintf(d, sizeof d, "%zu rows, value %.2e, derivative %.2e, finite difference %.2e; %s", rows.size(),
                  max_v, max_d, max_fd, covered.c_str());
    report(5, "oracle equivalence", pass, d, elapsed());
  });
}

void criterion6() {
  timed([](auto elapsed) {
    double cosh_res = 0.0;
    for (int i = 0; i <= 20000; ++i) cosh_res = std::max(cosh_res, std::fabs(cosh_identity_residual(0.01 * i)));
    double norm = 0.0;
    for (double tau : {0.1, 1.0, 10.0, 100.0}) {
      const PochhammerPolarSeq s = pochhammer_inverse_seq(tau, 200);
      for (int k = 0; k <= 200; ++k) norm = std::max(norm, std::fabs(s.norm_defect(k)));
    }
    double bw = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double z = 1e-3 * std::pow(2e5, i / 999.0);
      const BesselQuad b = bessel_j0y0_j1y1(z);
      bw = std::max(bw, std::fabs((b.j1 * b.y0 - b.j0 * b.y1) * std::numbers::pi * z / 2 - 1.0));
    }
    double psi = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double tau = i == 0 ? 0.0 : 1e-3 * std::pow(1e5, (i - 1) / 399.0);
      const DigammaValue a = digamma_half(tau), b = digamma_shifted(1, tau);
      const double den = 0.25 + tau * tau;
      const double ire = 0.5 / den, iim = -tau / den;
      psi = std::max(psi, std::fabs(b.re - a.re - ire) / (std::fabs(a.re) + std::fabs(b.re) + std::fabs(ire)));
      const double sim = std::fabs(a.im) + std::fabs(b.im) + std::fabs(iim);
      if (sim > 0) psi = std::max(psi, std::fabs(b.im - a.im - iim) / sim);
    }
    // The exact Wronskian never forms the bracket; check that it equals the
    // plain gamma-magnitude form.
    const double wx = wronskian_exact(3.0, 2, 7.0).to_double();
    const double w_plain = -((0.25 + 49) * (2.25 + 49)) / 8.0;
    const bool pass = cosh_res <= 2 * kEps && norm <= 4 * kEps && bw <= 5e-14 && psi <= 5e-15 &&
                      std::fabs(wx / w_plain - 1) <= 2 * kEps;
    char d[200];
    std::snprintf(d, sizeof d, "cosh %.1f ulp, Pochhammer %.1f ulp, Bessel %.2e, digamma %.2e", cosh_res / kEps,
                  norm / kEps, bw, psi);
    report(6, "identity suite", pass, d, elapsed());
  });
}

void criterion7() {
  timed([](auto elapsed) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
      const bool inside = i % 5 == 0;
      const double x = inside ? -0.99 + 1.98 * u(gen) : 1.001 + 98.999 * u(gen);
      const int m = static_cast<int>(u(gen) * 101);
      const double tau = 100 * u(gen);
      for (char kind : {'P', 'R'}) {
        if (inside && kind == 'R') continue;
        const FdCheck c = ode_residual(kind, x, m, tau);
        if (c.status != EvalStatus::Ok) {
          ++bad;
          continue;
        }
        worst = std::max(worst, c.err);
      }
    }
    report(7, "ODE residual", bad == 0 && worst <= 1e-6,
           fmt("500 points, P and R, max %.2e", worst) + (bad ? ", " + std::to_string(bad) + " not evaluated" : ""),
           elapsed());
  });
}

void criterion8() {
  timed([](auto elapsed) {
    FixtureFile f;
    std::string err;
    if (!read_fixture(CONICAL_FIXTURE, f, err)) {
      report(8, "fixture run", false, err, elapsed());
      return;
    }
    int pass_lines = 0;
    for (const FixtureLine& l : f.lines) pass_lines += check_fixture_line(l).pass ? 1 : 0;
    // one unit in the 11th significant digit, both directions, every value
    int caught = 0, tried = 0;
    for (const FixtureLine& l : f.lines) {
      for (int k = 0; k < 4; ++k) {
        for (int sign : {-1, 1}) {
          FixtureLine p = l;
          double* v[4] = {&p.pm, &p.pmd, &p.rm, &p.rmd};
          const double e = std::floor(std::log10(std::fabs(*v[k])));
          *v[k] += sign * std::pow(10.0, e - 10);
          ++tried;
          if (!check_fixture_line(p).pass) ++caught;
        }
      }
    }
    const int n = static_cast<int>(f.lines.size());
    const bool pass = n >= 20 && pass_lines == n && caught == tried;
    char d[160];
    std::snprintf(d, sizeof d, "%d/%d lines pass, %d/%d perturbations detected", pass_lines, n, caught, tried);
    report(8, "fixture run", pass, d, elapsed());
  });
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
