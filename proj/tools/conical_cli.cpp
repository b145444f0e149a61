// conical: point evaluation, verification sweeps, failure maps, fixture runs.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "conical/conical_p.hpp"
#include "conical/conical_r.hpp"
#include "conical/fixture.hpp"
#include "conical/verify.hpp"

namespace {

using namespace conical;

constexpr int kExitBadFlags = 2;
constexpr int kExitParse = 3;

struct EvalFlags {
  double x = 0.0;
  int m = 0;
  double tau = 0.0;
  std::string function = "both";
  bool deriv = false;
};

struct SweepFlags {
  std::string suite = "wronskian";
  DomainBox box;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  double threshold = 1e-12;
  std::string out;
  std::string grid = "tests/data/oracle_grid.txt";
  std::string branch = "large-x";
  int kummer_terms = 0;
  std::optional<double> budget;
  std::optional<double> max_err;
  std::optional<double> min_fraction_1e13;
  bool all_rows = false;
};

void print_value(const char* name, const Scaled& v) {
  std::printf("%s = %s\n", name, format_g17(v.to_double()).c_str());
}

int run_eval(const EvalFlags& f) {
  const bool want_p = f.function != "r";
  const bool want_r = f.function != "p";
  const FunctionKind kind = want_p && want_r ? FunctionKind::PR : want_p ? FunctionKind::P : FunctionKind::R;
  EvalStatus st = validate({f.x, f.m, f.tau}, kind);
  if (st == EvalStatus::Ok) {
    const NumericConfig& cfg = default_config();
    const double sq = std::sqrt(std::fabs((f.x - 1.0) * (f.x + 1.0)));
    const double a = f.m * f.x / ((f.x - 1.0) * (f.x + 1.0));
    Scaled pm, pmd, rm, rmd;
    if (want_p) {
      const PValue p = p_eval(f.x, f.m, f.tau, cfg);
      pm = p.pm;
      pmd = p.pmd;
      if (p.status != EvalStatus::Ok) st = p.status;
      std::printf("p_region = %s\n", std::string(region_name(p.region)).c_str());
    }
    if (want_r) {
      const RPair r = r_pair(f.x, f.m, f.tau, cfg);
      rm = r.rm;
      rmd = r.rm * a - r.rm1 * (1.0 / sq);
      if (r.status != EvalStatus::Ok) st = r.status;
      std::printf("r_region = %s\n", std::string(region_name(r.region)).c_str());
    }
    if (st == EvalStatus::Ok) {
      for (const Scaled* v : {&pm, &pmd, &rm, &rmd}) {
        if (range_status(*v, cfg) != EvalStatus::Ok) st = EvalStatus::OverUnderflow;
      }
    }
    if (st == EvalStatus::Ok) {
      if (want_p) print_value("pm", pm);
      if (want_p && f.deriv) print_value("pmd", pmd);
      if (want_r) print_value("rm", rm);
      if (want_r && f.deriv) print_value("rmd", rmd);
    }
  }
  std::printf("status = %d\n", to_int(st));
  return to_int(st);
}

double default_budget(Suite s) {
  switch (s) {
    case Suite::Wronskian: return 0.01;
    case Suite::NearOne: return 0.01;
    case Suite::Recurrence:
    case Suite::Oracle: return 0.0;
  }
  return 0.0;
}

int run_sweep_cmd(const SweepFlags& f, bool is_map) {
  static const std::map<std::string, Suite> kSuites = {{"wronskian", Suite::Wronskian},
                                                       {"recurrence", Suite::Recurrence},
                                                       {"near-one", Suite::NearOne},
                                                       {"oracle", Suite::Oracle}};
  SweepOptions opt;
  opt.suite = kSuites.at(f.suite);
  opt.box = f.box;
  opt.samples = f.samples;
  opt.seed = f.seed;
  opt.threshold = f.threshold;
  opt.grid_path = f.grid;
  opt.rec.branch = f.branch == "kummer" ? RecurrenceBranch::Kummer : RecurrenceBranch::LargeX;
  opt.rec.kummer_fixed_terms = f.kummer_terms;
  if (opt.box.xmin >= opt.box.xmax || opt.box.taumin > opt.box.taumax || opt.box.mmin > opt.box.mmax ||
      opt.box.xmin <= 1.0 || opt.box.taumin < 0.0 || opt.box.mmin < 0) {
    std::fprintf(stderr, "error: domain box outside (1, inf) x [0, inf) x {0, 1, ...} or empty\n");
    return kExitBadFlags;
  }
  if (opt.suite == Suite::Oracle) {
    std::vector<OracleGridRow> rows;
    std::string err;
    if (!read_oracle_grid(opt.grid_path, rows, err)) {
      std::fprintf(stderr, "error: %s\n", err.c_str());
      return kExitParse;
    }
  }

  const SweepResult res = run_sweep(opt);
  const SweepSummary& s = res.summary;

  if (!f.out.empty()) {
    std::ofstream os(f.out, std::ios::binary);
    if (!os) {
      std::fprintf(stderr, "error: cannot write %s\n", f.out.c_str());
      return kExitBadFlags;
    }
    write_csv(os, opt, res.records, f.all_rows);
  } else if (is_map) {
    write_csv(std::cout, opt, res.records, f.all_rows);
  }

  FILE* sink = is_map && f.out.empty() ? stderr : stdout;
  std::fprintf(sink, "suite=%s points=%llu skipped=%llu\n", f.suite.c_str(),
               static_cast<unsigned long long>(s.count), static_cast<unsigned long long>(s.skipped));
  std::fprintf(sink, "max_err=%.3e at x=%s tau=%s m=%d\n", s.max_err, format_g17(s.worst_x).c_str(),
               format_g17(s.worst_tau).c_str(), s.worst_m);
  std::fprintf(sink, "over_threshold=%llu fraction=%.6f threshold=%.3e\n",
               static_cast<unsigned long long>(s.over_threshold), s.fraction_over(), opt.threshold);
  std::fprintf(sink, "fraction_le_1e-13=%.6f\n", s.fraction_below_1e13());

  if (is_map) return 0;
  const double budget = f.budget.value_or(default_budget(opt.suite));
  bool ok = s.count > 0 && s.fraction_over() <= budget;
  if (f.max_err && s.max_err > *f.max_err) ok = false;
  if (f.min_fraction_1e13 && s.fraction_below_1e13() < *f.min_fraction_1e13) ok = false;
  std::fprintf(sink, "budget=%.6f result=%s\n", budget, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int run_fixture(const std::string& path) {
  FixtureFile file;
  std::string err;
  if (!read_fixture(path, file, err)) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return kExitParse;
  }
  int failed = 0;
  int idx = 0;
  for (const FixtureLine& l : file.lines) {
    ++idx;
    const FixtureLineCheck c = check_fixture_line(l);
    if (!c.pass) ++failed;
    double worst = 0.0;
    for (double e : c.rel_err) worst = std::max(worst, e);
    std::printf("%3d x=%s m=%d tau=%s status=%d max_rel_err=%.2e %s\n", idx, format_g17(l.x).c_str(), l.m,
                format_g17(l.tau).c_str(), to_int(c.status), worst, c.pass ? "PASS" : "FAIL");
  }
  std::printf("%d/%d lines pass\n", idx - failed, idx);
  return failed == 0 ? 0 : 1;
}

void add_sweep_flags(CLI::App* cmd, SweepFlags& f, bool is_map) {
  cmd->add_option("--suite", f.suite, "wronskian | recurrence | near-one | oracle")
      ->check(CLI::IsMember({"wronskian", "recurrence", "near-one", "oracle"}));
  cmd->add_option("--xmin", f.box.xmin);
  cmd->add_option("--xmax", f.box.xmax);
  cmd->add_option("--taumin", f.box.taumin);
  cmd->add_option("--taumax", f.box.taumax);
  cmd->add_option("--mmin", f.box.mmin);
  cmd->add_option("--mmax", f.box.mmax);
  cmd->add_option("--samples", f.samples);
  cmd->add_option("--seed", f.seed);
  cmd->add_option("--threshold", f.threshold);
  cmd->add_option("--out", f.out, "CSV output path");
  cmd->add_option("--grid", f.grid, "oracle grid file");
  cmd->add_option("--branch", f.branch, "recurrence suite kernel: large-x | kummer")
      ->check(CLI::IsMember({"large-x", "kummer"}));
  cmd->add_option("--kummer-terms", f.kummer_terms, "fixed Kummer length N (N+1 terms); 0 = adaptive")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--all", f.all_rows, "write every evaluated point, not only failures");
  if (!is_map) {
    cmd->add_option("--budget", f.budget, "largest tolerated over-threshold fraction");
    cmd->add_option("--max-err", f.max_err, "fail if the largest error exceeds this");
    cmd->add_option("--min-fraction-1e-13", f.min_fraction_1e13,
                    "fail if fewer points than this fraction reach 1e-13");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conical functions P^m_{-1/2+i tau}(x), R^m_{-1/2+i tau}(x)"};
  app.require_subcommand(1);

  EvalFlags ef;
  CLI::App* eval = app.add_subcommand("eval", "evaluate at one point");
  eval->add_option("--x", ef.x)->required();
  eval->add_option("--m", ef.m)->required();
  eval->add_option("--tau", ef.tau)->required();
  eval->add_option("--function", ef.function, "p | r | both")->check(CLI::IsMember({"p", "r", "both"}));
  eval->add_flag("--deriv", ef.deriv, "also print x-derivatives");

  SweepFlags vf, mf;
  CLI::App* verify = app.add_subcommand("verify", "accuracy sweep with summary and budget");
  add_sweep_flags(verify, vf, false);
  CLI::App* map = app.add_subcommand("map", "failure map CSV");
  add_sweep_flags(map, mf, true);

  std::string fixture_path;
  CLI::App* fixture = app.add_subcommand("fixture", "recompute a reference fixture");
  fixture->add_option("path", fixture_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadFlags;
  }

  if (*eval) return run_eval(ef);
  if (*verify) return run_sweep_cmd(vf, false);
  if (*map) return run_sweep_cmd(mf, true);
  if (*fixture) return run_fixture(fixture_path);
  return kExitBadFlags;
}
