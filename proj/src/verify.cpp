#include "conical/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "conical/conical_p.hpp"
#include "conical/conical_r.hpp"

namespace conical {

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

double rel_dev(const Scaled& num, const Scaled& den) {
  const Scaled q = num / den;
  return std::fabs(q.to_double() - 1.0);
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Wronskian: return "wronskian";
    case Suite::Recurrence: return "recurrence";
    case Suite::NearOne: return "near-one";
    case Suite::Oracle: return "oracle";
  }
  return "?";
}

}  // namespace

QuasiRandom::QuasiRandom(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& s : shift_) s = u(gen);
}

std::array<double, 3> QuasiRandom::point(std::uint64_t i) const {
  static constexpr unsigned kBases[3] = {2, 3, 5};
  std::array<double, 3> p{};
  for (int d = 0; d < 3; ++d) {
    double v = radical_inverse(i + 1, kBases[d]) + shift_[d];
    p[d] = v - std::floor(v);
  }
  return p;
}

EvalPoint map_to_box(const std::array<double, 3>& u, const DomainBox& box) {
  EvalPoint p;
  p.x = box.xmin + (box.xmax - box.xmin) * u[0];
  p.tau = box.taumin + (box.taumax - box.taumin) * u[1];
  const int span = box.mmax - box.mmin + 1;
  p.m = box.mmin + std::min(span - 1, static_cast<int>(u[2] * span));
  return p;
}

Scaled wronskian_exact(double x, int m, double tau) {
  Scaled pi_m = Scaled::from(1.0);
  for (int j = 0; j < m; ++j) pi_m = pi_m * ((j + 0.5) * (j + 0.5) + tau * tau);
  // (e^{-pi tau} + sinh(pi tau)) / cosh(pi tau) == 1, so only the gamma
  // magnitude and the (1 - x^2) factor survive.
  return -(pi_m * (1.0 / ((x - 1.0) * (x + 1.0))));
}

double cosh_identity_residual(double tau) {
  const double a = std::numbers::pi * tau;
  // ln(e^{-a} + sinh a) with sinh a = (e^a - e^{-a}) / 2 kept separate.
  const double lhs = std::log(std::exp(-a) + std::sinh(a));
  const double rhs = std::log(std::cosh(a));
  return (lhs - rhs) / std::max(1.0, std::fabs(rhs));
}

VerificationRecord wronskian_record(double x, int m, double tau, const NumericConfig& cfg) {
  VerificationRecord r;
  r.x = x;
  r.tau = tau;
  r.m = m;
  const ConicPRScaled s = conicpr_scaled(x, m, tau, cfg);
  r.status = s.status;
  r.region = s.r_region;
  if (s.status != EvalStatus::Ok) return r;
  const Scaled w = s.pm * s.rmd - s.pmd * s.rm;
  r.err_wronskian = rel_dev(w, wronskian_exact(x, m, tau));
  r.err = r.err_wronskian;
  return r;
}

VerificationRecord recurrence_record(double x, int m, double tau, const RecurrenceOptions& opt,
                                     const NumericConfig& cfg) {
  VerificationRecord r;
  r.x = x;
  r.tau = tau;
  r.m = m;
  if (m < 1) {
    r.status = EvalStatus::OutOfRange;
    return r;
  }
  Scaled v[3];
  for (int k = 0; k < 3; ++k) {
    ScaledEval e;
    if (opt.branch == RecurrenceBranch::LargeX) {
      e = r_large_x(x, tau, m - 1 + k, cfg);
      r.region = Region::LargeX;
    } else {
      e = opt.kummer_fixed_terms > 0 ? r_kummer(x, tau, m - 1 + k, opt.kummer_fixed_terms, true)
                                     : r_kummer(x, tau, m - 1 + k, cfg.kummer_terms);
      r.region = Region::KummerLargeTau;
    }
    if (e.status != EvalStatus::Ok) {
      r.status = e.status;
      return r;
    }
    v[k] = e.value;
  }
  const double a = 2.0 * m * x / std::sqrt((x - 1.0) * (x + 1.0));
  const double c = (m - 0.5) * (m - 0.5) + tau * tau;
  r.err_rec1 = rel_dev(v[1] * a - v[0] * c, v[2]);
  r.err_rec2 = rel_dev(v[2] + v[0] * c, v[1] * a);
  r.err_min = std::min(r.err_rec1, r.err_rec2);
  r.err = r.err_min;
  return r;
}

VerificationRecord near_one_record(double x, double tau, const NumericConfig& cfg) {
  VerificationRecord r;
  r.x = x;
  r.tau = tau;
  r.m = 0;
  r.region = Region::SeriesNear1;
  const PValue p0 = p_series_scaled(x, 0, tau, std::max(cfg.series_max_terms, 1000));
  const PValue p1 = p_series_scaled(x, 1, tau, std::max(cfg.series_max_terms, 1000));
  const R01Series rs = r01_series(x, tau, cfg);
  for (EvalStatus s : {p0.status, p1.status, rs.status}) {
    if (s != EvalStatus::Ok) r.status = s;
  }
  if (r.status != EvalStatus::Ok) return r;
  const Scaled w = p0.pm * Scaled::from(rs.r1) - p1.pm * Scaled::from(rs.r0);
  r.err_wronskian = rel_dev(w, Scaled::from(1.0 / std::sqrt((x - 1.0) * (x + 1.0))));
  r.err = r.err_wronskian;
  return r;
}

bool read_oracle_grid(const std::string& path, std::vector<OracleGridRow>& rows, std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot open " + path;
    return false;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream is(line);
    OracleGridRow row;
    std::string kind;
    if (!(is >> kind >> row.x >> row.m >> row.tau >> row.value >> row.deriv) || (kind != "P" && kind != "R")) {
      error = path + ":" + std::to_string(lineno) + ": malformed row";
      return false;
    }
    row.kind = kind[0];
    rows.push_back(row);
  }
  if (rows.empty()) {
    error = path + ": no rows";
    return false;
  }
  return true;
}

OracleCheck check_oracle_row(const OracleGridRow& row, const NumericConfig& cfg) {
  OracleCheck c;
  Scaled v, d;
  if (row.kind == 'P' && row.x < 1.0) {
    const PValue p = p_eval(row.x, row.m, row.tau, cfg);
    c.status = p.status;
    c.region = p.region;
    v = p.pm;
    d = p.pmd;
  } else {
    const ConicPRScaled s = conicpr_scaled(row.x, row.m, row.tau, cfg);
    c.status = s.status;
    c.region = row.kind == 'P' ? s.p_region : s.r_region;
    v = row.kind == 'P' ? s.pm : s.rm;
    d = row.kind == 'P' ? s.pmd : s.rmd;
  }
  if (c.status != EvalStatus::Ok) return c;
  c.err_value = rel_dev(v, Scaled::from(row.value));
  c.err_deriv = rel_dev(d, Scaled::from(row.deriv));
  return c;
}

namespace {

double wavenumber(double x, int m, double tau) {
  const double q = std::fabs((x - 1.0) * (x + 1.0));
  return std::sqrt(tau * tau + double(m) * m / q + 1.0) / std::sqrt(q);
}

// Value (and analytic derivative) of P or R in scaled form.
bool eval_scaled(char kind, double x, int m, double tau, const NumericConfig& cfg, Scaled& v, Scaled* d) {
  if (kind == 'P') {
    if (validate({x, m, tau}, FunctionKind::P) != EvalStatus::Ok) return false;
    const PValue p = p_eval(x, m, tau, cfg);
    v = p.pm;
    if (d) *d = p.pmd;
    return p.status == EvalStatus::Ok;
  }
  if (validate({x, m, tau}, FunctionKind::R) != EvalStatus::Ok) return false;
  const RPair r = r_pair(x, m, tau, cfg);
  v = r.rm;
  if (d) {
    const double q = (x - 1.0) * (x + 1.0);
    *d = r.rm * (m * x / q) - r.rm1 * (1.0 / std::sqrt(q));
  }
  return r.status == EvalStatus::Ok;
}

double fd_step(double x, int m, double tau, double scale) {
  return std::min({scale / wavenumber(x, m, tau), 1e-6 * std::fabs(x) + 1e-6, 0.1 * std::fabs(x - 1.0),
                   0.1 * std::fabs(x + 1.0)});
}

double abs_scaled_ratio(const Scaled& a, const Scaled& b) {
  if (a.mant == 0.0) return 0.0;
  return std::fabs((a / b).to_double());
}

}  // namespace

FdCheck ode_residual(char kind, double x, int m, double tau, const NumericConfig& cfg) {
  FdCheck c;
  // five-point stencils; the stencil reaches 2h, kept clear of x = +-1
  const double h = std::min({0.02 / wavenumber(x, m, tau), 0.05 * std::fabs(x - 1.0), 0.05 * std::fabs(x + 1.0)});
  Scaled f[5];
  for (int i = 0; i < 5; ++i) {
    if (!eval_scaled(kind, x + (i - 2) * h, m, tau, cfg, f[i], nullptr)) {
      c.status = EvalStatus::OutOfRange;
      return c;
    }
  }
  const double q = 1.0 - x * x;
  const Scaled d2 = (f[1] * 16.0 + f[3] * 16.0 - f[0] - f[4] - f[2] * 30.0) * (1.0 / (12.0 * h * h));
  const Scaled d1 = (f[3] * 8.0 - f[1] * 8.0 + f[0] - f[4]) * (1.0 / (12.0 * h));
  const Scaled t2 = d2 * q;
  const Scaled t1 = d1 * (-2.0 * x);
  const Scaled t0 = f[2] * (-(0.25 + tau * tau) - double(m) * m / q);
  Scaled scale = Scaled::from(0.0);
  for (const Scaled* t : {&t0, &t1, &t2}) scale = scale + Scaled{std::fabs(t->mant), t->exp2};
  c.err = abs_scaled_ratio(t2 + t1 + t0, scale);
  return c;
}

FdCheck fd_derivative(char kind, double x, int m, double tau, const NumericConfig& cfg) {
  FdCheck c;
  const double h = fd_step(x, m, tau, 1e-4);
  Scaled f0, d0, fp, fm;
  if (!eval_scaled(kind, x, m, tau, cfg, f0, &d0) || !eval_scaled(kind, x + h, m, tau, cfg, fp, nullptr) ||
      !eval_scaled(kind, x - h, m, tau, cfg, fm, nullptr)) {
    c.status = EvalStatus::OutOfRange;
    return c;
  }
  const Scaled fd = (fp - fm) * (1.0 / (2.0 * h));
  const Scaled diff = fd - d0;
  c.err = abs_scaled_ratio(diff, d0);
  const Scaled env = Scaled{std::fabs(d0.mant), d0.exp2} + Scaled{std::fabs(f0.mant), f0.exp2} * wavenumber(x, m, tau);
  c.err_envelope = abs_scaled_ratio(diff, env);
  return c;
}

SweepResult run_sweep(const SweepOptions& opt, const NumericConfig& cfg) {
  SweepResult out;
  if (opt.suite == Suite::Oracle) {
    std::vector<OracleGridRow> rows;
    std::string err;
    if (read_oracle_grid(opt.grid_path, rows, err)) {
      for (const OracleGridRow& row : rows) {
        const OracleCheck c = check_oracle_row(row, cfg);
        VerificationRecord r;
        r.x = row.x;
        r.tau = row.tau;
        r.m = row.m;
        r.region = c.region;
        r.status = c.status;
        r.err = c.err_value;
        out.records.push_back(r);
      }
    }
  } else {
    const QuasiRandom qr(opt.seed);
    out.records.reserve(opt.samples);
    for (std::uint64_t i = 0; i < opt.samples; ++i) {
      const auto u = qr.point(i);
      EvalPoint p = map_to_box(u, opt.box);
      switch (opt.suite) {
        case Suite::Wronskian:
          out.records.push_back(wronskian_record(p.x, p.m, p.tau, cfg));
          break;
        case Suite::Recurrence:
          out.records.push_back(recurrence_record(p.x, p.m, p.tau, opt.rec, cfg));
          break;
        case Suite::NearOne: {
          const double tmax = std::min(opt.box.taumax, cfg.series_cancel_max / std::sqrt((p.x - 1.0) / 2.0));
          p.tau = opt.box.taumin + (tmax - opt.box.taumin) * u[1];
          out.records.push_back(near_one_record(p.x, p.tau, cfg));
          break;
        }
        case Suite::Oracle:
          break;
      }
    }
  }
  SweepSummary& s = out.summary;
  for (const VerificationRecord& r : out.records) {
    if (r.status != EvalStatus::Ok) {
      ++s.skipped;
      continue;
    }
    ++s.count;
    if (r.err > opt.threshold) ++s.over_threshold;
    if (r.err <= 1e-13) ++s.below_1e13;
    if (r.err >= s.max_err) {
      s.max_err = r.err;
      s.worst_x = r.x;
      s.worst_tau = r.tau;
      s.worst_m = r.m;
    }
  }
  return out;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const SweepOptions& opt, const std::vector<VerificationRecord>& records,
               bool all_rows) {
  os << "# suite=" << suite_name(opt.suite) << " seed=" << opt.seed << " samples=" << opt.samples
     << " threshold=" << format_g17(opt.threshold) << "\n";
  os << "x,tau,m,err,region,status\n";
  for (const VerificationRecord& r : records) {
    const bool failing = r.status != EvalStatus::Ok || r.err > opt.threshold;
    if (!all_rows && !failing) continue;
    os << format_g17(r.x) << ',' << format_g17(r.tau) << ',' << r.m << ',' << format_g17(r.err) << ','
       << region_name(r.region) << ',' << to_int(r.status) << '\n';
  }
}

}  // namespace conical
