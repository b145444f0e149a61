#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conical/common.hpp"

namespace conical {

/// One sampled point and its error metrics. Unused metrics stay at zero.
struct VerificationRecord {
  double x = 0.0, tau = 0.0;
  int m = 0;
  double err_wronskian = 0.0;
  double err_rec1 = 0.0;
  double err_rec2 = 0.0;
  double err_min = 0.0;
  Region region = Region::SeriesNear1;
  EvalStatus status = EvalStatus::Ok;

  /// The metric a suite reports for this record.
  double err = 0.0;
};

/// Halton sequence in bases 2, 3, 5 with a Cranley-Patterson rotation drawn
/// from the seed; point i is a pure function of (seed, i).
class QuasiRandom {
 public:
  explicit QuasiRandom(std::uint64_t seed);
  std::array<double, 3> point(std::uint64_t i) const;

 private:
  std::array<double, 3> shift_{};
};

struct DomainBox {
  double xmin = 1.001, xmax = 100.0;
  double taumin = 0.0, taumax = 100.0;
  int mmin = 0, mmax = 100;
};

/// Maps a unit-cube point to (x, tau, m); m uniform over the integer range.
EvalPoint map_to_box(const std::array<double, 3>& u, const DomainBox& box);

/// Exact right side of the Wronskian P^m R^m' - P^m' R^m = -prod_{j<m}((j+1/2)^2+tau^2)/(x^2-1),
/// with (e^{-pi tau} + sinh(pi tau)) / cosh(pi tau) reduced to 1.
Scaled wronskian_exact(double x, int m, double tau);

/// ln(e^{-pi tau} + sinh(pi tau)) - ln cosh(pi tau), divided by
/// max(1, ln cosh(pi tau)) so the result reads in ulps of the log.
/// Identically zero in exact arithmetic.
double cosh_identity_residual(double tau);

/// Relative deviation of the computed Wronskian from its exact value.
VerificationRecord wronskian_record(double x, int m, double tau, const NumericConfig& cfg = default_config());

/// Which kernel supplies R^{m-1}, R^m, R^{m+1} in the recurrence test.
enum class RecurrenceBranch { LargeX, Kummer };

struct RecurrenceOptions {
  RecurrenceBranch branch = RecurrenceBranch::LargeX;
  // Kummer only: > 0 fixes the number of terms to kummer_fixed_terms + 1,
  // otherwise the adaptive cap cfg.kummer_terms applies.
  int kummer_fixed_terms = 0;
};

/// err_rec1 = |(2mx/s R^m - c R^{m-1}) / R^{m+1} - 1|,
/// err_rec2 = |(R^{m+1} + c R^{m-1}) / (2mx/s R^m) - 1|, c = (m-1/2)^2 + tau^2.
VerificationRecord recurrence_record(double x, int m, double tau, const RecurrenceOptions& opt,
                                     const NumericConfig& cfg = default_config());

/// Near-one check P^0 R^1 - P^1 R^0 = 1 / sqrt(x^2-1) with the series of both functions.
VerificationRecord near_one_record(double x, double tau, const NumericConfig& cfg = default_config());

enum class Suite { Wronskian, Recurrence, NearOne, Oracle };

struct SweepOptions {
  Suite suite = Suite::Wronskian;
  DomainBox box;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  double threshold = 1e-12;
  RecurrenceOptions rec;
  std::string grid_path;  // oracle suite
};

struct SweepSummary {
  std::uint64_t count = 0;    // evaluated points with status 0
  std::uint64_t skipped = 0;  // points with nonzero status
  double max_err = 0.0;
  std::uint64_t over_threshold = 0;
  std::uint64_t below_1e13 = 0;
  double worst_x = 0.0, worst_tau = 0.0;
  int worst_m = 0;

  double fraction_over() const { return count ? double(over_threshold) / double(count) : 0.0; }
  double fraction_below_1e13() const { return count ? double(below_1e13) / double(count) : 0.0; }
};

struct SweepResult {
  std::vector<VerificationRecord> records;  // in point-index order
  SweepSummary summary;
};

/// Runs a suite over quasi-random points; records are kept in index order.
/// The near-one suite draws tau in (taumin, min(taumax, series limit at x)).
SweepResult run_sweep(const SweepOptions& opt, const NumericConfig& cfg = default_config());

/// One row of the frozen oracle grid.
struct OracleGridRow {
  double x = 0.0, tau = 0.0;
  int m = 0;
  char kind = 'P';  // 'P' or 'R'
  double value = 0.0, deriv = 0.0;
};

/// Reads the grid file (whitespace columns: kind x m tau value deriv; '#' comments).
bool read_oracle_grid(const std::string& path, std::vector<OracleGridRow>& rows, std::string& error);

/// Errors for one grid row: value and derivative relative errors.
struct OracleCheck {
  double err_value = 0.0;
  double err_deriv = 0.0;
  Region region = Region::SeriesNear1;
  EvalStatus status = EvalStatus::Ok;
};
OracleCheck check_oracle_row(const OracleGridRow& row, const NumericConfig& cfg = default_config());

/// Finite-difference checks on P (x > -1) or R (x > 1). Steps are sized on the
/// local wavenumber k = sqrt(tau^2 + m^2/|x^2-1| + 1) / sqrt|x^2-1|.
struct FdCheck {
  double err = 0.0;           // relative to the derivative itself (derivative check) or to the term sum (ODE)
  double err_envelope = 0.0;  // derivative check only: relative to |f'| + k |f|
  EvalStatus status = EvalStatus::Ok;
};

/// Five-point central differences substituted into
///   (1-x^2) w'' - 2x w' - (1/4 + tau^2 + m^2/(1-x^2)) w = 0;
/// the residual is divided by the sum of the three term magnitudes.
FdCheck ode_residual(char kind, double x, int m, double tau, const NumericConfig& cfg = default_config());

/// Central difference of the value against the analytic x-derivative.
FdCheck fd_derivative(char kind, double x, int m, double tau, const NumericConfig& cfg = default_config());

/// CSV with header x,tau,m,err,region,status; rows with err > threshold unless all_rows.
void write_csv(std::ostream& os, const SweepOptions& opt, const std::vector<VerificationRecord>& records,
               bool all_rows = false);

std::string format_g17(double v);

}  // namespace conical
