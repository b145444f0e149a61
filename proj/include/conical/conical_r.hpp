#pragma once

#include <vector>

#include "conical/common.hpp"
#include "conical/gammakit.hpp"

namespace conical {

/// z = (1-x)/2 and w = sqrt((x-1)/(x+1)) for the logarithmic series.
struct NearOneVars {
  double z = 0.0;
  double w = 0.0;

  static NearOneVars at(double x);
};

struct R01Series {
  double r0 = 0.0;
  double r1 = 0.0;
  double est_err = 0.0;
  EvalStatus status = EvalStatus::Ok;
  int terms = 0;
};

/// R^0 and R^1 from the logarithmic series around x = 1.
R01Series r01_series(double x, double tau, const NumericConfig& cfg = default_config());

/// Coefficients f_0..f_N of the Kummer-U expansion for b = -mu - 1/2, with
/// t = arccosh x. f_0 = 1.
std::vector<double> kummer_f_coefficients(double t, double b, int N);

/// Precomputed pieces of the large-tau expansion at one (x, tau, mu).
struct KummerState {
  double x = 0.0, tau = 0.0;
  int mu = 0;
  double z = 0.0;      // 1 / (e^{2t} - 1)
  double alpha = 0.0;  // ln((z+1)/z) = 2t
  double phi = 0.0;    // tau * t
  double b = 0.0;      // -mu - 1/2
  double d = 0.0;      // z * alpha
  int N = 0;
  std::vector<double> Phi_re, Phi_im, f;
  EvalStatus status = EvalStatus::Ok;
};

KummerState kummer_state(double x, double tau, int mu, int N);

struct ScaledEval {
  Scaled value;
  double est_rel_err = 0.0;
  EvalStatus status = EvalStatus::Ok;
  int terms = 0;
};

/// Large-tau expansion at any integer order mu >= 0, summed until the terms
/// stall or max_terms is reached; with fixed, exactly max_terms + 1 terms.
ScaledEval r_kummer(double x, double tau, int mu, int max_terms, bool fixed = false);

/// Kummer branch restricted to mu in {0, 1}; terms capped by cfg.kummer_terms.
EvalResult r01_kummer(double x, double tau, int mu, const NumericConfig& cfg = default_config());

/// Fixed-length variant: exactly N + 1 terms, no early exit.
double r_kummer_fixed(double x, double tau, int mu, int N);

struct RaiseResult {
  std::vector<Scaled> values;  // R^{m_from - 1}, ..., R^{m_to}
  EvalStatus status = EvalStatus::Ok;
};

/// Forward order recurrence
///   R^{m+1} = (2 m x / sqrt(x^2-1)) R^m - ((m-1/2)^2 + tau^2) R^{m-1}.
RaiseResult raise_order(Scaled r_prev, Scaled r_curr, int m_from, int m_to, double x, double tau,
                        const NumericConfig& cfg = default_config());
RaiseResult raise_order(double r_prev, double r_curr, int m_from, int m_to, double x, double tau,
                        const NumericConfig& cfg = default_config());

/// Precomputed pieces of the large-x expansion.
struct LargeXState {
  double z = 0.0;
  double phi = 0.0;
  GammaRatioPolar gamma_polar;
  PochhammerPolarSeq poch;
  std::vector<double> psi;  // psi_k = phi - rho - sigma_k
};

LargeXState large_x_state(double x, double tau, int mu, int K);

/// Large-x phase expansion at order mu >= 0.
ScaledEval r_large_x(double x, double tau, int mu, const NumericConfig& cfg = default_config());

/// R^m and R^{m+1} carried in scaled form, with the region that produced them.
struct RPair {
  Scaled rm, rm1;
  double est_rel_err = 0.0;
  EvalStatus status = EvalStatus::Ok;
  Region region = Region::SeriesNear1;
};

RPair r_pair(double x, int m, double tau, const NumericConfig& cfg = default_config());

/// R^m_{-1/2+i tau}(x), x > 1.
EvalResult conicr(double x, int m, double tau, const NumericConfig& cfg = default_config());

}  // namespace conical
