#pragma once

#include "conical/common.hpp"

namespace conical {

/// P^m and dP^m/dx in scaled form, with provenance.
struct PValue {
  Scaled pm, pmd;
  double est_rel_err = 0.0;
  EvalStatus status = EvalStatus::Ok;
  Region region = Region::SeriesNear1;
  int terms = 0;  // series terms or march steps
};

/// Hypergeometric series around x = 1 for x in (-1, 1) or (1, 3):
///   P^{-m} = (1/m!) (|1-x|/(1+x))^{m/2} F(1/2 - i tau, 1/2 + i tau; 1 + m; (1-x)/2),
/// then P^m = prod_{j<m} ((j+1/2)^2 + tau^2) P^{-m}. Derivative termwise.
PValue p_series_scaled(double x, int m, double tau, int max_terms);

struct PSeriesResult {
  double pm = 0.0;
  double pmd = 0.0;
  double est_err = 0.0;
  EvalStatus status = EvalStatus::Ok;
};

PSeriesResult p_series(double x, int m, double tau, const NumericConfig& cfg = default_config());

/// P^{-m} = pi / (cosh(pi tau) |Gamma(m+1/2+i tau)|^2) P^m. The factor is
/// applied as the equal product 1 / prod_{j<m} ((j+1/2)^2 + tau^2); negative m
/// applies the inverse, so the two calls compose to the identity.
EvalResult p_negative_order(double pm, int m, double tau, const NumericConfig& cfg = default_config());

/// ln pi - ln cosh(pi tau) - ln |Gamma(m+1/2+i tau)|^2 through the gamma kernel.
double p_negative_order_log_factor(int m, double tau);

/// Integration of the Legendre equation in t = arccosh x (x > 1) or
/// theta = arccos x (x < 1) from a series anchor, at order m directly.
PValue p_march_scaled(double x_target, int m, double tau, const NumericConfig& cfg = default_config());

/// Anchor used by the march for a given target.
double p_march_anchor(double x_target, double tau, int m, const NumericConfig& cfg = default_config());

struct PDeriv {
  double pm = 0.0;
  double pmd = 0.0;
  EvalStatus status = EvalStatus::Ok;
};

PDeriv p_ode_march(double x_target, int m, double tau, const NumericConfig& cfg = default_config());

/// Region choice plus evaluation, scaled.
PValue p_eval(double x, int m, double tau, const NumericConfig& cfg = default_config());

/// P^m_{-1/2+i tau}(x), x > -1.
EvalResult conicp(double x, int m, double tau, const NumericConfig& cfg = default_config());

/// P^m, P^{m+1}, R^m, R^{m+1} combined into values and x-derivatives through
///   dF^m/dx = -F^{m+1} / sqrt(x^2-1) + m x / (x^2-1) F^m.
struct ConicPRScaled {
  Scaled pm, pmd, rm, rmd;
  double est_rel_err = 0.0;
  EvalStatus status = EvalStatus::Ok;
  Region p_region = Region::SeriesNear1;
  Region r_region = Region::SeriesNear1;
};

ConicPRScaled conicpr_scaled(double x, int m, double tau, const NumericConfig& cfg = default_config());

struct ConicPR {
  double pm = 0.0, pmd = 0.0, rm = 0.0, rmd = 0.0;
  EvalStatus status = EvalStatus::Ok;
};

/// Status is 0 or 1 only; any failure collapses to 1.
ConicPR conicpr(double x, int m, double tau, const NumericConfig& cfg = default_config());

}  // namespace conical
