#pragma once

#include <span>

#include "intwine/diagnostics/conditions.hpp"
#include "intwine/dynamics/matrix.hpp"

namespace intwine::diagnostics {

enum class BoundFormula {
  /// nu (mu1 v mu2)/(mu1 ^ mu2) g.
  NudgeMutRatio,
  /// nu min{g^2, g_mu^2 + mu_tilde^2 g_tilde^2}^{1/2}, and when mu1 > mu2 and
  /// K^2 >= mu1 + mu2 also nu min{nu g^2/(mu1-mu2), nu g_mu^2/(mu1-mu2) + g_tilde^2}^{1/2}.
  NudgeSymMin,
  /// sqrt(96) nu g_theta on (||v^theta||^2 + ||w_theta||^2)^{1/2}.
  DRMutTwisted,
  /// 4 k nu (theta1 = 1).
  DRTheta1,
  /// 4 k nu (theta1 = theta2 = 1/2).
  DRHalf,
  /// 6 k nu (theta2 small).
  DRSmallTheta2,
  /// 8 nu k (theta1 close to theta2).
  DRBalanced,
  /// C1 nu g.
  TheoremC1,
  /// sqrt(2) nu sup|P_N h| / nu^2 for the low-mode heat block.
  HeatLowMode,
};

struct BoundInputs {
  double nu = 1.0;
  double K = 0.0;
  GrashofSet grashof;
  double mu_tilde = 0.0;
  double C1 = 1.0;
  /// sup |P_N h| / nu^2 for HeatLowMode.
  double heat_h_frak = 0.0;
};

/// Closed-form bound value; infinite when the formula degenerates
/// (e.g. mu1 ^ mu2 = 0).
double uniform_bound_value(BoundFormula f, const dynamics::IntertwiningMatrix& m,
                           const BoundInputs& in);

/// Compares max(series) against the bound (the caller passes the tail).
ConditionReport check_uniform_bound(std::span<const double> series, BoundFormula f,
                                    const dynamics::IntertwiningMatrix& m, const BoundInputs& in);

std::string to_string(BoundFormula f);

}  // namespace intwine::diagnostics
