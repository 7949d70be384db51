#pragma once

#include <string>
#include <vector>

#include "intwine/diagnostics/constants.hpp"
#include "intwine/diagnostics/grashof.hpp"

namespace intwine::diagnostics {

enum class Orientation { LessEqual, GreaterEqual };

/// One evaluated inequality `lhs <= rhs` (or `>=`). margin is positive when
/// the inequality holds: rhs - lhs for LessEqual, lhs - rhs for GreaterEqual.
struct ConditionReport {
  std::string name;
  bool satisfied = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Orientation orientation = Orientation::LessEqual;
  std::string formula;
  std::string constants;

  std::string to_text() const;
};

ConditionReport make_report(std::string name, double lhs, double rhs, Orientation o,
                            std::string formula, std::string constants = {});
/// All components must hold; reports the component with the smallest margin.
ConditionReport combine(std::string name, const std::vector<ConditionReport>& parts,
                        std::string formula);

/// 2 C_L m <= K (finite-dimensionally-driven nudging synchronization).
ConditionReport check_nudge_fdss_condition(double K, double m_frak, const ConstantsConfig& c);
/// 2 C_L m <= K and C_L^2 m^2 nu <= mu1 + mu2 (nudging self-synchronization).
ConditionReport check_nudge_ss_condition(double K, double mu1, double mu2, double m_frak,
                                         double nu, const ConstantsConfig& c);
/// 12 C_L m <= K (direct-replacement self-synchronization).
ConditionReport check_dr_condition(double K, double m_frak, const ConstantsConfig& c);

/// coeff ln(e + K)^log_power X <= K^k_power.
ConditionReport check_K_log_condition(std::string name, double K, double X, double coeff,
                                      double log_power = 0.5, int k_power = 1,
                                      std::string constants = {});
/// C0 ln(e + K)^{1/2} g <= K.
ConditionReport check_K_log_condition(double K, double g_frak, double C0);

/// 64 sqrt(6) (C_S v C_A^{1/2}) ln(e+K)^{1/2} g_theta <= K (mutual DR).
ConditionReport check_mut_dr_K(double K, double g_theta, const ConstantsConfig& c);
/// 32 C_S^2 ln(e+K) k^2 <= K^2 (theta1 = 1).
ConditionReport check_theta1_K(double K, double k_frak, const ConstantsConfig& c);
/// 20 (C_A v C_S)^2 ln(e+K) k^2 <= K^2 (small theta2, refined).
ConditionReport check_small_theta2_K_refined(double K, double k_frak, const ConstantsConfig& c);

/// Inputs of the symmetric direct-replacement regime conditions.
struct ThetaRegimeInputs {
  double theta1 = 1.0;
  double theta2 = 0.0;
  double K = 0.0;
  /// ||v0|| / nu.
  double m0_frak = 0.0;
  GrashofSet grashof;
  /// ||r0|| / nu and (||z0||^2 + ||w0||^2) / nu^2.
  double r0_over_nu = 0.0;
  double zw0_over_nu2 = 0.0;
  /// Overrides the computed m in the small-theta2 / balanced windows when > 0.
  double m_override = 0.0;
};

/// Small theta2 m^2 = 16 (1 + C_S^2 ln(e+K)(1 + p^2)) (d^2 + f^2).
double m_frak_small_theta2(double K, const GrashofSet& g, const ConstantsConfig& c);
/// Balanced m^2 = 2e (zw0 + k^2 + h^2 + C_S^2 ln(e+K) p^4).
double m_frak_balanced(double K, double zw0_over_nu2, const GrashofSet& g,
                       const ConstantsConfig& c);

/// One report per regime inequality: the symmetric-DR theorem window and its
/// K condition, the small-theta2 K floor, K balance and theta2 window, the
/// balanced K condition and |theta1 - theta2| window.
std::vector<ConditionReport> check_theta_regime(const ThetaRegimeInputs& in,
                                                const ConstantsConfig& c);

}  // namespace intwine::diagnostics
