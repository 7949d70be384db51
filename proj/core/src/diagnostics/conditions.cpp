#include "intwine/diagnostics/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "intwine/errors.hpp"

namespace intwine::diagnostics {

namespace {

double log_e_plus(double K) { return std::log(std::exp(1.0) + K); }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string lca(const ConstantsConfig& c) {
  return "C_L=" + num(c.C_L) + " C_A=" + num(c.C_A) + " C_S=" + num(c.C_S);
}

}  // namespace

std::string ConditionReport::to_text() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-28s %-9s lhs=%.6g rhs=%.6g margin=%.6g", name.c_str(),
                satisfied ? "satisfied" : "violated", lhs, rhs, margin);
  std::string s = buf;
  s += "  [" + formula + "]";
  if (!constants.empty()) s += " (" + constants + ")";
  if (!satisfied) s += " out of guaranteed regime";
  return s;
}

ConditionReport make_report(std::string name, double lhs, double rhs, Orientation o,
                            std::string formula, std::string constants) {
  ConditionReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.orientation = o;
  r.margin = o == Orientation::LessEqual ? rhs - lhs : lhs - rhs;
  // Comparison on the raw values so that equal sides count as satisfied.
  r.satisfied = o == Orientation::LessEqual ? lhs <= rhs : lhs >= rhs;
  r.formula = std::move(formula);
  r.constants = std::move(constants);
  return r;
}

ConditionReport combine(std::string name, const std::vector<ConditionReport>& parts,
                        std::string formula) {
  if (parts.empty()) throw PreconditionError("combine: no parts");
  const auto binding = std::min_element(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.satisfied != b.satisfied) return !a.satisfied;
    return a.margin < b.margin;
  });
  ConditionReport r = *binding;
  r.name = std::move(name);
  r.satisfied = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.satisfied; });
  r.formula = std::move(formula) + " binding: " + binding->name;
  return r;
}

ConditionReport check_nudge_fdss_condition(double K, double m_frak, const ConstantsConfig& c) {
  return make_report("nudge_fdss_K", 2.0 * c.C_L * m_frak, K, Orientation::LessEqual,
                     "2 C_L m <= K", "C_L=" + num(c.C_L));
}

ConditionReport check_nudge_ss_condition(double K, double mu1, double mu2, double m_frak,
                                         double nu, const ConstantsConfig& c) {
  auto k = check_nudge_fdss_condition(K, m_frak, c);
  k.name = "nudge_ss_K";
  auto mu = make_report("nudge_ss_mu", c.C_L * c.C_L * m_frak * m_frak * nu, mu1 + mu2,
                        Orientation::LessEqual, "C_L^2 m^2 nu <= mu1 + mu2", "C_L=" + num(c.C_L));
  return combine("nudge_ss", {k, mu}, "2 C_L m <= K and C_L^2 m^2 nu <= mu1 + mu2");
}

ConditionReport check_dr_condition(double K, double m_frak, const ConstantsConfig& c) {
  return make_report("dr_ss_K", 12.0 * c.C_L * m_frak, K, Orientation::LessEqual, "12 C_L m <= K",
                     "C_L=" + num(c.C_L));
}

ConditionReport check_K_log_condition(std::string name, double K, double X, double coeff,
                                      double log_power, int k_power, std::string constants) {
  const double lhs = coeff * std::pow(log_e_plus(K), log_power) * X;
  const double rhs = std::pow(K, k_power);
  std::string f = num(coeff) + " ln(e+K)^" + num(log_power) + " X <= K";
  if (k_power != 1) f += "^" + std::to_string(k_power);
  f += " with X=" + num(X);
  return make_report(std::move(name), lhs, rhs, Orientation::LessEqual, std::move(f),
                     std::move(constants));
}

ConditionReport check_K_log_condition(double K, double g_frak, double C0) {
  return check_K_log_condition("K_log", K, g_frak, C0, 0.5, 1, "C0=" + num(C0));
}

ConditionReport check_mut_dr_K(double K, double g_theta, const ConstantsConfig& c) {
  const double coeff = 64.0 * std::sqrt(6.0) * std::max(c.C_S, std::sqrt(c.C_A));
  return check_K_log_condition("mut_dr_K", K, g_theta, coeff, 0.5, 1, lca(c));
}

ConditionReport check_theta1_K(double K, double k_frak, const ConstantsConfig& c) {
  return check_K_log_condition("theta1_K", K, k_frak * k_frak, 32.0 * c.C_S * c.C_S, 1.0, 2,
                               lca(c));
}

ConditionReport check_small_theta2_K_refined(double K, double k_frak, const ConstantsConfig& c) {
  const double a = std::max(c.C_A, c.C_S);
  return check_K_log_condition("small_theta2_K_refined", K, k_frak * k_frak, 20.0 * a * a, 1.0, 2,
                               lca(c));
}

double m_frak_small_theta2(double K, const GrashofSet& g, const ConstantsConfig& c) {
  const double L = log_e_plus(K);
  const double m2 = 16.0 * (1.0 + c.C_S * c.C_S * L * (1.0 + g.p_frak * g.p_frak)) *
                    (g.d_frak * g.d_frak + g.f_frak * g.f_frak);
  return std::sqrt(m2);
}

double m_frak_balanced(double K, double zw0_over_nu2, const GrashofSet& g,
                       const ConstantsConfig& c) {
  const double L = log_e_plus(K);
  const double p2 = g.p_frak * g.p_frak;
  const double m2 = 2.0 * std::exp(1.0) *
                    (zw0_over_nu2 + g.k_frak * g.k_frak + g.h_frak * g.h_frak +
                     c.C_S * c.C_S * L * p2 * p2);
  return std::sqrt(m2);
}

std::vector<ConditionReport> check_theta_regime(const ThetaRegimeInputs& in,
                                                const ConstantsConfig& c) {
  c.validate();
  const double K = in.K;
  const double L = log_e_plus(K);
  const GrashofSet& g = in.grashof;
  std::vector<ConditionReport> out;

  // Symmetric direct-replacement theorem: theta window and K condition.
  const double window_lhs = std::min(1.0 - in.theta1, std::abs(in.theta1 - in.theta2));
  const double window_rhs = c.C2 / (L * std::pow(1.0 + in.m0_frak + g.g, 4));
  out.push_back(make_report("sym_dr_theta_window", window_lhs, window_rhs, Orientation::LessEqual,
                            "min{1-theta1, |theta1-theta2|} <= C2/(ln(e+K)(1+m0+g)^4)",
                            "C2=" + num(c.C2) + " m0=" + num(in.m0_frak)));
  auto kc = check_K_log_condition("sym_dr_K", K, g.g, c.C1, 0.5, 1, "C1=" + num(c.C1));
  out.push_back(kc);

  // Small theta2 regime.
  out.push_back(make_report("small_theta2_K_floor", std::exp(1.0 / (8.0 * c.C_S * c.C_S)), K,
                            Orientation::LessEqual, "e^{1/(8 C_S^2)} <= K", lca(c)));
  const double bal = c.C_A * g.r_frak / K +
                     16.0 * c.C_S * c.C_S * L * (g.p_frak * g.p_frak + g.r_frak * g.r_frak) /
                         (K * K);
  out.push_back(make_report("small_theta2_K_balance", bal, 2.0, Orientation::LessEqual,
                            "C_A r/K + 16 C_S^2 ln(e+K)(p^2+r^2)/K^2 <= 2", lca(c)));
  const double m_s = in.m_override > 0.0 ? in.m_override : m_frak_small_theta2(K, g, c);
  const double kk = g.k_frak;
  out.push_back(make_report(
      "small_theta2_window", in.theta2 * in.theta2 * c.C_S * c.C_S * L * std::pow(m_s, 4),
      2.0 * in.r0_over_nu * in.r0_over_nu + kk * kk, Orientation::LessEqual,
      "theta2^2 C_S^2 ln(e+K) m^4 <= 2 (||r0||/nu)^2 + k^2", lca(c) + " m=" + num(m_s)));

  // Balanced regime theta1 ~ theta2.
  out.push_back(check_K_log_condition("balanced_K", K, g.p_frak * g.p_frak + g.h_frak * g.h_frak,
                                      1024.0 * c.C_S * c.C_S, 1.0, 2, lca(c)));
  const double m_b = in.m_override > 0.0 ? in.m_override : m_frak_balanced(K, in.zw0_over_nu2, g, c);
  out.push_back(make_report("balanced_window", std::abs(in.theta1 - in.theta2),
                            std::sqrt(2.0) / (8.0 * c.C_S * std::sqrt(L) * m_b),
                            Orientation::LessEqual,
                            "|theta1-theta2| <= sqrt(2)/(8 C_S ln(e+K)^{1/2} m)",
                            lca(c) + " m=" + num(m_b)));
  return out;
}

}  // namespace intwine::diagnostics
