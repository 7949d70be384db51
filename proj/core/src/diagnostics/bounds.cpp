#include "intwine/diagnostics/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intwine/errors.hpp"

namespace intwine::diagnostics {

using dynamics::IntertwiningMatrix;
using dynamics::MatrixClass;

std::string to_string(BoundFormula f) {
  switch (f) {
    case BoundFormula::NudgeMutRatio: return "nudge_mut_ratio";
    case BoundFormula::NudgeSymMin: return "nudge_sym_min";
    case BoundFormula::DRMutTwisted: return "dr_mut_twisted";
    case BoundFormula::DRTheta1: return "dr_theta1";
    case BoundFormula::DRHalf: return "dr_half";
    case BoundFormula::DRSmallTheta2: return "dr_small_theta2";
    case BoundFormula::DRBalanced: return "dr_balanced";
    case BoundFormula::TheoremC1: return "theorem_C1";
    case BoundFormula::HeatLowMode: return "heat_low_mode";
  }
  return "?";
}

double uniform_bound_value(BoundFormula f, const IntertwiningMatrix& m, const BoundInputs& in) {
  const GrashofSet& g = in.grashof;
  const double nu = in.nu;
  switch (f) {
    case BoundFormula::NudgeMutRatio: {
      if (m.cls() != MatrixClass::NudgeMut) throw WrongMatrixClass("ratio bound needs NudgeMut");
      const double lo = std::min(m.mu1(), m.mu2());
      const double hi = std::max(m.mu1(), m.mu2());
      if (lo == 0.0) return std::numeric_limits<double>::infinity();
      return nu * hi / lo * g.g;
    }
    case BoundFormula::NudgeSymMin: {
      if (m.cls() != MatrixClass::NudgeSym) throw WrongMatrixClass("min bound needs NudgeSym");
      const double mt = in.mu_tilde;
      double b = nu * std::sqrt(std::min(g.g * g.g, g.g_mu_tilde * g.g_mu_tilde +
                                                        mt * mt * g.g_tilde * g.g_tilde));
      const double gap = m.mu1() - m.mu2();
      if (gap > 0.0 && in.K * in.K >= m.mu1() + m.mu2()) {
        const double alt = nu * std::sqrt(std::min(nu * g.g * g.g / gap,
                                                   nu * g.g_mu_tilde * g.g_mu_tilde / gap +
                                                       g.g_tilde * g.g_tilde));
        b = std::min(b, alt);
      }
      return b;
    }
    case BoundFormula::DRMutTwisted: return std::sqrt(96.0) * nu * g.g_theta;
    case BoundFormula::DRTheta1: return 4.0 * g.k_frak * nu;
    case BoundFormula::DRHalf: return 4.0 * g.k_frak * nu;
    case BoundFormula::DRSmallTheta2: return 6.0 * g.k_frak * nu;
    case BoundFormula::DRBalanced: return 8.0 * g.k_frak * nu;
    case BoundFormula::TheoremC1: return in.C1 * nu * g.g;
    case BoundFormula::HeatLowMode: return std::sqrt(2.0) * nu * in.heat_h_frak;
  }
  return std::numeric_limits<double>::infinity();
}

ConditionReport check_uniform_bound(std::span<const double> series, BoundFormula f,
                                    const IntertwiningMatrix& m, const BoundInputs& in) {
  if (series.empty()) throw EmptySeries("check_uniform_bound: empty series");
  const double sup = *std::max_element(series.begin(), series.end());
  const double b = uniform_bound_value(f, m, in);
  return make_report("bound_" + to_string(f), sup, b, Orientation::LessEqual,
                     "tail sup <= " + to_string(f) + " bound", "C=1 unless stated");
}

}  // namespace intwine::diagnostics
