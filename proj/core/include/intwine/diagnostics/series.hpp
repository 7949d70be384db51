#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "intwine/dynamics/integrator.hpp"

namespace intwine::diagnostics {

/// One CSV row. Optional entries print as empty cells.
struct TimeSeriesRecord {
  double t = 0.0;
  double l2_v1 = 0.0, h1_v1 = 0.0, l2_v2 = 0.0, h1_v2 = 0.0;
  double l2_w = 0.0, h1_w = 0.0, l2_p = 0.0, l2_q = 0.0;
  std::optional<double> h1_vtheta, h1_wtheta, energy_residual;
  double force_l2_g1 = 0.0, force_l2_g2 = 0.0, force_l2_h = 0.0;
};

inline constexpr std::array<const char*, 15> kCsvColumns = {
    "t",        "l2_v1",     "h1_v1",     "l2_v2",           "h1_v2",
    "l2_w",     "h1_w",      "l2_p",      "l2_q",            "h1_vtheta",
    "h1_wtheta", "energy_residual", "force_l2_g1", "force_l2_g2", "force_l2_h"};

std::string csv_header();
std::string csv_row(const TimeSeriesRecord& r);
/// RFC 4180 field quoting (only when needed).
std::string csv_quote(const std::string& field);
/// %.17g.
std::string csv_number(double v);

TimeSeriesRecord make_record(const dynamics::IntertwinedState& s);

/// Weights of the energy balance: (mu2, mu1)/(mu1 + mu2) for a mutual nudging
/// matrix with mu1, mu2 > 0, otherwise (1/2, 1/2).
std::array<double, 2> budget_weights(const dynamics::IntertwiningMatrix& m);

/// Right side of d/dt E, E = l1|v1|^2 + l2|v2|^2:
/// sum_i l_i [2(g_i, v_i) - 2 nu ||v_i||^2 + 2 sum_j m_ij (F(v_j), v_i)].
double budget_rate(const dynamics::IntertwinedState& s, const std::array<double, 2>& lambda);

/// Per-step budget residual |(E1 - E0)/dt - (D0 + D1)/2| and the running
/// a priori L2 inequality
///   E(t) + nu int l.||v||^2 <= E(t0) + (1/nu) int (l1|g1|^2 + l2|g2|^2)
/// with trapezoid quadrature.
class BudgetTracker {
 public:
  void on_step(const dynamics::IntertwinedState& before, const dynamics::IntertwinedState& after);
  std::optional<double> last_residual() const { return last_residual_; }
  double max_residual() const noexcept { return max_residual_; }
  /// min over steps of (rhs - lhs) / rhs; negative means the inequality failed.
  double min_apriori_relative_slack() const noexcept { return min_slack_; }
  long long steps() const noexcept { return steps_; }

 private:
  bool started_ = false;
  std::array<double, 2> lambda_{0.5, 0.5};
  double e0_ = 0.0;
  double dissipation_ = 0.0;
  double forcing_ = 0.0;
  double prev_t_ = 0.0;
  double prev_rate_ = 0.0;
  double prev_diss_ = 0.0;
  double prev_force_ = 0.0;
  std::optional<double> last_residual_;
  double max_residual_ = 0.0;
  double min_slack_ = 1.0;
  long long steps_ = 0;
};

/// Sink that records a TimeSeriesRecord per sample and, optionally, the budget.
class SeriesRecorder : public dynamics::Sink {
 public:
  explicit SeriesRecorder(bool track_budget = false) : track_budget_(track_budget) {}
  void on_step(const dynamics::IntertwinedState& before,
               const dynamics::IntertwinedState& after) override;
  void on_sample(const dynamics::IntertwinedState& s) override;

  const std::vector<TimeSeriesRecord>& records() const noexcept { return records_; }
  const BudgetTracker& budget() const noexcept { return budget_; }
  std::string to_csv() const;

 private:
  bool track_budget_;
  BudgetTracker budget_;
  std::vector<TimeSeriesRecord> records_;
};

}  // namespace intwine::diagnostics
