#pragma once

#include <span>

#include "intwine/dynamics/state.hpp"

namespace intwine::diagnostics {

/// Sampled sup of |g(t_i)| / nu^2. Throws EmptySeries on no samples.
double grashof_from_series(std::span<const double> force_l2, double nu);

/// Dimensionless force and solution magnitudes. Entries that do not apply
/// to a configuration are left at zero.
struct GrashofSet {
  double g1 = 0.0;
  double g2 = 0.0;
  double g = 0.0;
  double g_tilde = 0.0;
  double g_mu_tilde = 0.0;
  double g_theta = 0.0;
  double h_frak = 0.0;
  double k_frak = 0.0;
  double p_frak = 0.0;
  double d_frak = 0.0;
  double f_frak = 0.0;
  double r_frak = 0.0;
  double m_frak = 0.0;

  /// Non-negativity, g^2 = g1^2 + g2^2 and k <= sqrt(2) g; throws PreconditionError.
  void validate() const;
};

struct GrashofOptions {
  /// Forces are sampled on [t0, t_end] with this spacing (end points included).
  double t0 = 0.0;
  double t_end = 1.0;
  double sample_dt = 1e-2;
  /// Split g = g_mu + mu_tilde g_tilde; g_tilde = 0 gives g_mu = g.
  double mu_tilde = 0.0;
  const dynamics::Forcing* g_tilde1 = nullptr;
  const dynamics::Forcing* g_tilde2 = nullptr;
};

/// All force-derived entries plus the initial-data entries (p, d, r) from s,
/// whose time is taken as t0. The solution bound m_frak stays zero.
GrashofSet compute_grashof(const dynamics::IntertwinedState& s, const GrashofOptions& opt);

/// m for the uniform condition: min(sup ||v1||, sup ||v2||) / nu over a tail.
double measured_m_frak(std::span<const double> h1_v1, std::span<const double> h1_v2, double nu);

}  // namespace intwine::diagnostics
