#pragma once

#include "intwine/dynamics/state.hpp"

namespace intwine::dynamics {

struct PairRhs {
  SpectralField r1;
  SpectralField r2;
};

/// Which terms of an intertwined right-hand side to assemble.
struct RhsTerms {
  bool viscous = true;
  bool nonlinear = true;
  bool coupling = true;
};

/// f - nu A u - B(u, u).
SpectralField rhs_nse(const SpectralField& u, const SpectralField& f, double nu);

/// Right-hand sides of the general intertwinement with F(v) = P_K v or
/// F(v) = P_K B(v, v), forces evaluated at s.t.
PairRhs rhs_general(const IntertwinedState& s, Coupling F);
/// rhs_general restricted to the selected terms (used by the time stepper).
PairRhs rhs_terms(const IntertwinedState& s, Coupling F, const RhsTerms& terms);
/// F = P_K; requires a nudging-class matrix.
PairRhs rhs_nudging(const IntertwinedState& s);
/// F = P_K B; requires a DR-class matrix. Uses the matrix rows (m21, m22)
/// in the second equation.
PairRhs rhs_direct_replacement(const IntertwinedState& s);
/// Dispatches on the matrix class (General uses its own coupling tag).
PairRhs rhs_intertwined(const IntertwinedState& s);

/// Observer right-hand side of the direct-replacement algorithm, coded on
/// its own: f - nu A v - B(v, v) + P_K (B(v, v) - B(u, u)).
SpectralField rhs_sync_observer(const SpectralField& u, const SpectralField& v,
                                const SpectralField& f, double nu, double K);
/// Observer right-hand side of the nudging algorithm: f - nu A v - B(v, v) - mu P_K (v - u).
SpectralField rhs_nudge_observer(const SpectralField& u, const SpectralField& v,
                                 const SpectralField& f, double nu, double mu, double K);

/// |(theta2 rhs1 + theta1 rhs2) - [g^theta - nu A v^theta - B(v^theta, v^theta)
///  - B(w_theta, w_theta)]| for DRMut with theta1 != 0.
double residual_twisted(const IntertwinedState& s);

/// |B(v1, v1) - B(v2, v2) - 1/2 DB(v1 + v2)(v1 - v2)|.
double residual_half_DB(const SpectralField& v1, const SpectralField& v2);

}  // namespace intwine::dynamics
