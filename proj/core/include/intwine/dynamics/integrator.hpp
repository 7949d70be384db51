#pragma once

#include "intwine/dynamics/rhs.hpp"

namespace intwine::dynamics {

enum class FoldMode { Auto, On, Off };

struct StepperOptions {
  double dt = 1e-2;
  /// CFL safety factor c in dt <= c min(1/(nu R^2), dx/|u|_inf).
  double cfl = 1.0;
  bool check_cfl = true;
  /// Fold the linear coupling -M P_K into the exact propagator (nudging and
  /// General/ProjectK only). Auto folds when max|m_ij| dt > 1.
  FoldMode fold = FoldMode::Auto;
  /// Drop B (and P_K B couplings); leaves the linear Stokes/coupling dynamics.
  bool nonlinear = true;
  double blowup_norm = 1e8;
};

/// Receives every accepted step and every sampling time.
class Sink {
 public:
  virtual ~Sink() = default;
  virtual void on_step(const IntertwinedState& /*before*/, const IntertwinedState& /*after*/) {}
  virtual void on_sample(const IntertwinedState& /*s*/) {}
};

/// Integrating-factor Heun scheme:
///   v*      = E (v + dt N(t, v))
///   v_{n+1} = E v + dt/2 (E N(t, v) + N(t + dt, v*))
/// with E the exact propagator of the linear part.
class Stepper {
 public:
  explicit Stepper(StepperOptions opt) : opt_(opt) {}
  const StepperOptions& options() const noexcept { return opt_; }

  /// Whether the coupling is folded for this matrix at the configured dt.
  bool folds(const IntertwiningMatrix& m) const;
  /// Largest admissible dt for s under the CFL guard.
  double cfl_limit(const IntertwinedState& s) const;

  void step(IntertwinedState& s) const;

  /// Advances to t_end (an integer number of steps), sampling at t0 and every
  /// sample_every (an integer multiple of dt). Returns the final state.
  IntertwinedState integrate(IntertwinedState s, double t_end, double sample_every,
                             Sink* sink) const;

 private:
  PairRhs explicit_part(const IntertwinedState& s, bool folded) const;
  void propagate(const IntertwinedState& s, SpectralField& a, SpectralField& b, bool folded) const;
  void check_blowup(const IntertwinedState& s) const;

  StepperOptions opt_;
};

}  // namespace intwine::dynamics
