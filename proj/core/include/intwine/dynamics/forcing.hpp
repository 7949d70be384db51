#pragma once

#include <vector>

#include "intwine/spectral/field.hpp"

namespace intwine::dynamics {

using spectral::cplx;
using spectral::Grid;
using spectral::SpectralField;

struct ModeAmplitude {
  int kx = 0;
  int ky = 0;
  cplx ax;
  cplx ay;
};

/// Leray projection of an explicit mode list (conjugates filled in).
SpectralField field_from_modes(const Grid& grid, const std::vector<ModeAmplitude>& modes);

/// F sin(k y) e_x.
SpectralField kolmogorov_field(const Grid& grid, double amplitude, int k);

enum class ForcingKind { Steady, TimePeriodic, DecayingPairDelta };

/// Time-dependent body force with values in H, dealias-supported.
///   Steady:            g(t) = f0
///   TimePeriodic:      g(t) = cos(omega t) f0
///   DecayingPairDelta: g(t) = f0 + exp(-alpha t) dg
class Forcing {
 public:
  static Forcing steady(SpectralField f0);
  static Forcing time_periodic(SpectralField f0, double omega);
  static Forcing decaying_pair_delta(SpectralField f0, SpectralField dg, double alpha);
  static Forcing zero(const Grid& grid) { return steady(SpectralField(grid)); }

  ForcingKind kind() const noexcept { return kind_; }
  SpectralField at(double t) const;
  /// sup_{t >= t0} |g(t)|, closed form for Steady and TimePeriodic and a
  /// dense sampled max for DecayingPairDelta.
  double sup_l2(double t0 = 0.0) const;
  const SpectralField& base() const noexcept { return f0_; }
  const SpectralField& delta() const noexcept { return dg_; }
  double omega() const noexcept { return omega_; }
  double alpha() const noexcept { return alpha_; }

 private:
  Forcing(ForcingKind k, SpectralField f0, SpectralField dg, double omega, double alpha);

  ForcingKind kind_;
  SpectralField f0_;
  SpectralField dg_;
  double omega_;
  double alpha_;
};

}  // namespace intwine::dynamics
