#include "intwine/dynamics/forcing.hpp"

#include <algorithm>
#include <cmath>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::dynamics {

SpectralField field_from_modes(const Grid& grid, const std::vector<ModeAmplitude>& modes) {
  spectral::RawVectorField raw(grid);
  for (const auto& m : modes) {
    if (m.kx == 0 && m.ky == 0) throw PreconditionError("mode (0, 0) is excluded (mean-free)");
    raw.set_mode(m.kx, m.ky, m.ax, m.ay);
  }
  return spectral::leray_project(raw);
}

SpectralField kolmogorov_field(const Grid& grid, double amplitude, int k) {
  if (k <= 0) throw PreconditionError("Kolmogorov wavenumber must be positive");
  // F sin(k y) = -i F/2 e^{i k y} + c.c.
  return field_from_modes(grid, {{0, k, cplx(0.0, -0.5 * amplitude), cplx(0.0, 0.0)}});
}

Forcing::Forcing(ForcingKind k, SpectralField f0, SpectralField dg, double omega, double alpha)
    : kind_(k), f0_(std::move(f0)), dg_(std::move(dg)), omega_(omega), alpha_(alpha) {
  if (!(f0_.grid() == dg_.grid())) throw PreconditionError("forcing parts on different grids");
  spectral::require_dealias_supported(f0_, "Forcing");
  spectral::require_dealias_supported(dg_, "Forcing");
}

Forcing Forcing::steady(SpectralField f0) {
  SpectralField z(f0.grid());
  return Forcing(ForcingKind::Steady, std::move(f0), std::move(z), 0.0, 0.0);
}

Forcing Forcing::time_periodic(SpectralField f0, double omega) {
  if (!std::isfinite(omega)) throw PreconditionError("TimePeriodic: omega must be finite");
  SpectralField z(f0.grid());
  return Forcing(ForcingKind::TimePeriodic, std::move(f0), std::move(z), omega, 0.0);
}

Forcing Forcing::decaying_pair_delta(SpectralField f0, SpectralField dg, double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("DecayingPairDelta: alpha must be > 0");
  return Forcing(ForcingKind::DecayingPairDelta, std::move(f0), std::move(dg), 0.0, alpha);
}

SpectralField Forcing::at(double t) const {
  switch (kind_) {
    case ForcingKind::Steady: return f0_;
    case ForcingKind::TimePeriodic: return std::cos(omega_ * t) * f0_;
    case ForcingKind::DecayingPairDelta: {
      SpectralField g = f0_;
      g.axpy(std::exp(-alpha_ * t), dg_);
      return g;
    }
  }
  return f0_;
}

double Forcing::sup_l2(double t0) const {
  switch (kind_) {
    case ForcingKind::Steady:
    case ForcingKind::TimePeriodic: return spectral::l2_norm(f0_);
    case ForcingKind::DecayingPairDelta: {
      // |f0 + s dg|^2 is a quadratic in s = exp(-alpha t) in (0, s0]; its max
      // on the interval sits at an endpoint.
      const double s0 = std::exp(-alpha_ * t0);
      const double a = spectral::l2_norm(f0_);
      SpectralField g = f0_;
      g.axpy(s0, dg_);
      return std::max(a, spectral::l2_norm(g));
    }
  }
  return 0.0;
}

}  // namespace intwine::dynamics
