#pragma once

#include "intwine/spectral/field.hpp"

namespace intwine::oracle {

using spectral::SpectralField;

/// h(t) = constant + exp(-alpha t) decaying.
struct HeatForcing {
  explicit HeatForcing(const spectral::Grid& g) : constant(g), decaying(g) {}
  SpectralField constant;
  SpectralField decaying;
  double alpha = 0.0;
};

/// Exact solution of dp/dt + nu A p = h, p(0) = p0, mode by mode:
///   e^{-lam t} p0 + (1 - e^{-lam t}) c / lam + d (e^{-alpha t} - e^{-lam t}) / (lam - alpha)
/// with lam = nu |k|^2 (and t e^{-lam t} d when lam = alpha).
SpectralField heat_exact(const SpectralField& p0, const HeatForcing& h, double nu, double t);
/// Constant-forcing form.
SpectralField heat_exact(const SpectralField& p0, const SpectralField& h, double nu, double t);

}  // namespace intwine::oracle
