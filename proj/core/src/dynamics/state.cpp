#include "intwine/dynamics/state.hpp"

#include <cmath>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::dynamics {

IntertwinedState::IntertwinedState(double t_, double nu_, double K_, IntertwiningMatrix m,
                                   SpectralField a, SpectralField b,
                                   std::shared_ptr<const Forcing> f1,
                                   std::shared_ptr<const Forcing> f2)
    : t(t_), nu(nu_), K(K_), matrix(m), v1(std::move(a)), v2(std::move(b)), g1(std::move(f1)),
      g2(std::move(f2)) {
  validate();
}

void IntertwinedState::validate() const {
  if (!(nu > 0.0)) throw PreconditionError("viscosity must be > 0");
  if (!(K >= 0.0)) throw PreconditionError("cutoff K must be >= 0");
  if (!(v1.grid() == v2.grid())) throw PreconditionError("v1 and v2 live on different grids");
  if (!g1 || !g2) throw PreconditionError("both forcing handles must be set");
  if (!(g1->base().grid() == v1.grid()) || !(g2->base().grid() == v1.grid())) {
    throw PreconditionError("forcing and state grids differ");
  }
  spectral::require_dealias_supported(v1, "state v1");
  spectral::require_dealias_supported(v2, "state v2");
}

DerivedViews derived_views(const IntertwinedState& s, bool with_theta) {
  using spectral::project_high;
  using spectral::project_low;
  const Grid& g = s.grid();
  DerivedViews d{s.v1 - s.v2,   SpectralField(g), SpectralField(g), s.v1 + s.v2,
                 SpectralField(g), SpectralField(g), std::nullopt,     std::nullopt,
                 false};
  d.p = project_low(d.w, s.K);
  d.q = project_high(d.w, s.K);
  d.r = project_low(d.z, s.K);
  d.s = project_high(d.z, s.K);
  if (!with_theta) return d;
  if (!s.matrix.is_direct_replacement()) {
    throw WrongMatrixClass("theta views need a direct-replacement matrix, got " +
                           to_string(s.matrix.cls()));
  }
  const double t1 = s.matrix.theta1();
  const double t2 = s.matrix.theta2();
  SpectralField vt = t2 * s.v1;
  vt.axpy(t1, s.v2);
  d.v_theta = std::move(vt);
  const double prod = t1 * t2;
  if (prod > 0.0) {
    d.w_theta = std::sqrt(prod) * d.w;
    d.theta_scaled = true;
  } else {
    d.w_theta = d.w;
  }
  return d;
}

}  // namespace intwine::dynamics
