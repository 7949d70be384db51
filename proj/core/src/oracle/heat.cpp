#include "intwine/oracle/heat.hpp"

#include <cmath>

#include "intwine/errors.hpp"

namespace intwine::oracle {

using spectral::detail::FieldAccess;

SpectralField heat_exact(const SpectralField& p0, const HeatForcing& h, double nu, double t) {
  const spectral::Grid& g = p0.grid();
  if (!(g == h.constant.grid()) || !(g == h.decaying.grid())) {
    throw PreconditionError("heat_exact: grid mismatch");
  }
  if (!(nu > 0.0) || !(t >= 0.0)) throw PreconditionError("heat_exact: nu > 0, t >= 0 required");
  SpectralField p(g);
  auto& px = FieldAccess::x(p);
  auto& py = FieldAccess::y(p);
  const double a = h.alpha;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const long k2 = g.k2(i, j);
      if (k2 == 0) continue;
      const std::size_t id = g.index(i, j);
      const double lam = nu * static_cast<double>(k2);
      const double e = std::exp(-lam * t);
      // (1 - e^{-lam t}) / lam without cancellation for small lam t.
      const double c = -std::expm1(-lam * t) / lam;
      double d = 0.0;
      if (a == lam) {
        d = t * e;
      } else {
        d = (std::exp(-a * t) - e) / (lam - a);
      }
      px[id] = e * p0.x()[id] + c * h.constant.x()[id] + d * h.decaying.x()[id];
      py[id] = e * p0.y()[id] + c * h.constant.y()[id] + d * h.decaying.y()[id];
    }
  }
  return p;
}

SpectralField heat_exact(const SpectralField& p0, const SpectralField& h, double nu, double t) {
  HeatForcing f(p0.grid());
  f.constant = h;
  return heat_exact(p0, f, nu, t);
}

}  // namespace intwine::oracle
