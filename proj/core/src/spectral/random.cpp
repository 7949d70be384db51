#include "intwine/spectral/random.hpp"

#include <algorithm>
#include <cmath>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::spectral {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  SplitMix64 a(master);
  const std::uint64_t base = a.next();
  SplitMix64 b(base ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  return b.next();
}

SpectralField random_field(const Grid& grid, const RandomFieldSpec& spec) {
  const double R = grid.dealias_radius();
  const double kmax = spec.kmax > 0.0 ? std::min(spec.kmax, R) : R;
  SplitMix64 rng(spec.seed);
  RawVectorField raw(grid);
  const int lim = static_cast<int>(std::floor(kmax));
  // Canonical half plane only; set_mode fills the conjugate partner.
  for (int kx = -lim; kx <= lim; ++kx) {
    for (int ky = 0; ky <= lim; ++ky) {
      if (ky == 0 && kx <= 0) continue;
      const long k2 = static_cast<long>(kx) * kx + static_cast<long>(ky) * ky;
      if (!in_ball(k2, kmax) || static_cast<double>(k2) < spec.kmin * spec.kmin) continue;
      const double a = std::pow(static_cast<double>(k2), -0.5 * spec.slope);
      const cplx ax(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      const cplx ay(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      raw.set_mode(kx, ky, a * ax, a * ay);
    }
  }
  SpectralField u = dealias(leray_project(raw));
  double target = 0.0;
  double current = 0.0;
  if (spec.h1 > 0.0) {
    target = spec.h1;
    current = h1_norm(u);
  } else if (spec.l2 > 0.0) {
    target = spec.l2;
    current = l2_norm(u);
  }
  if (target > 0.0) {
    if (current == 0.0) throw PreconditionError("random_field: empty mode band cannot be rescaled");
    u *= target / current;
  }
  return u;
}

}  // namespace intwine::spectral
