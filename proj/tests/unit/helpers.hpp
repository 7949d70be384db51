#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "intwine/spectral/operators.hpp"
#include "intwine/spectral/random.hpp"

namespace intwine::test {

inline spectral::SpectralField rnd(const spectral::Grid& g, std::uint64_t seed, double kmax = 0.0,
                                   double l2 = 1.0, double slope = 1.0) {
  spectral::RandomFieldSpec s;
  s.seed = seed;
  s.kmax = kmax;
  s.l2 = l2;
  s.slope = slope;
  return spectral::random_field(g, s);
}

inline spectral::SpectralField mode(const spectral::Grid& g, int kx, int ky, spectral::cplx ax,
                                    spectral::cplx ay) {
  spectral::RawVectorField r(g);
  r.set_mode(kx, ky, ax, ay);
  return spectral::leray_project(r);
}

// (cos x sin y, -sin x cos y)
inline spectral::SpectralField taylor_green(const spectral::Grid& g) {
  spectral::RawVectorField r(g);
  r.set_mode(1, 1, {0.0, -0.25}, {0.0, 0.25});
  r.set_mode(-1, 1, {0.0, -0.25}, {0.0, -0.25});
  return spectral::leray_project(r);
}

inline double max_abs_diff(const spectral::SpectralField& a, const spectral::SpectralField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.x().size(); ++k) {
    m = std::max(m, std::abs(a.x()[k] - b.x()[k]));
    m = std::max(m, std::abs(a.y()[k] - b.y()[k]));
  }
  return m;
}

}  // namespace intwine::test
