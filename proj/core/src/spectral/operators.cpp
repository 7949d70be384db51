#include "intwine/spectral/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "intwine/errors.hpp"
#include "intwine/spectral/transform.hpp"

namespace intwine::spectral {

using detail::FieldAccess;

namespace {

bool is_nyquist(const Grid& g, int i, int j) { return 2 * i == g.n() || 2 * j == g.n(); }

// |k|^p for integer p, exact for even p.
double kpow(long k2, int p) {
  if (k2 == 0) return 0.0;
  if (p % 2 == 0) {
    const int h = p / 2;
    double base = h >= 0 ? static_cast<double>(k2) : 1.0 / static_cast<double>(k2);
    double r = 1.0;
    for (int e = 0; e < std::abs(h); ++e) r *= base;
    return r;
  }
  return std::pow(static_cast<double>(k2), 0.5 * p);
}

template <class Keep>
SpectralField mask(const SpectralField& u, Keep keep) {
  const Grid& g = u.grid();
  SpectralField out(g);
  auto& ox = FieldAccess::x(out);
  auto& oy = FieldAccess::y(out);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      if (!keep(g.k2(i, j))) continue;
      const std::size_t id = g.index(i, j);
      ox[id] = u.x()[id];
      oy[id] = u.y()[id];
    }
  }
  return out;
}

void physical_components(const Grid& g, std::span<const cplx> cx, std::span<const cplx> cy, int m,
                         std::vector<double>& px, std::vector<double>& py) {
  to_physical(g, cx, m, px);
  to_physical(g, cy, m, py);
}

}  // namespace

SpectralField leray_project(const RawVectorField& raw) {
  const Grid& g = raw.grid;
  SpectralField out(g);
  auto& ox = FieldAccess::x(out);
  auto& oy = FieldAccess::y(out);
  for (int i = 0; i < g.n(); ++i) {
    const double kx = g.kx(i);
    for (int j = 0; j < g.nky(); ++j) {
      const long k2 = g.k2(i, j);
      if (k2 == 0 || is_nyquist(g, i, j)) continue;
      const double ky = j;
      const std::size_t id = g.index(i, j);
      const cplx ux = raw.x[id];
      const cplx uy = raw.y[id];
      const cplx dot = kx * ux + ky * uy;
      // Already solenoidal to roundoff: keep the input so the projector is
      // exactly idempotent.
      const double tol = 16.0 * std::numeric_limits<double>::epsilon() *
                         std::sqrt(static_cast<double>(k2) * (std::norm(ux) + std::norm(uy)));
      if (std::abs(dot) <= tol) {
        ox[id] = ux;
        oy[id] = uy;
        continue;
      }
      const cplx s = dot / static_cast<double>(k2);
      ox[id] = ux - kx * s;
      oy[id] = uy - ky * s;
    }
  }
  return out;
}

SpectralField stokes_apply(const SpectralField& u, int half_power) {
  if (half_power < -2) throw PreconditionError("stokes_apply: half_power must be >= -2");
  const Grid& g = u.grid();
  SpectralField out(g);
  auto& ox = FieldAccess::x(out);
  auto& oy = FieldAccess::y(out);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const long k2 = g.k2(i, j);
      if (k2 == 0) continue;
      const std::size_t id = g.index(i, j);
      const double f = half_power == 0 ? 1.0 : kpow(k2, half_power);
      ox[id] = f * u.x()[id];
      oy[id] = f * u.y()[id];
    }
  }
  return out;
}

SpectralField project_low(const SpectralField& u, double K) {
  if (K < 0.0) throw PreconditionError("project_low: K must be >= 0");
  return mask(u, [K](long k2) { return in_ball(k2, K); });
}

SpectralField project_high(const SpectralField& u, double K) {
  if (K < 0.0) throw PreconditionError("project_high: K must be >= 0");
  return mask(u, [K](long k2) { return !in_ball(k2, K); });
}

double inner(const SpectralField& u, const SpectralField& v) {
  const Grid& g = u.grid();
  if (!(g == v.grid())) throw PreconditionError("inner: fields live on different grids");
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const std::size_t id = g.index(i, j);
      const double t = u.x()[id].real() * v.x()[id].real() + u.x()[id].imag() * v.x()[id].imag() +
                       u.y()[id].real() * v.y()[id].real() + u.y()[id].imag() * v.y()[id].imag();
      s += g.weight(j) * t;
    }
  }
  return kDomainArea * s;
}

double sobolev_norm(const SpectralField& u, int m) {
  if (m < 0) throw PreconditionError("sobolev_norm: m must be >= 0");
  const Grid& g = u.grid();
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const long k2 = g.k2(i, j);
      if (k2 == 0) continue;
      const std::size_t id = g.index(i, j);
      const double a = std::norm(u.x()[id]) + std::norm(u.y()[id]);
      s += g.weight(j) * kpow(k2, 2 * m) * a;
    }
  }
  return kTwoPi * std::sqrt(s);
}

NormTriple norms(const SpectralField& u, int max_m) {
  if (max_m < 1) throw PreconditionError("norms: max_m must be >= 1");
  const Grid& g = u.grid();
  std::vector<double> acc(static_cast<std::size_t>(max_m) + 1, 0.0);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const long k2 = g.k2(i, j);
      if (k2 == 0) continue;
      const std::size_t id = g.index(i, j);
      const double a = g.weight(j) * (std::norm(u.x()[id]) + std::norm(u.y()[id]));
      double f = 1.0;
      for (int m = 0; m <= max_m; ++m) {
        acc[m] += f * a;
        f *= static_cast<double>(k2);
      }
    }
  }
  NormTriple r;
  for (int m = 0; m <= max_m; ++m) r.hm[m] = kTwoPi * std::sqrt(acc[m]);
  r.l2 = r.hm[0];
  r.h1 = r.hm[1];
  return r;
}

bool dealias_supported(const SpectralField& u) {
  const Grid& g = u.grid();
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      if (g.inside_dealias(i, j)) continue;
      const std::size_t id = g.index(i, j);
      if (u.x()[id] != cplx(0.0, 0.0) || u.y()[id] != cplx(0.0, 0.0)) return false;
    }
  }
  return true;
}

void require_dealias_supported(const SpectralField& u, const char* what) {
  if (!dealias_supported(u)) {
    throw AliasingViolation(std::string(what) + ": input has content beyond the dealias radius " +
                            std::to_string(u.grid().dealias_radius()));
  }
}

SpectralField dealias(const SpectralField& u) {
  const double R = u.grid().dealias_radius();
  return mask(u, [R](long k2) { return in_ball(k2, R); });
}

SpectralField bilinear_B(const SpectralField& u, const SpectralField& v) {
  const Grid& g = u.grid();
  if (!(g == v.grid())) throw PreconditionError("bilinear_B: fields live on different grids");
  require_dealias_supported(u, "bilinear_B(u, .)");
  require_dealias_supported(v, "bilinear_B(., v)");
  const int n = g.n();
  const std::size_t ns = g.spectral_size();

  // Spectral gradients of v: d_x v_c = i kx v_c, d_y v_c = i ky v_c.
  std::vector<cplx> dxvx(ns), dyvx(ns), dxvy(ns), dyvy(ns);
  for (int i = 0; i < n; ++i) {
    const double kx = g.kx(i);
    for (int j = 0; j < g.nky(); ++j) {
      const std::size_t id = g.index(i, j);
      const cplx ikx(0.0, kx);
      const cplx iky(0.0, static_cast<double>(j));
      dxvx[id] = ikx * v.x()[id];
      dyvx[id] = iky * v.x()[id];
      dxvy[id] = ikx * v.y()[id];
      dyvy[id] = iky * v.y()[id];
    }
  }
  std::vector<double> ux, uy, a, b, c, d;
  physical_components(g, u.x(), u.y(), n, ux, uy);
  to_physical(g, dxvx, n, a);
  to_physical(g, dyvx, n, b);
  to_physical(g, dxvy, n, c);
  to_physical(g, dyvy, n, d);
  std::vector<double> nx(g.physical_size()), ny(g.physical_size());
  for (std::size_t p = 0; p < nx.size(); ++p) {
    nx[p] = ux[p] * a[p] + uy[p] * b[p];
    ny[p] = ux[p] * c[p] + uy[p] * d[p];
  }
  RawVectorField raw(g);
  to_spectral(g, nx, raw.x);
  to_spectral(g, ny, raw.y);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      if (g.inside_dealias(i, j)) continue;
      const std::size_t id = g.index(i, j);
      raw.x[id] = 0.0;
      raw.y[id] = 0.0;
    }
  }
  return leray_project(raw);
}

double trilinear_b(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
  return inner(bilinear_B(u, v), w);
}

SpectralField frechet_DB(const SpectralField& u, const SpectralField& v) {
  SpectralField r = bilinear_B(u, v);
  r += bilinear_B(v, u);
  return r;
}

double lebesgue_norm(const SpectralField& u, int p) {
  if (p != 2 && p != 4) throw PreconditionError("lebesgue_norm: p must be 2 or 4");
  const Grid& g = u.grid();
  // |u|^4 is a trigonometric polynomial of degree < 2n per axis, so the
  // 2n-point rule integrates it exactly.
  const int m = 2 * g.n();
  std::vector<double> px, py;
  physical_components(g, u.x(), u.y(), m, px, py);
  double s = 0.0;
  for (std::size_t q = 0; q < px.size(); ++q) {
    const double e = px[q] * px[q] + py[q] * py[q];
    s += p == 2 ? e : e * e;
  }
  const double integral = kDomainArea * s / static_cast<double>(px.size());
  return p == 2 ? std::sqrt(integral) : std::sqrt(std::sqrt(integral));
}

double sup_norm(const SpectralField& u, int oversample) {
  if (oversample < 1) throw PreconditionError("sup_norm: oversample must be >= 1");
  const Grid& g = u.grid();
  std::vector<double> px, py;
  physical_components(g, u.x(), u.y(), oversample * g.n(), px, py);
  double mx = 0.0;
  for (std::size_t q = 0; q < px.size(); ++q) mx = std::max(mx, px[q] * px[q] + py[q] * py[q]);
  return std::sqrt(mx);
}

double sup_norm_bound(const SpectralField& u) {
  const Grid& g = u.grid();
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const std::size_t id = g.index(i, j);
      s += g.weight(j) * std::sqrt(std::norm(u.x()[id]) + std::norm(u.y()[id]));
    }
  }
  return s;
}

}  // namespace intwine::spectral
