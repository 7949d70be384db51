#include "intwine/oracle/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "intwine/errors.hpp"

namespace intwine::oracle {

using spectral::detail::FieldAccess;

DenseModeSet::DenseModeSet(int radius, int max_radius) : radius_(radius), span_(2 * radius + 1) {
  if (radius < 1) throw PreconditionError("dense radius must be >= 1");
  if (radius > max_radius) {
    throw RadiusTooLarge("dense radius " + std::to_string(radius) + " exceeds the cap " +
                         std::to_string(max_radius));
  }
  lookup_.assign(static_cast<std::size_t>(span_) * span_, -1);
  for (int kx = -radius; kx <= radius; ++kx) {
    for (int ky = -radius; ky <= radius; ++ky) {
      const int k2 = kx * kx + ky * ky;
      if (k2 == 0 || k2 > radius * radius) continue;
      lookup_[(kx + radius) * span_ + (ky + radius)] = static_cast<int>(k_.size());
      k_.push_back({kx, ky});
    }
  }
  x.assign(k_.size(), cplx(0.0, 0.0));
  y.assign(k_.size(), cplx(0.0, 0.0));
}

int DenseModeSet::find(int kx, int ky) const noexcept {
  if (kx < -radius_ || kx > radius_ || ky < -radius_ || ky > radius_) return -1;
  return lookup_[(kx + radius_) * span_ + (ky + radius_)];
}

DenseModeSet DenseModeSet::from_field(const SpectralField& u, int radius) {
  const Grid& g = u.grid();
  if (2 * radius >= g.n()) throw PreconditionError("dense radius does not fit the grid");
  DenseModeSet d(radius);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const std::size_t id = g.index(i, j);
      const cplx ax = u.x()[id];
      const cplx ay = u.y()[id];
      const int kx = g.kx(i);
      const int idx = d.find(kx, j);
      if (idx < 0) {
        if (ax != cplx(0.0, 0.0) || ay != cplx(0.0, 0.0)) {
          throw PreconditionError("field has content outside the dense radius");
        }
        continue;
      }
      d.x[idx] = ax;
      d.y[idx] = ay;
      const int c = d.find(-kx, -j);
      d.x[c] = std::conj(ax);
      d.y[c] = std::conj(ay);
    }
  }
  return d;
}

SpectralField DenseModeSet::to_field(const Grid& grid) const {
  if (2 * radius_ >= grid.n()) throw PreconditionError("dense radius does not fit the grid");
  SpectralField u(grid);
  auto& ux = FieldAccess::x(u);
  auto& uy = FieldAccess::y(u);
  for (std::size_t i = 0; i < k_.size(); ++i) {
    const auto [kx, ky] = k_[i];
    if (ky < 0) continue;
    const std::size_t id = grid.index(grid.row_of(kx), ky);
    ux[id] = x[i];
    uy[id] = y[i];
  }
  return u;
}

DenseModeSet dense_bilinear_B(const DenseModeSet& u, const DenseModeSet& v, int out_radius) {
  if (u.radius() != v.radius()) throw PreconditionError("dense_bilinear_B: radius mismatch");
  if (out_radius < 0) out_radius = u.radius();
  DenseModeSet out(out_radius, 2 * kMaxDenseRadius);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const auto [kx, ky] = out.k(n);
    cplx sx(0.0, 0.0);
    cplx sy(0.0, 0.0);
    for (std::size_t a = 0; a < u.size(); ++a) {
      const auto [ax, ay] = u.k(a);
      const int b = v.find(kx - ax, ky - ay);
      if (b < 0) continue;
      const double bx = kx - ax;
      const double by = ky - ay;
      const cplx ub = cplx(0.0, 1.0) * (u.x[a] * bx + u.y[a] * by);
      sx += ub * v.x[b];
      sy += ub * v.y[b];
    }
    const double k2 = static_cast<double>(kx * kx + ky * ky);
    const cplx dot = (static_cast<double>(kx) * sx + static_cast<double>(ky) * sy) / k2;
    out.x[n] = sx - static_cast<double>(kx) * dot;
    out.y[n] = sy - static_cast<double>(ky) * dot;
  }
  return out;
}

double dense_inner(const DenseModeSet& u, const DenseModeSet& v) {
  if (u.radius() != v.radius()) throw PreconditionError("dense_inner: radius mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += (u.x[i] * std::conj(v.x[i])).real() + (u.y[i] * std::conj(v.y[i])).real();
  }
  return spectral::kDomainArea * s;
}

DenseModeSet dense_stokes(const DenseModeSet& u, int half_power) {
  DenseModeSet r = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto [kx, ky] = u.k(i);
    const double f = std::pow(static_cast<double>(kx * kx + ky * ky), 0.5 * half_power);
    r.x[i] *= f;
    r.y[i] *= f;
  }
  return r;
}

DenseModeSet dense_project_low(const DenseModeSet& u, double K) {
  DenseModeSet r = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto [kx, ky] = u.k(i);
    if (!spectral::in_ball(kx * kx + ky * ky, K)) {
      r.x[i] = 0.0;
      r.y[i] = 0.0;
    }
  }
  return r;
}

double dense_l2(const DenseModeSet& u) { return std::sqrt(dense_inner(u, u)); }

void dense_axpy(DenseModeSet& y, double a, const DenseModeSet& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    y.x[i] += a * x.x[i];
    y.y[i] += a * x.y[i];
  }
}

namespace {

struct Pair {
  DenseModeSet a;
  DenseModeSet b;
};

Pair rhs(DenseSystem sys, const DenseParams& p, const Pair& v, const DenseModeSet& g1,
         const DenseModeSet& g2) {
  Pair r{g1, g2};
  dense_axpy(r.a, -p.nu, dense_stokes(v.a, 2));
  DenseModeSet b1(v.a.radius());
  DenseModeSet b2(v.a.radius());
  if (p.nonlinear) {
    b1 = dense_bilinear_B(v.a, v.a);
    dense_axpy(r.a, -1.0, b1);
  }
  if (sys == DenseSystem::NSE) {
    r.b = DenseModeSet(v.b.radius());
    return r;
  }
  dense_axpy(r.b, -p.nu, dense_stokes(v.b, 2));
  if (p.nonlinear) {
    b2 = dense_bilinear_B(v.b, v.b);
    dense_axpy(r.b, -1.0, b2);
  }
  const bool nudging = sys == DenseSystem::Nudging;
  const DenseModeSet f1 = dense_project_low(nudging ? v.a : b1, p.K);
  const DenseModeSet f2 = dense_project_low(nudging ? v.b : b2, p.K);
  dense_axpy(r.a, p.m[0], f1);
  dense_axpy(r.a, p.m[1], f2);
  dense_axpy(r.b, p.m[2], f1);
  dense_axpy(r.b, p.m[3], f2);
  return r;
}

bool finite(const DenseModeSet& u) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u.x[i].real()) || !std::isfinite(u.x[i].imag()) ||
        !std::isfinite(u.y[i].real()) || !std::isfinite(u.y[i].imag())) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<DenseSample> dense_trajectory(DenseSystem system, const DenseParams& params,
                                          const DenseModeSet& v1, const DenseModeSet& v2,
                                          const DenseModeSet& g1, const DenseModeSet& g2,
                                          double t_end, double dt_ref, double sample_every) {
  if (!(dt_ref > 0.0) || !(t_end >= 0.0) || !(sample_every > 0.0)) {
    throw PreconditionError("dense_trajectory: dt_ref, sample_every > 0 and t_end >= 0 required");
  }
  const long long nsteps = std::llround(t_end / dt_ref);
  const long long stride = std::max(1LL, std::llround(sample_every / dt_ref));
  Pair v{v1, v2};
  std::vector<DenseSample> out;
  out.push_back({0.0, v.a, v.b});
  const double h = dt_ref;
  for (long long n = 1; n <= nsteps; ++n) {
    const Pair k1 = rhs(system, params, v, g1, g2);
    Pair s = v;
    dense_axpy(s.a, 0.5 * h, k1.a);
    dense_axpy(s.b, 0.5 * h, k1.b);
    const Pair k2 = rhs(system, params, s, g1, g2);
    s = v;
    dense_axpy(s.a, 0.5 * h, k2.a);
    dense_axpy(s.b, 0.5 * h, k2.b);
    const Pair k3 = rhs(system, params, s, g1, g2);
    s = v;
    dense_axpy(s.a, h, k3.a);
    dense_axpy(s.b, h, k3.b);
    const Pair k4 = rhs(system, params, s, g1, g2);
    dense_axpy(v.a, h / 6.0, k1.a);
    dense_axpy(v.a, h / 3.0, k2.a);
    dense_axpy(v.a, h / 3.0, k3.a);
    dense_axpy(v.a, h / 6.0, k4.a);
    dense_axpy(v.b, h / 6.0, k1.b);
    dense_axpy(v.b, h / 3.0, k2.b);
    dense_axpy(v.b, h / 3.0, k3.b);
    dense_axpy(v.b, h / 6.0, k4.b);
    const double t = static_cast<double>(n) * h;
    if (!finite(v.a) || !finite(v.b)) throw BlowupDetected("dense trajectory diverged", t);
    if (n % stride == 0 || n == nsteps) out.push_back({t, v.a, v.b});
  }
  return out;
}

}  // namespace intwine::oracle
