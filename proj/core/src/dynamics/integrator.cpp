#include "intwine/dynamics/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::dynamics {

using spectral::detail::FieldAccess;
using spectral::in_ball;

namespace {

using Mat2 = std::array<double, 4>;

// exp(A) for a real 2x2 matrix via exp(A) = e^tau (c I + f (A - tau I)).
Mat2 expm2(const Mat2& A) {
  const double tau = 0.5 * (A[0] + A[3]);
  const Mat2 B = {A[0] - tau, A[1], A[2], A[3] - tau};
  const double d2 = B[0] * B[0] + B[1] * B[2];
  double ec = 0.0;  // e^tau c
  double ef = 0.0;  // e^tau f
  if (std::abs(d2) < 1e-16) {
    const double e = std::exp(tau);
    ec = e * (1.0 + 0.5 * d2);
    ef = e * (1.0 + d2 / 6.0);
  } else if (d2 > 0.0) {
    const double d = std::sqrt(d2);
    const double ep = std::exp(tau + d);
    const double em = std::exp(tau - d);
    ec = 0.5 * (ep + em);
    ef = 0.5 * (ep - em) / d;
  } else {
    const double d = std::sqrt(-d2);
    const double e = std::exp(tau);
    ec = e * std::cos(d);
    ef = e * std::sin(d) / d;
  }
  return {ec + ef * B[0], ef * B[1], ef * B[2], ec + ef * B[3]};
}

bool near_integer(double x, long long& k) {
  k = std::llround(x);
  return std::abs(x - static_cast<double>(k)) <= 1e-9 * std::max(1.0, std::abs(x));
}

}  // namespace

bool Stepper::folds(const IntertwiningMatrix& m) const {
  const bool linear = m.is_nudging() ||
                      (m.cls() == MatrixClass::General && m.coupling() == Coupling::ProjectK);
  if (!linear) return false;
  switch (opt_.fold) {
    case FoldMode::On: return true;
    case FoldMode::Off: return false;
    case FoldMode::Auto: return m.max_abs_entry() * opt_.dt > 1.0;
  }
  return false;
}

double Stepper::cfl_limit(const IntertwinedState& s) const {
  const double R = s.grid().dealias_radius();
  double lim = 1.0 / (s.nu * R * R);
  const double u = std::max(spectral::sup_norm_bound(s.v1), spectral::sup_norm_bound(s.v2));
  if (u > 0.0) lim = std::min(lim, spectral::kTwoPi / s.grid().n() / u);
  return opt_.cfl * lim;
}

PairRhs Stepper::explicit_part(const IntertwinedState& s, bool folded) const {
  const Coupling F = s.matrix.is_nudging()             ? Coupling::ProjectK
                     : s.matrix.is_direct_replacement() ? Coupling::ProjectK_B
                                                        : s.matrix.coupling();
  return rhs_terms(s, F, {.viscous = false, .nonlinear = opt_.nonlinear, .coupling = !folded});
}

void Stepper::propagate(const IntertwinedState& s, SpectralField& a, SpectralField& b,
                        bool folded) const {
  const Grid& g = s.grid();
  const double dt = opt_.dt;
  Mat2 P = {1.0, 0.0, 0.0, 1.0};
  if (folded) {
    const auto& m = s.matrix.entries();
    P = expm2({dt * m[0], dt * m[1], dt * m[2], dt * m[3]});
  }
  auto& ax = FieldAccess::x(a);
  auto& ay = FieldAccess::y(a);
  auto& bx = FieldAccess::x(b);
  auto& by = FieldAccess::y(b);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const long k2 = g.k2(i, j);
      if (k2 == 0) continue;
      const std::size_t id = g.index(i, j);
      const double e = std::exp(-s.nu * static_cast<double>(k2) * dt);
      if (folded && in_ball(k2, s.K)) {
        const cplx x1 = ax[id], y1 = ay[id], x2 = bx[id], y2 = by[id];
        ax[id] = e * (P[0] * x1 + P[1] * x2);
        bx[id] = e * (P[2] * x1 + P[3] * x2);
        ay[id] = e * (P[0] * y1 + P[1] * y2);
        by[id] = e * (P[2] * y1 + P[3] * y2);
      } else {
        ax[id] *= e;
        ay[id] *= e;
        bx[id] *= e;
        by[id] *= e;
      }
    }
  }
}

void Stepper::check_blowup(const IntertwinedState& s) const {
  for (const SpectralField* f : {&s.v1, &s.v2}) {
    if (!f->all_finite()) throw BlowupDetected("non-finite coefficient", s.t);
    const double h1 = spectral::h1_norm(*f);
    if (!(h1 <= opt_.blowup_norm)) {
      throw BlowupDetected("norm " + std::to_string(h1) + " exceeds guard", s.t);
    }
  }
}

void Stepper::step(IntertwinedState& s) const {
  const double dt = opt_.dt;
  if (!(dt > 0.0)) throw PreconditionError("dt must be > 0");
  if (opt_.check_cfl) {
    const double lim = cfl_limit(s);
    if (dt > lim) {
      throw PreconditionError("dt = " + std::to_string(dt) + " violates the CFL guard (limit " +
                              std::to_string(lim) + " at t = " + std::to_string(s.t) + ")");
    }
  }
  const bool folded = folds(s.matrix);

  PairRhs n0 = explicit_part(s, folded);
  IntertwinedState star = s;
  star.v1.axpy(dt, n0.r1);
  star.v2.axpy(dt, n0.r2);
  propagate(s, star.v1, star.v2, folded);
  star.t = s.t + dt;
  const PairRhs n1 = explicit_part(star, folded);

  propagate(s, s.v1, s.v2, folded);
  propagate(s, n0.r1, n0.r2, folded);
  n0.r1 += n1.r1;
  n0.r2 += n1.r2;
  s.v1.axpy(0.5 * dt, n0.r1);
  s.v2.axpy(0.5 * dt, n0.r2);
  s.t = star.t;
  check_blowup(s);
}

IntertwinedState Stepper::integrate(IntertwinedState s, double t_end, double sample_every,
                                    Sink* sink) const {
  const double dt = opt_.dt;
  if (!(dt > 0.0)) throw PreconditionError("dt must be > 0");
  if (t_end < s.t) throw PreconditionError("t_end precedes the current time");
  if (!(sample_every > 0.0)) throw PreconditionError("sample_every must be > 0");
  long long nsteps = 0;
  long long stride = 0;
  if (!near_integer((t_end - s.t) / dt, nsteps)) {
    throw PreconditionError("t_end - t must be an integer multiple of dt");
  }
  if (!near_integer(sample_every / dt, stride) || stride < 1) {
    throw PreconditionError("sample_every must be a positive integer multiple of dt");
  }
  s.validate();
  const double t0 = s.t;
  if (sink != nullptr) sink->on_sample(s);
  for (long long k = 1; k <= nsteps; ++k) {
    if (sink != nullptr) {
      const IntertwinedState before = s;
      step(s);
      s.t = t0 + static_cast<double>(k) * dt;
      sink->on_step(before, s);
    } else {
      step(s);
      s.t = t0 + static_cast<double>(k) * dt;
    }
    if (sink != nullptr && (k % stride == 0 || k == nsteps)) sink->on_sample(s);
  }
  return s;
}

}  // namespace intwine::dynamics
