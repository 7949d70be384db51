#include "intwine/dynamics/rhs.hpp"

#include <cmath>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::dynamics {

using spectral::bilinear_B;
using spectral::l2_norm;
using spectral::project_low;
using spectral::stokes_apply;

SpectralField rhs_nse(const SpectralField& u, const SpectralField& f, double nu) {
  SpectralField r = f;
  r.axpy(-nu, stokes_apply(u, 2));
  r -= bilinear_B(u, u);
  return r;
}

PairRhs rhs_terms(const IntertwinedState& s, Coupling F, const RhsTerms& terms) {
  const Grid& g = s.grid();
  SpectralField r1 = s.g1->at(s.t);
  SpectralField r2 = s.g2->at(s.t);
  if (terms.viscous) {
    r1.axpy(-s.nu, stokes_apply(s.v1, 2));
    r2.axpy(-s.nu, stokes_apply(s.v2, 2));
  }
  const bool need_b = terms.nonlinear;
  SpectralField b1 = need_b ? bilinear_B(s.v1, s.v1) : SpectralField(g);
  SpectralField b2 = need_b ? bilinear_B(s.v2, s.v2) : SpectralField(g);
  if (terms.nonlinear) {
    r1 -= b1;
    r2 -= b2;
  }
  if (terms.coupling) {
    const bool linear = F == Coupling::ProjectK;
    if (linear || terms.nonlinear) {
      const SpectralField f1 = project_low(linear ? s.v1 : b1, s.K);
      const SpectralField f2 = project_low(linear ? s.v2 : b2, s.K);
      const IntertwiningMatrix& m = s.matrix;
      r1.axpy(m.m(1, 1), f1);
      r1.axpy(m.m(1, 2), f2);
      r2.axpy(m.m(2, 1), f1);
      r2.axpy(m.m(2, 2), f2);
    }
  }
  return {std::move(r1), std::move(r2)};
}

PairRhs rhs_general(const IntertwinedState& s, Coupling F) { return rhs_terms(s, F, {}); }

PairRhs rhs_nudging(const IntertwinedState& s) {
  if (!s.matrix.is_nudging()) {
    throw WrongMatrixClass("rhs_nudging needs NudgeSym or NudgeMut, got " +
                           to_string(s.matrix.cls()));
  }
  return rhs_general(s, Coupling::ProjectK);
}

PairRhs rhs_direct_replacement(const IntertwinedState& s) {
  if (!s.matrix.is_direct_replacement()) {
    throw WrongMatrixClass("rhs_direct_replacement needs DRSym or DRMut, got " +
                           to_string(s.matrix.cls()));
  }
  return rhs_general(s, Coupling::ProjectK_B);
}

PairRhs rhs_intertwined(const IntertwinedState& s) {
  if (s.matrix.is_nudging()) return rhs_nudging(s);
  if (s.matrix.is_direct_replacement()) return rhs_direct_replacement(s);
  return rhs_general(s, s.matrix.coupling());
}

SpectralField rhs_sync_observer(const SpectralField& u, const SpectralField& v,
                                const SpectralField& f, double nu, double K) {
  const SpectralField bv = bilinear_B(v, v);
  SpectralField r = f;
  r.axpy(-nu, stokes_apply(v, 2));
  r -= bv;
  r += project_low(bv - bilinear_B(u, u), K);
  return r;
}

SpectralField rhs_nudge_observer(const SpectralField& u, const SpectralField& v,
                                 const SpectralField& f, double nu, double mu, double K) {
  SpectralField r = f;
  r.axpy(-nu, stokes_apply(v, 2));
  r -= bilinear_B(v, v);
  r.axpy(-mu, project_low(v - u, K));
  return r;
}

double residual_twisted(const IntertwinedState& s) {
  if (s.matrix.cls() != MatrixClass::DRMut) {
    throw WrongMatrixClass("residual_twisted needs DRMut, got " + to_string(s.matrix.cls()));
  }
  const double t1 = s.matrix.theta1();
  const double t2 = s.matrix.theta2();
  if (t1 == 0.0) throw PreconditionError("residual_twisted needs theta1 != 0");
  const PairRhs r = rhs_direct_replacement(s);
  SpectralField lhs = t2 * r.r1;
  lhs.axpy(t1, r.r2);

  SpectralField vt = t2 * s.v1;
  vt.axpy(t1, s.v2);
  const SpectralField wt = std::sqrt(t1 * t2) * (s.v1 - s.v2);
  SpectralField rhs = t2 * s.g1->at(s.t);
  rhs.axpy(t1, s.g2->at(s.t));
  rhs.axpy(-s.nu, stokes_apply(vt, 2));
  rhs -= bilinear_B(vt, vt);
  rhs -= bilinear_B(wt, wt);
  return l2_norm(lhs - rhs);
}

double residual_half_DB(const SpectralField& v1, const SpectralField& v2) {
  SpectralField d = bilinear_B(v1, v1) - bilinear_B(v2, v2);
  d.axpy(-0.5, spectral::frechet_DB(v1 + v2, v1 - v2));
  return l2_norm(d);
}

}  // namespace intwine::dynamics
