#include "intwine/dynamics/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "intwine/errors.hpp"

namespace intwine::dynamics {

namespace {

constexpr double kThetaSumTol = 1e-12;

void require_finite(double a, double b, const char* what) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw PreconditionError(std::string(what) + ": parameters must be finite");
  }
}

void require_theta_sum(double t1, double t2, const char* what) {
  if (std::abs(t1 + t2 - 1.0) > kThetaSumTol) {
    throw PreconditionError(std::string(what) + ": theta1 + theta2 must equal 1, got " +
                            std::to_string(t1 + t2));
  }
}

}  // namespace

std::string to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::NudgeSym: return "NudgeSym";
    case MatrixClass::NudgeMut: return "NudgeMut";
    case MatrixClass::DRSym: return "DRSym";
    case MatrixClass::DRMut: return "DRMut";
    case MatrixClass::General: return "General";
  }
  return "?";
}

std::string to_string(Coupling c) { return c == Coupling::ProjectK ? "ProjectK" : "ProjectK_B"; }

MatrixClass matrix_class_from_string(const std::string& s) {
  for (auto c : {MatrixClass::NudgeSym, MatrixClass::NudgeMut, MatrixClass::DRSym,
                 MatrixClass::DRMut, MatrixClass::General}) {
    if (to_string(c) == s) return c;
  }
  throw PreconditionError("unknown matrix class '" + s + "'");
}

Coupling coupling_from_string(const std::string& s) {
  if (s == "ProjectK") return Coupling::ProjectK;
  if (s == "ProjectK_B") return Coupling::ProjectK_B;
  throw PreconditionError("unknown intertwining function '" + s + "'");
}

IntertwiningMatrix IntertwiningMatrix::nudge_sym(double mu1, double mu2) {
  require_finite(mu1, mu2, "NudgeSym");
  if (!(mu1 >= mu2 && mu2 >= 0.0)) {
    throw PreconditionError("NudgeSym requires mu1 >= mu2 >= 0");
  }
  return {MatrixClass::NudgeSym, Coupling::ProjectK, mu1, mu2, {-mu1, mu2, mu2, -mu1}};
}

IntertwiningMatrix IntertwiningMatrix::nudge_mut(double mu1, double mu2) {
  require_finite(mu1, mu2, "NudgeMut");
  if (!(mu1 >= 0.0 && mu2 >= 0.0)) throw PreconditionError("NudgeMut requires mu1, mu2 >= 0");
  return {MatrixClass::NudgeMut, Coupling::ProjectK, mu1, mu2, {-mu1, mu1, mu2, -mu2}};
}

IntertwiningMatrix IntertwiningMatrix::dr_sym(double theta1, double theta2) {
  require_finite(theta1, theta2, "DRSym");
  require_theta_sum(theta1, theta2, "DRSym");
  return {MatrixClass::DRSym, Coupling::ProjectK_B, theta1, theta2,
          {theta1, -theta2, -theta2, theta1}};
}

IntertwiningMatrix IntertwiningMatrix::dr_mut(double theta1, double theta2) {
  require_finite(theta1, theta2, "DRMut");
  require_theta_sum(theta1, theta2, "DRMut");
  if (!(theta1 >= 0.0 && theta2 >= 0.0)) {
    throw PreconditionError("DRMut requires theta1, theta2 >= 0");
  }
  return {MatrixClass::DRMut, Coupling::ProjectK_B, theta1, theta2,
          {theta1, -theta1, -theta2, theta2}};
}

IntertwiningMatrix IntertwiningMatrix::general(double m11, double m12, double m21, double m22,
                                               Coupling f) {
  require_finite(m11, m12, "General");
  require_finite(m21, m22, "General");
  return {MatrixClass::General, f, m11, m12, {m11, m12, m21, m22}};
}

IntertwiningMatrix IntertwiningMatrix::from_params(MatrixClass c, const std::array<double, 4>& p,
                                                   Coupling f) {
  switch (c) {
    case MatrixClass::NudgeSym: return nudge_sym(p[0], p[1]);
    case MatrixClass::NudgeMut: return nudge_mut(p[0], p[1]);
    case MatrixClass::DRSym: return dr_sym(p[0], p[1]);
    case MatrixClass::DRMut: return dr_mut(p[0], p[1]);
    case MatrixClass::General: return general(p[0], p[1], p[2], p[3], f);
  }
  throw PreconditionError("invalid matrix class");
}

double IntertwiningMatrix::mu1() const {
  if (!is_nudging()) throw WrongMatrixClass("mu1 requested from " + to_string(cls_));
  return p1_;
}

double IntertwiningMatrix::mu2() const {
  if (!is_nudging()) throw WrongMatrixClass("mu2 requested from " + to_string(cls_));
  return p2_;
}

double IntertwiningMatrix::theta1() const {
  if (!is_direct_replacement()) throw WrongMatrixClass("theta1 requested from " + to_string(cls_));
  return p1_;
}

double IntertwiningMatrix::theta2() const {
  if (!is_direct_replacement()) throw WrongMatrixClass("theta2 requested from " + to_string(cls_));
  return p2_;
}

std::array<double, 2> IntertwiningMatrix::eigenvalues() const {
  if (cls_ != MatrixClass::NudgeSym) {
    throw WrongMatrixClass("closed-form eigenvalues are defined for NudgeSym only");
  }
  return {p1_ - p2_, p1_ + p2_};
}

double IntertwiningMatrix::max_abs_entry() const noexcept {
  double r = 0.0;
  for (double v : m_) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace intwine::dynamics
