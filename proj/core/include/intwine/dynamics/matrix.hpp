#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace intwine::dynamics {

enum class MatrixClass : std::uint8_t { NudgeSym = 0, NudgeMut = 1, DRSym = 2, DRMut = 3, General = 4 };

/// Intertwining function F applied to each copy before mixing by M.
enum class Coupling : std::uint8_t { ProjectK = 0, ProjectK_B = 1 };

std::string to_string(MatrixClass c);
std::string to_string(Coupling c);
MatrixClass matrix_class_from_string(const std::string& s);
Coupling coupling_from_string(const std::string& s);

/// 2x2 coupling matrix tagged with its family. Constructed only through the
/// named factories, which reject parameters outside the family.
class IntertwiningMatrix {
 public:
  /// (-mu1, mu2; mu2, -mu1), mu1 >= mu2 >= 0.
  static IntertwiningMatrix nudge_sym(double mu1, double mu2);
  /// (-mu1, mu1; mu2, -mu2), mu1, mu2 >= 0.
  static IntertwiningMatrix nudge_mut(double mu1, double mu2);
  /// (theta1, -theta2; -theta2, theta1), theta1 + theta2 = 1.
  static IntertwiningMatrix dr_sym(double theta1, double theta2);
  /// (theta1, -theta1; -theta2, theta2), theta1 + theta2 = 1, both >= 0.
  static IntertwiningMatrix dr_mut(double theta1, double theta2);
  static IntertwiningMatrix general(double m11, double m12, double m21, double m22, Coupling f);
  /// Rebuilds from a class tag and its parameters (p1, p2 for the named
  /// families; the four entries for General).
  static IntertwiningMatrix from_params(MatrixClass c, const std::array<double, 4>& p,
                                        Coupling f = Coupling::ProjectK);

  MatrixClass cls() const noexcept { return cls_; }
  Coupling coupling() const noexcept { return coupling_; }
  bool is_nudging() const noexcept { return cls_ == MatrixClass::NudgeSym || cls_ == MatrixClass::NudgeMut; }
  bool is_direct_replacement() const noexcept { return cls_ == MatrixClass::DRSym || cls_ == MatrixClass::DRMut; }

  /// Entry m_ij with 1-based indices.
  double m(int i, int j) const noexcept { return m_[(i - 1) * 2 + (j - 1)]; }
  const std::array<double, 4>& entries() const noexcept { return m_; }
  /// The two defining parameters (mu or theta); General returns (m11, m12).
  double param1() const noexcept { return p1_; }
  double param2() const noexcept { return p2_; }

  double mu1() const;
  double mu2() const;
  double theta1() const;
  double theta2() const;

  /// Eigenvalues of -M for NudgeSym: (mu1 - mu2, mu1 + mu2).
  std::array<double, 2> eigenvalues() const;

  /// Largest |m_ij|, used to decide when the linear coupling is stiff.
  double max_abs_entry() const noexcept;

  friend bool operator==(const IntertwiningMatrix&, const IntertwiningMatrix&) = default;

 private:
  IntertwiningMatrix(MatrixClass c, Coupling f, double p1, double p2, const std::array<double, 4>& m)
      : cls_(c), coupling_(f), p1_(p1), p2_(p2), m_(m) {}

  MatrixClass cls_;
  Coupling coupling_;
  double p1_;
  double p2_;
  std::array<double, 4> m_;
};

}  // namespace intwine::dynamics
