#pragma once

#include <array>
#include <vector>

#include "intwine/spectral/field.hpp"

namespace intwine::oracle {

using spectral::cplx;
using spectral::Grid;
using spectral::SpectralField;

inline constexpr int kMaxDenseRadius = 4;

/// Every wavenumber 0 < |k| <= radius with its coefficient pair, stored over
/// the full (not half) spectrum so sums need no multiplicity weights.
class DenseModeSet {
 public:
  /// Zero set. radius <= max_radius (kMaxDenseRadius for inputs, twice that
  /// for products); larger radii raise RadiusTooLarge.
  explicit DenseModeSet(int radius, int max_radius = kMaxDenseRadius);
  /// Copies the coefficients of u with |k| <= radius; content of u outside
  /// the radius raises PreconditionError.
  static DenseModeSet from_field(const SpectralField& u, int radius);
  /// Spreads the set onto grid's half spectrum (radius must be representable).
  SpectralField to_field(const Grid& grid) const;

  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return k_.size(); }
  const std::array<int, 2>& k(std::size_t i) const noexcept { return k_[i]; }
  /// Position of wavenumber (kx, ky), or -1.
  int find(int kx, int ky) const noexcept;

  std::vector<cplx> x;
  std::vector<cplx> y;

 private:
  int radius_;
  int span_;
  std::vector<std::array<int, 2>> k_;
  std::vector<int> lookup_;
};

/// Pi_k sum_{a + b = k} i (u_a . b) v_b on the mode set of radius out_radius
/// (defaults to the input radius), by explicit double loop.
DenseModeSet dense_bilinear_B(const DenseModeSet& u, const DenseModeSet& v, int out_radius = -1);

/// (2 pi)^2 sum_k Re(u_k . conj(v_k)); u and v must share a radius.
double dense_inner(const DenseModeSet& u, const DenseModeSet& v);
/// A^{half_power/2}.
DenseModeSet dense_stokes(const DenseModeSet& u, int half_power);
DenseModeSet dense_project_low(const DenseModeSet& u, double K);
double dense_l2(const DenseModeSet& u);

void dense_axpy(DenseModeSet& y, double a, const DenseModeSet& x);

enum class DenseSystem { NSE, Nudging, DirectReplacement };

struct DenseParams {
  double nu = 1.0;
  double K = 0.0;
  /// m11, m12, m21, m22 (ignored for NSE).
  std::array<double, 4> m{};
  /// Nonlinear term toggle (off gives the Stokes/coupling-only system).
  bool nonlinear = true;
};

struct DenseSample {
  double t;
  DenseModeSet v1;
  DenseModeSet v2;
};

/// Classical RK4 at fixed step dt_ref for the NSE (v1 only; v2 is carried
/// unchanged), the nudging pair (F = P_K) or the direct-replacement pair
/// (F = P_K B), with steady forces. Samples at t = 0, every sample_every and t_end.
std::vector<DenseSample> dense_trajectory(DenseSystem system, const DenseParams& params,
                                          const DenseModeSet& v1, const DenseModeSet& v2,
                                          const DenseModeSet& g1, const DenseModeSet& g2,
                                          double t_end, double dt_ref, double sample_every);

}  // namespace intwine::oracle
