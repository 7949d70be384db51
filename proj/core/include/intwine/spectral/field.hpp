#pragma once

#include <span>
#include <vector>

#include "intwine/spectral/grid.hpp"

namespace intwine::spectral {

/// Unconstrained two-component coefficient array on a grid's half spectrum.
/// Input to leray_project; carries no invariants.
struct RawVectorField {
  explicit RawVectorField(const Grid& g)
      : grid(g), x(g.spectral_size()), y(g.spectral_size()) {}

  Grid grid;
  std::vector<cplx> x;
  std::vector<cplx> y;

  /// Sets the coefficient at wavenumber (kx, ky) and its conjugate partner
  /// so the represented field stays real.
  void set_mode(int kx, int ky, cplx ax, cplx ay);
};

class SpectralField;

namespace detail {
struct FieldAccess;
}

/// Real, divergence-free, mean-free velocity field on [0, 2 pi]^2 in Fourier
/// space. Only constructible as the zero field or through operations that
/// preserve these properties (leray_project, masks, linear combinations).
class SpectralField {
 public:
  explicit SpectralField(const Grid& g)
      : grid_(g), x_(g.spectral_size()), y_(g.spectral_size()) {}

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> x() const noexcept { return x_; }
  std::span<const cplx> y() const noexcept { return y_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  /// this += a * o
  SpectralField& axpy(double a, const SpectralField& o);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

  /// Bitwise coefficient equality.
  friend bool operator==(const SpectralField& a, const SpectralField& b) noexcept;

  bool all_finite() const noexcept;

 private:
  friend struct detail::FieldAccess;
  Grid grid_;
  std::vector<cplx> x_;
  std::vector<cplx> y_;
};

namespace detail {
/// Library-internal write access for operations that provably keep the
/// SpectralField invariants (diagonal multipliers, masks, projections).
struct FieldAccess {
  static std::vector<cplx>& x(SpectralField& f) { return f.x_; }
  static std::vector<cplx>& y(SpectralField& f) { return f.y_; }
};
}  // namespace detail

}  // namespace intwine::spectral
