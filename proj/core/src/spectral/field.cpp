#include "intwine/spectral/field.hpp"

#include <cmath>
#include <string>

#include "intwine/errors.hpp"

namespace intwine::spectral {

namespace {

double default_radius(int n) {
  // Largest radius with 3 * floor(R) < n.
  const double third = static_cast<double>(n) / 3.0;
  if (n % 3 == 0) return third - 0.5;
  return third;
}

}  // namespace

Grid::Grid(int n) : Grid(n, n >= 4 ? default_radius(n) : 1.0) {}

Grid::Grid(int n, double dealias_radius) : n_(n), dealias_radius_(dealias_radius) {
  if (n < 4 || n % 2 != 0) {
    throw PreconditionError("grid size must be an even integer >= 4, got " + std::to_string(n));
  }
  if (!(dealias_radius > 0.0) || dealias_radius > static_cast<double>(n) / 3.0) {
    throw PreconditionError("dealias radius must lie in (0, n/3], got " +
                            std::to_string(dealias_radius));
  }
  if (3.0 * std::floor(dealias_radius) >= static_cast<double>(n)) {
    throw PreconditionError("dealias radius " + std::to_string(dealias_radius) +
                            " admits aliased products on an n = " + std::to_string(n) +
                            " grid (need 3 floor(R) < n)");
  }
}

void RawVectorField::set_mode(int kx, int ky, cplx ax, cplx ay) {
  if (!grid.representable(kx, ky)) {
    throw PreconditionError("wavenumber (" + std::to_string(kx) + ", " + std::to_string(ky) +
                            ") is not representable on an n = " + std::to_string(grid.n()) +
                            " grid");
  }
  if (ky < 0 || (ky == 0 && kx < 0)) {
    kx = -kx;
    ky = -ky;
    ax = std::conj(ax);
    ay = std::conj(ay);
  }
  const int i = grid.row_of(kx);
  x[grid.index(i, ky)] = ax;
  y[grid.index(i, ky)] = ay;
  if (ky == 0) {
    const int ic = grid.row_of(-kx);
    x[grid.index(ic, 0)] = std::conj(ax);
    y[grid.index(ic, 0)] = std::conj(ay);
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    x_[k] += o.x_[k];
    y_[k] += o.y_[k];
  }
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    x_[k] -= o.x_[k];
    y_[k] -= o.y_[k];
  }
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    x_[k] *= a;
    y_[k] *= a;
  }
  return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& o) {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    x_[k] += a * o.x_[k];
    y_[k] += a * o.y_[k];
  }
  return *this;
}

bool operator==(const SpectralField& a, const SpectralField& b) noexcept {
  if (!(a.grid_ == b.grid_)) return false;
  for (std::size_t k = 0; k < a.x_.size(); ++k) {
    if (a.x_[k].real() != b.x_[k].real() || a.x_[k].imag() != b.x_[k].imag() ||
        a.y_[k].real() != b.y_[k].real() || a.y_[k].imag() != b.y_[k].imag()) {
      return false;
    }
  }
  return true;
}

bool SpectralField::all_finite() const noexcept {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (!std::isfinite(x_[k].real()) || !std::isfinite(x_[k].imag()) ||
        !std::isfinite(y_[k].real()) || !std::isfinite(y_[k].imag())) {
      return false;
    }
  }
  return true;
}

}  // namespace intwine::spectral
