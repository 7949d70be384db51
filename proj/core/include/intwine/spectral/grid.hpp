#pragma once

#include <complex>
#include <cstddef>

namespace intwine::spectral {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
/// Plancherel factor: |u|^2 = (2 pi)^2 sum_k |u_k|^2 on [0, 2 pi]^2.
inline constexpr double kDomainArea = kTwoPi * kTwoPi;

/// Periodic n x n collocation grid and its half-spectrum layout.
///
/// Coefficients are stored for kx in FFT order (row index i, kx = i or i - n)
/// and ky = 0 .. n/2 (column index j). The conjugate half is implied by
/// reality. Products of fields inside the dealias radius R are alias-free
/// whenever 3 * floor(R) < n, which the constructor enforces.
class Grid {
 public:
  /// Grid with the largest admissible dealias radius (n/3, or just below it).
  explicit Grid(int n);
  Grid(int n, double dealias_radius);

  int n() const noexcept { return n_; }
  double dealias_radius() const noexcept { return dealias_radius_; }
  int nky() const noexcept { return n_ / 2 + 1; }
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(nky());
  }
  std::size_t physical_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }

  int kx(int i) const noexcept { return i <= n_ / 2 ? i : i - n_; }
  static int ky(int j) noexcept { return j; }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(nky()) +
           static_cast<std::size_t>(j);
  }
  int row_of(int kx) const noexcept { return kx >= 0 ? kx : kx + n_; }
  long k2(int i, int j) const noexcept {
    const long a = kx(i);
    const long b = j;
    return a * a + b * b;
  }

  /// Multiplicity of a stored column in full-spectrum sums.
  double weight(int j) const noexcept { return (j == 0 || 2 * j == n_) ? 1.0 : 2.0; }

  bool inside_dealias(int i, int j) const noexcept {
    return static_cast<double>(k2(i, j)) <= dealias_radius_ * dealias_radius_ * (1.0 + 1e-14);
  }

  /// True if (kx, ky) is representable without touching the Nyquist row/column.
  bool representable(int kx, int ky) const noexcept {
    return 2 * kx > -n_ && 2 * kx < n_ && 2 * ky > -n_ && 2 * ky < n_;
  }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_ == b.n_ && a.dealias_radius_ == b.dealias_radius_;
  }

 private:
  int n_;
  double dealias_radius_;
};

/// Inclusive Euclidean ball test with a relative guard against K*K rounding.
inline bool in_ball(long k2, double radius) noexcept {
  return static_cast<double>(k2) <= radius * radius * (1.0 + 1e-14);
}

}  // namespace intwine::spectral
