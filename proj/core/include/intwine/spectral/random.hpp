#pragma once

#include <cstdint>

#include "intwine/spectral/field.hpp"

namespace intwine::spectral {

/// SplitMix64 generator. Chosen over <random> distributions because its
/// output sequence is fixed by definition, independent of the standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Independent stream for sub-task `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

struct RandomFieldSpec {
  std::uint64_t seed = 0;
  /// |u_k| ~ |k|^-slope.
  double slope = 1.0;
  /// Largest retained |k|; <= 0 means the grid's dealias radius.
  double kmax = 0.0;
  /// Smallest retained |k|.
  double kmin = 0.0;
  /// Rescale to this L2 norm when > 0 (after projection and truncation).
  double l2 = 0.0;
  /// Alternatively rescale to this H1 norm when > 0 (takes precedence).
  double h1 = 0.0;
};

/// Random-phase field with a power-law spectrum, projected and dealiased.
SpectralField random_field(const Grid& grid, const RandomFieldSpec& spec);

}  // namespace intwine::spectral
