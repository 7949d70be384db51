#pragma once

#include <cstdint>
#include <string>

#include "intwine/dynamics/state.hpp"

namespace intwine::dynamics {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  explicit Checkpoint(const Grid& g) : v1(g), v2(g) {}

  double nu = 0.0;
  double t = 0.0;
  double K = 0.0;
  IntertwiningMatrix matrix = IntertwiningMatrix::nudge_mut(0.0, 0.0);
  std::uint64_t seed = 0;
  SpectralField v1;
  SpectralField v2;
};

/// Little-endian binary: "ITWN", u32 version, nu, t, u32 n, K, u8 class,
/// two f64 params, u64 seed, [General: m21, m22 f64, u8 coupling], then the
/// v1 and v2 half-spectrum blocks (row-major, x then y per mode, re then im).
void checkpoint_save(const IntertwinedState& s, std::uint64_t seed, const std::string& path);
/// Loads onto `grid` when given (must match n); otherwise onto Grid(n).
Checkpoint checkpoint_load(const std::string& path);
Checkpoint checkpoint_load(const std::string& path, const Grid& grid);

}  // namespace intwine::dynamics
