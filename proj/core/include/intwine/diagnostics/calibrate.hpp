#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "intwine/diagnostics/constants.hpp"

namespace intwine::diagnostics {

struct CalibrationResult {
  /// Observed maxima before the safety factor.
  double ladyzhenskaya = 0.0;
  double agmon = 0.0;
  double sobolev = 0.0;
  double poincare = 0.0;
  /// Max Sobolev ratio per cutoff N.
  std::map<int, double> sobolev_by_N;
  double safety = 1.1;
  ConstantsConfig constants;
  std::string provenance() const;
};

/// Maximizes |u|_4^2/(||u|| |u|), |u|_inf^2/(|Au| |u|) and
/// |P_N u|_inf/((ln N)^{1/2} ||P_N u||) over seeded random spectra, single
/// modes and aligned-phase bumps on an n x n grid; constants = maxima * safety.
CalibrationResult calibrate_constants(int n, int samples, std::uint64_t seed = 0,
                                      double safety = 1.1);

}  // namespace intwine::diagnostics
