#pragma once

#include <span>

namespace intwine::diagnostics {

struct DecayResult {
  bool decayed = false;
  /// Slope of the least-squares line through (t, ln x) over the tail.
  double rate = 0.0;
  double r2 = 0.0;
  /// Which branch decided: final/initial below threshold, or the fit.
  bool by_threshold = false;
  bool by_fit = false;
};

/// decayed iff x_final <= ratio_threshold x_initial, or the tail fit has
/// rate < 0 and r2 >= r2_min. Needs >= 10 tail samples and x >= 0.
DecayResult decay_detect(std::span<const double> t, std::span<const double> x,
                         double tail_fraction = 0.5, double ratio_threshold = 1e-6,
                         double r2_min = 0.9);

}  // namespace intwine::diagnostics
