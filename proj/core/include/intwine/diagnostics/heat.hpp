#pragma once

#include <vector>

#include "intwine/oracle/heat.hpp"

namespace intwine::diagnostics {

struct HeatSample {
  double t;
  spectral::SpectralField p;
};

/// max_i |p_i - heat_exact(p0, h, nu, t_i - t0)| where p0 is the first sample.
double heat_compare(const std::vector<HeatSample>& series, const oracle::HeatForcing& h,
                    double nu);

}  // namespace intwine::diagnostics
