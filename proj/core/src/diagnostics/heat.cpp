#include "intwine/diagnostics/heat.hpp"

#include <algorithm>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::diagnostics {

double heat_compare(const std::vector<HeatSample>& series, const oracle::HeatForcing& h,
                    double nu) {
  if (series.empty()) throw EmptySeries("heat_compare: no samples");
  const double t0 = series.front().t;
  const auto& p0 = series.front().p;
  double err = 0.0;
  for (const auto& s : series) {
    const auto exact = oracle::heat_exact(p0, h, nu, s.t - t0);
    err = std::max(err, spectral::l2_norm(s.p - exact));
  }
  return err;
}

}  // namespace intwine::diagnostics
