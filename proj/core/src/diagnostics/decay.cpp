#include "intwine/diagnostics/decay.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "intwine/errors.hpp"

namespace intwine::diagnostics {

DecayResult decay_detect(std::span<const double> t, std::span<const double> x,
                         double tail_fraction, double ratio_threshold, double r2_min) {
  if (t.size() != x.size()) throw PreconditionError("decay_detect: t and x differ in length");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw PreconditionError("decay_detect: tail_fraction must lie in (0, 1]");
  }
  const std::size_t n = x.size();
  const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  if (tail < 10) {
    throw InsufficientData("decay_detect: need >= 10 tail samples, have " + std::to_string(tail));
  }
  for (double v : x) {
    if (!(v >= 0.0)) throw PreconditionError("decay_detect: samples must be >= 0");
  }
  DecayResult r;
  r.by_threshold = x[n - 1] <= ratio_threshold * x[0];

  // Least squares of ln x on t; zeros are floored at the smallest normal double.
  const std::size_t b = n - tail;
  double st = 0.0, sy = 0.0;
  for (std::size_t i = b; i < n; ++i) {
    st += t[i];
    sy += std::log(std::max(x[i], std::numeric_limits<double>::min()));
  }
  const double m = static_cast<double>(tail);
  const double tm = st / m;
  const double ym = sy / m;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = b; i < n; ++i) {
    const double dt = t[i] - tm;
    const double dy = std::log(std::max(x[i], std::numeric_limits<double>::min())) - ym;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt <= 0.0) throw InsufficientData("decay_detect: tail times are all equal");
  r.rate = sty / stt;
  if (syy > 0.0) {
    double sres = 0.0;
    for (std::size_t i = b; i < n; ++i) {
      const double y = std::log(std::max(x[i], std::numeric_limits<double>::min()));
      const double e = y - (ym + r.rate * (t[i] - tm));
      sres += e * e;
    }
    r.r2 = 1.0 - sres / syy;
  } else {
    r.rate = 0.0;
    r.r2 = 0.0;
  }
  r.by_fit = r.rate < 0.0 && r.r2 >= r2_min;
  r.decayed = r.by_threshold || r.by_fit;
  return r;
}

}  // namespace intwine::diagnostics
