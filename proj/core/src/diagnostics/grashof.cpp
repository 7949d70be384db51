#include "intwine/diagnostics/grashof.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::diagnostics {

using spectral::h1_norm;
using spectral::l2_norm;

double grashof_from_series(std::span<const double> force_l2, double nu) {
  if (force_l2.empty()) throw EmptySeries("grashof_from_series: no samples");
  if (!(nu > 0.0)) throw PreconditionError("grashof_from_series: nu must be > 0");
  double mx = 0.0;
  for (double v : force_l2) {
    if (!(v >= 0.0)) throw PreconditionError("grashof_from_series: negative or NaN sample");
    mx = std::max(mx, v);
  }
  return mx / (nu * nu);
}

void GrashofSet::validate() const {
  const double all[] = {g1,     g2,     g,      g_tilde, g_mu_tilde, g_theta, h_frak,
                        k_frak, p_frak, d_frak, f_frak,  r_frak,     m_frak};
  for (double v : all) {
    if (!(v >= 0.0)) throw PreconditionError("Grashof quantities must be finite and >= 0");
  }
  const double gg = std::sqrt(g1 * g1 + g2 * g2);
  if (std::abs(gg - g) > 1e-12 * std::max(1.0, g)) {
    throw PreconditionError("Grashof set violates g^2 = g1^2 + g2^2");
  }
  if (k_frak > std::sqrt(2.0) * g * (1.0 + 1e-12) + 1e-300) {
    throw PreconditionError("Grashof set violates k <= sqrt(2) g (k = " + std::to_string(k_frak) +
                            ", g = " + std::to_string(g) + ")");
  }
}

GrashofSet compute_grashof(const dynamics::IntertwinedState& s, const GrashofOptions& opt) {
  if (!(opt.sample_dt > 0.0) || opt.t_end < opt.t0) {
    throw PreconditionError("compute_grashof: need sample_dt > 0 and t_end >= t0");
  }
  const double nu2 = s.nu * s.nu;
  const long long n = std::llround((opt.t_end - opt.t0) / opt.sample_dt);
  double s1 = 0.0, s2 = 0.0, sh = 0.0, sk = 0.0, sth = 0.0, st1 = 0.0, st2 = 0.0, smu = 0.0;
  const bool dr = s.matrix.is_direct_replacement();
  for (long long i = 0; i <= n; ++i) {
    const double t = i == n ? opt.t_end : opt.t0 + static_cast<double>(i) * opt.sample_dt;
    const auto a = s.g1->at(t);
    const auto b = s.g2->at(t);
    const double la = l2_norm(a);
    const double lb = l2_norm(b);
    s1 = std::max(s1, la);
    s2 = std::max(s2, lb);
    sh = std::max(sh, l2_norm(a - b));
    sk = std::max(sk, l2_norm(a + b));
    if (dr) {
      auto gt = s.matrix.theta2() * a;
      gt.axpy(s.matrix.theta1(), b);
      sth = std::max(sth, l2_norm(gt));
    }
    if (opt.g_tilde1 != nullptr && opt.g_tilde2 != nullptr) {
      const auto ta = opt.g_tilde1->at(t);
      const auto tb = opt.g_tilde2->at(t);
      st1 = std::max(st1, l2_norm(ta));
      st2 = std::max(st2, l2_norm(tb));
      auto ma = a;
      ma.axpy(-opt.mu_tilde, ta);
      auto mb = b;
      mb.axpy(-opt.mu_tilde, tb);
      smu = std::max(smu, std::hypot(l2_norm(ma), l2_norm(mb)));
    } else {
      smu = std::max(smu, std::hypot(la, lb));
    }
  }
  GrashofSet r;
  r.g1 = s1 / nu2;
  r.g2 = s2 / nu2;
  r.g = std::sqrt(r.g1 * r.g1 + r.g2 * r.g2);
  r.g_tilde = std::hypot(st1, st2) / nu2;
  r.g_mu_tilde = smu / nu2;
  r.g_theta = sth / nu2;
  r.h_frak = sh / nu2;
  r.k_frak = sk / nu2;

  const auto views = dynamics::derived_views(s, false);
  const double p0 = h1_norm(views.p) / s.nu;
  r.p_frak = std::sqrt(p0 * p0 + r.h_frak * r.h_frak);
  const double zw = (std::pow(h1_norm(views.z), 2) + std::pow(h1_norm(views.w), 2)) / nu2;
  r.d_frak = std::sqrt(1.0 + zw);
  r.f_frak = std::hypot(r.k_frak, r.h_frak);
  const double r0 = h1_norm(views.r) / s.nu;
  r.r_frak = 4.0 * std::sqrt(r0 * r0 + r.k_frak * r.k_frak);
  r.validate();
  return r;
}

double measured_m_frak(std::span<const double> h1_v1, std::span<const double> h1_v2, double nu) {
  if (h1_v1.empty() || h1_v2.empty()) throw EmptySeries("measured_m_frak: empty tail");
  const double a = *std::max_element(h1_v1.begin(), h1_v1.end());
  const double b = *std::max_element(h1_v2.begin(), h1_v2.end());
  return std::min(a, b) / nu;
}

}  // namespace intwine::diagnostics
