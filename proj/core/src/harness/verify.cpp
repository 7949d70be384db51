#include "intwine/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "intwine/diagnostics/heat.hpp"
#include "intwine/dynamics/integrator.hpp"
#include "intwine/dynamics/rhs.hpp"
#include "intwine/errors.hpp"
#include "intwine/oracle/dense.hpp"
#include "intwine/oracle/heat.hpp"
#include "intwine/spectral/operators.hpp"
#include "intwine/spectral/random.hpp"

namespace intwine::harness {

using dynamics::Forcing;
using dynamics::IntertwinedState;
using dynamics::IntertwiningMatrix;
using dynamics::Stepper;
using spectral::Grid;
using spectral::SpectralField;

namespace {

Check make_check(std::string suite, std::string name, double value, double tol) {
  return {std::move(suite), std::move(name), value, tol, value <= tol};
}

SpectralField rnd(const Grid& g, std::uint64_t seed, double kmax = 0.0, double l2 = 1.0) {
  spectral::RandomFieldSpec s;
  s.seed = seed;
  s.kmax = kmax;
  s.l2 = l2;
  return spectral::random_field(g, s);
}

double rel(double num, double den) { return den > 0.0 ? std::abs(num) / den : std::abs(num); }

std::shared_ptr<const Forcing> steady(SpectralField f) {
  return std::make_shared<const Forcing>(Forcing::steady(std::move(f)));
}

}  // namespace

std::string to_text(const Check& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e <= %.1e", c.value, c.tolerance);
  return std::string(c.pass ? "PASS " : "FAIL ") + c.suite + "/" + c.name + " " + buf;
}

std::vector<Check> verify_identities(const std::vector<int>& sizes, int cases, std::uint64_t seed) {
  using spectral::bilinear_B;
  using spectral::l2_norm;
  using spectral::stokes_apply;
  using spectral::trilinear_b;
  std::vector<Check> out;
  for (int n : sizes) {
    const Grid g(n);
    double skew = 0.0, bvv = 0.0, ens = 0.0, mir = 0.0, half = 0.0;
    for (int c = 0; c < cases; ++c) {
      const std::uint64_t base = spectral::derive_seed(seed, static_cast<std::uint64_t>(n) * 100000 + c);
      const SpectralField u = rnd(g, spectral::derive_seed(base, 0));
      const SpectralField v = rnd(g, spectral::derive_seed(base, 1));
      const SpectralField w = rnd(g, spectral::derive_seed(base, 2));
      const SpectralField Au = stokes_apply(u, 2);
      const SpectralField Av = stokes_apply(v, 2);
      const SpectralField Buv = bilinear_B(u, v), Buw = bilinear_B(u, w), Bvv = bilinear_B(v, v);
      const SpectralField Buu = bilinear_B(u, u), Bvu = bilinear_B(v, u);
      skew = std::max(skew, rel(spectral::inner(Buv, w) + spectral::inner(Buw, v),
                               l2_norm(Buv) * l2_norm(w) + l2_norm(Buw) * l2_norm(v)));
      bvv = std::max(bvv, rel(spectral::inner(Buv, v), l2_norm(Buv) * l2_norm(v)));
      ens = std::max(ens, rel(spectral::inner(Buu, Au), l2_norm(Buu) * l2_norm(Au)));
      mir = std::max(mir, rel(spectral::inner(Bvv, Au) + spectral::inner(Buv, Av) + spectral::inner(Bvu, Av),
                             l2_norm(Bvv) * l2_norm(Au) + (l2_norm(Buv) + l2_norm(Bvu)) * l2_norm(Av)));
      half = std::max(half, rel(dynamics::residual_half_DB(u, v), l2_norm(Buu) + l2_norm(Bvv)));
    }
    const std::string tag = "_n" + std::to_string(n);
    out.push_back(make_check("identity", "skew" + tag, skew, 1e-10));
    out.push_back(make_check("identity", "b_uvv" + tag, bvv, 1e-10));
    out.push_back(make_check("identity", "enstrophy" + tag, ens, 1e-10));
    out.push_back(make_check("identity", "enstrophy_triple" + tag, mir, 1e-10));
    out.push_back(make_check("identity", "half_DB" + tag, half, 1e-10));
  }
  return out;
}

std::vector<Check> verify_oracle(int cases, std::uint64_t seed) {
  using oracle::DenseModeSet;
  std::vector<Check> out;
  {
    const Grid g(16);
    const int R = oracle::kMaxDenseRadius;
    double worst = 0.0, dskew = 0.0;
    for (int c = 0; c < cases; ++c) {
      const std::uint64_t base = spectral::derive_seed(seed ^ 0x5EED, c);
      const SpectralField u = rnd(g, spectral::derive_seed(base, 0), R);
      const SpectralField v = rnd(g, spectral::derive_seed(base, 1), R);
      const SpectralField w = rnd(g, spectral::derive_seed(base, 2), R);
      const DenseModeSet du = DenseModeSet::from_field(u, R);
      const DenseModeSet dv = DenseModeSet::from_field(v, R);
      const DenseModeSet dw = DenseModeSet::from_field(w, R);
      const DenseModeSet duv = oracle::dense_bilinear_B(du, dv);
      const SpectralField ref = duv.to_field(g);
      const SpectralField ps = spectral::project_low(spectral::bilinear_B(u, v), R);
      worst = std::max(worst, rel(spectral::l2_norm(ps - ref), spectral::l2_norm(ref)));
      const DenseModeSet duw = oracle::dense_bilinear_B(du, dw);
      dskew = std::max(dskew, rel(oracle::dense_inner(duv, dw) + oracle::dense_inner(duw, dv),
                                  oracle::dense_l2(duv) * oracle::dense_l2(dw) +
                                      oracle::dense_l2(duw) * oracle::dense_l2(dv)));
    }
    out.push_back(make_check("oracle", "B_vs_dense_n16_r4", worst, 1e-11));
    out.push_back(make_check("oracle", "dense_skew", dskew, 1e-13));
  }
  {
    const Grid g(8, 2.0);
    const int R = 2;
    const double nu = 0.1, K = 1.5, T = 1.0;
    const SpectralField u0 = rnd(g, spectral::derive_seed(seed, 101));
    const SpectralField u1 = rnd(g, spectral::derive_seed(seed, 102));
    const SpectralField f = rnd(g, spectral::derive_seed(seed, 103));
    const auto F = steady(f);
    struct Case {
      const char* name;
      oracle::DenseSystem sys;
      IntertwiningMatrix m;
    };
    const Case list[] = {
        {"trajectory_nse_n8", oracle::DenseSystem::NSE, IntertwiningMatrix::nudge_mut(0.0, 0.0)},
        {"trajectory_nudge_n8", oracle::DenseSystem::Nudging, IntertwiningMatrix::nudge_mut(2.0, 1.0)},
        {"trajectory_dr_n8", oracle::DenseSystem::DirectReplacement, IntertwiningMatrix::dr_mut(0.25, 0.75)},
    };
    for (const Case& c : list) {
      oracle::DenseParams p;
      p.nu = nu;
      p.K = K;
      p.m = c.m.entries();
      const DenseModeSet df = DenseModeSet::from_field(f, R);
      const auto tr = oracle::dense_trajectory(c.sys, p, DenseModeSet::from_field(u0, R),
                                               DenseModeSet::from_field(u1, R), df, df, T, 1e-4, T);
      const IntertwinedState s(0.0, nu, c.sys == oracle::DenseSystem::NSE ? 0.0 : K, c.m, u0, u1, F, F);
      dynamics::StepperOptions so;
      so.dt = 1e-3;
      const IntertwinedState e = Stepper(so).integrate(s, T, T, nullptr);
      double err = spectral::l2_norm(e.v1 - tr.back().v1.to_field(g));
      if (c.sys != oracle::DenseSystem::NSE) {
        err = std::max(err, spectral::l2_norm(e.v2 - tr.back().v2.to_field(g)));
      }
      out.push_back(make_check("oracle", c.name, err, 1e-6));
    }
  }
  return out;
}

namespace {

// Max |P_K w - heat_exact| over samples for a DR run with the given forces.
double heat_run_error(const IntertwinedState& s0, const oracle::HeatForcing& h, double T,
                      double dt, double sample) {
  struct Capture : dynamics::Sink {
    std::vector<diagnostics::HeatSample> samples;
    void on_sample(const IntertwinedState& s) override {
      samples.push_back({s.t, spectral::project_low(s.v1 - s.v2, s.K)});
    }
  } cap;
  dynamics::StepperOptions so;
  so.dt = dt;
  Stepper(so).integrate(s0, T, sample, &cap);
  return diagnostics::heat_compare(cap.samples, h, s0.nu);
}

}  // namespace

std::vector<Check> verify_heat(std::uint64_t seed) {
  std::vector<Check> out;
  const Grid g(16);
  const double nu = 1.0, K = 4.0;
  const SpectralField f = rnd(g, spectral::derive_seed(seed, 201));
  const SpectralField hc = spectral::project_low(rnd(g, spectral::derive_seed(seed, 202)), K);
  const SpectralField v1 = rnd(g, spectral::derive_seed(seed, 203));
  const SpectralField v2 = rnd(g, spectral::derive_seed(seed, 204));
  {
    // Constant h != 0: the integrating factor is exact for h = 0, so the
    // dt^2 term is only visible with forcing.
    SpectralField f1 = f;
    f1 += hc;
    oracle::HeatForcing h(g);
    h.constant = hc;
    for (const auto& m : {IntertwiningMatrix::dr_sym(1.0, 0.0), IntertwiningMatrix::dr_mut(0.25, 0.75)}) {
      const IntertwinedState s0(0.0, nu, K, m, v1, v2, steady(f1), steady(f));
      std::vector<double> errs;
      for (double dt : {0.01, 0.005, 0.0025}) errs.push_back(heat_run_error(s0, h, 1.0, dt, 0.05));
      const double slope1 = std::log2(errs[0] / errs[1]);
      const double slope2 = std::log2(errs[1] / errs[2]);
      const std::string tag = dynamics::to_string(m.cls()) + "_theta1_" + (m.theta1() == 1.0 ? "1" : "0.25");
      out.push_back(make_check("heat", "order_dev_" + tag, std::max(std::abs(slope1 - 2.0), std::abs(slope2 - 2.0)), 0.2));
      // error / dt^2 stays bounded: constant taken from the coarsest run.
      out.push_back(make_check("heat", "err_over_dt2_" + tag, errs[2] / (0.0025 * 0.0025), 2.0 * errs[0] / (0.01 * 0.01)));
    }
  }
  {
    // h(t) = exp(-2 t) delta on the low modes: ||p||_m -> 0 for m <= 2.
    SpectralField delta = spectral::project_low(rnd(g, spectral::derive_seed(seed, 205), 0.0, 0.1), K);
    SpectralField w1 = v2;
    w1 += rnd(g, spectral::derive_seed(seed, 206), 0.0, 0.1);
    const auto g1 = std::make_shared<const Forcing>(Forcing::decaying_pair_delta(f, delta, 2.0));
    const IntertwinedState s0(0.0, nu, K, IntertwiningMatrix::dr_sym(1.0, 0.0), w1, v2, g1, steady(f));
    dynamics::StepperOptions so;
    so.dt = 0.005;
    const IntertwinedState e = Stepper(so).integrate(s0, 20.0, 20.0, nullptr);
    const SpectralField p = spectral::project_low(e.v1 - e.v2, K);
    for (int m = 0; m <= 2; ++m) {
      out.push_back(make_check("heat", "decaying_h_p_H" + std::to_string(m) + "_T20",
                               spectral::sobolev_norm(p, m), 1e-8));
    }
  }
  return out;
}

std::vector<Check> verify_suite(const std::string& which, std::uint64_t seed) {
  std::vector<Check> out;
  auto add = [&](std::vector<Check> v) { out.insert(out.end(), v.begin(), v.end()); };
  const bool all = which == "all";
  if (all || which == "identity") add(verify_identities({16, 32}, 100, seed));
  if (all || which == "oracle") add(verify_oracle(20, seed));
  if (all || which == "heat") add(verify_heat(seed));
  if (out.empty()) throw ConfigInvalid("unknown verify suite '" + which + "' (identity|oracle|heat|all)");
  return out;
}

}  // namespace intwine::harness
