#include "intwine/diagnostics/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"
#include "intwine/spectral/random.hpp"
#include "intwine/util/ini.hpp"

namespace intwine::diagnostics {

using spectral::Grid;
using spectral::RandomFieldSpec;
using spectral::RawVectorField;
using spectral::SpectralField;

namespace {

constexpr int kSupOversample = 4;
constexpr int kSobolevCutoffs[] = {4, 8, 16, 32};

// Divergence-free field whose modes 1 <= |k| <= N (k ~ -k identified) all
// add in phase at the origin: u_k = w(|k|) (I - k k^T/|k|^2) e_1.
SpectralField aligned_bump(const Grid& g, double N, double decay) {
  RawVectorField raw(g);
  const int lim = static_cast<int>(std::floor(N));
  for (int kx = -lim; kx <= lim; ++kx) {
    for (int ky = 0; ky <= lim; ++ky) {
      if (ky == 0 && kx <= 0) continue;
      const long k2 = static_cast<long>(kx) * kx + static_cast<long>(ky) * ky;
      if (!spectral::in_ball(k2, N) || !g.representable(kx, ky)) continue;
      raw.set_mode(kx, ky, std::pow(static_cast<double>(k2), -0.5 * decay), 0.0);
    }
  }
  return spectral::leray_project(raw);
}

SpectralField single_mode(const Grid& g, int kx, int ky) {
  RawVectorField raw(g);
  // Direction perpendicular to k keeps the pair divergence-free.
  raw.set_mode(kx, ky, static_cast<double>(-ky), static_cast<double>(kx));
  return spectral::leray_project(raw);
}

SpectralField taylor_green(const Grid& g) {
  // (cos x sin y, -sin x cos y).
  RawVectorField raw(g);
  using spectral::cplx;
  raw.set_mode(1, 1, cplx(0.0, -0.25), cplx(0.0, 0.25));
  raw.set_mode(-1, 1, cplx(0.0, -0.25), cplx(0.0, -0.25));
  return spectral::leray_project(raw);
}

int grid_for_cutoff(int n, int N) {
  int m = std::max(n, 3 * N + 2);
  if (m % 2 != 0) ++m;
  return m;
}

std::string fmt(double v) { return util::format_double(v); }

}  // namespace

std::string CalibrationResult::provenance() const {
  std::string s = "calibrate_constants observed maxima (before safety factor " + fmt(safety) + ")\n";
  s += "ladyzhenskaya = " + fmt(ladyzhenskaya) + "\n";
  s += "agmon = " + fmt(agmon) + "\n";
  s += "sobolev = " + fmt(sobolev) + "\n";
  s += "poincare = " + fmt(poincare) + "\n";
  for (const auto& [N, r] : sobolev_by_N) s += "sobolev N=" + std::to_string(N) + " = " + fmt(r) + "\n";
  s += constants.source;
  return s;
}

CalibrationResult calibrate_constants(int n, int samples, std::uint64_t seed, double safety) {
  if (samples < 1) throw PreconditionError("calibrate_constants: samples must be >= 1");
  if (!(safety >= 1.0)) throw PreconditionError("calibrate_constants: safety must be >= 1");
  const Grid g(n);
  CalibrationResult res;
  res.safety = safety;

  auto interp = [&](const SpectralField& u) {
    const auto nt = spectral::norms(u, 2);
    if (nt.l2 == 0.0) return;
    const double l4 = spectral::lebesgue_norm(u, 4);
    const double linf = spectral::sup_norm(u, kSupOversample);
    res.ladyzhenskaya = std::max(res.ladyzhenskaya, l4 * l4 / (nt.h1 * nt.l2));
    res.agmon = std::max(res.agmon, linf * linf / (nt.hm.at(2) * nt.l2));
    res.poincare = std::max(res.poincare, nt.l2 / nt.h1);
  };

  // Candidate families on the n grid.
  std::uint64_t stream = 0;
  const double R = g.dealias_radius();
  const double slopes[] = {0.0, 1.0, 2.0, 3.0};
  for (int s = 0; s < samples; ++s) {
    RandomFieldSpec spec;
    spec.seed = spectral::derive_seed(seed, stream++);
    spec.slope = slopes[s % 4];
    spec.kmax = 1.0 + (R - 1.0) * static_cast<double>((s / 4) % 8 + 1) / 8.0;
    interp(spectral::random_field(g, spec));
  }
  const int lim = static_cast<int>(std::floor(R));
  for (int kx = 0; kx <= lim; ++kx) {
    for (int ky = 0; ky <= lim; ++ky) {
      if (kx == 0 && ky == 0) continue;
      if (!spectral::in_ball(static_cast<long>(kx) * kx + static_cast<long>(ky) * ky, R)) continue;
      interp(single_mode(g, kx, ky));
    }
  }
  interp(taylor_green(g));
  for (double decay : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (int N = 1; N <= lim; ++N) interp(aligned_bump(g, N, decay));
  }

  // Sobolev scan: P_N fields for each cutoff, on a grid that resolves N.
  for (int N : kSobolevCutoffs) {
    const Grid gN(grid_for_cutoff(n, N));
    const double lnN = std::sqrt(std::log(static_cast<double>(N)));
    double best = 0.0;
    auto sob = [&](const SpectralField& u) {
      const double h1 = spectral::h1_norm(u);
      if (h1 == 0.0) return;
      best = std::max(best, spectral::sup_norm(u, kSupOversample) / (lnN * h1));
    };
    for (int s = 0; s < samples; ++s) {
      RandomFieldSpec spec;
      spec.seed = spectral::derive_seed(seed, stream++);
      spec.slope = slopes[s % 4];
      spec.kmax = N;
      sob(spectral::random_field(gN, spec));
    }
    for (double decay : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) sob(aligned_bump(gN, N, decay));
    sob(single_mode(gN, 1, 0));
    res.sobolev_by_N[N] = best;
    res.sobolev = std::max(res.sobolev, best);
  }

  res.constants.C_L = safety * res.ladyzhenskaya;
  res.constants.C_A = safety * res.agmon;
  res.constants.C_S = safety * res.sobolev;
  res.constants.source = "calibrate_constants n=" + std::to_string(n) +
                         " samples=" + std::to_string(samples) + " seed=" + std::to_string(seed);
  res.constants.validate();
  return res;
}

}  // namespace intwine::diagnostics
