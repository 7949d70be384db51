#pragma once

#include <map>

#include "intwine/spectral/field.hpp"

namespace intwine::spectral {

/// Per-mode Leray projector (I - k k^T / |k|^2); zeroes k = 0.
SpectralField leray_project(const RawVectorField& raw);
/// A SpectralField is already in the range of the projector; returns a copy.
inline SpectralField leray_project(const SpectralField& u) { return u; }

/// Multiplies the coefficient at k by |k|^half_power (A^{half_power/2} u).
/// Negative powers act on k != 0 only; half_power >= -2.
SpectralField stokes_apply(const SpectralField& u, int half_power);

/// P_K: keep |k| <= K (inclusive Euclidean ball).
SpectralField project_low(const SpectralField& u, double K);
/// Q_K = I - P_K.
SpectralField project_high(const SpectralField& u, double K);

/// (u, v) = (2 pi)^2 sum_k Re(u_k . conj(v_k)) over the full spectrum.
double inner(const SpectralField& u, const SpectralField& v);

/// ||u||_m = (2 pi) (sum_k |k|^{2m} |u_k|^2)^{1/2}.
double sobolev_norm(const SpectralField& u, int m);
inline double l2_norm(const SpectralField& u) { return sobolev_norm(u, 0); }
inline double h1_norm(const SpectralField& u) { return sobolev_norm(u, 1); }

struct NormTriple {
  double l2 = 0.0;
  double h1 = 0.0;
  std::map<int, double> hm;
};

/// l2, h1 and ||u||_m for 0 <= m <= max_m in one pass (max_m >= 1).
NormTriple norms(const SpectralField& u, int max_m);

/// True when every coefficient outside the dealias radius is exactly zero.
bool dealias_supported(const SpectralField& u);
/// Throws AliasingViolation unless dealias_supported(u).
void require_dealias_supported(const SpectralField& u, const char* what);

/// Two-thirds truncation: zeroes coefficients outside the dealias radius.
SpectralField dealias(const SpectralField& u);

/// B(u, v) = P((u . grad) v), evaluated pseudospectrally in gradient form,
/// truncated to the dealias radius. Exact for dealias-supported inputs.
SpectralField bilinear_B(const SpectralField& u, const SpectralField& v);

/// b(u, v, w) = (B(u, v), w).
double trilinear_b(const SpectralField& u, const SpectralField& v, const SpectralField& w);

/// DB(u) v = B(u, v) + B(v, u).
SpectralField frechet_DB(const SpectralField& u, const SpectralField& v);

/// |u|_{L^p} for p = 2 or 4, computed by exact quadrature on a 2x grid.
double lebesgue_norm(const SpectralField& u, int p);
/// max_x |u(x)| sampled on an (oversample * n)^2 grid.
double sup_norm(const SpectralField& u, int oversample = 4);

/// Cheap upper bound on sup |u|: sum_k |u_k| over the full spectrum.
double sup_norm_bound(const SpectralField& u);

}  // namespace intwine::spectral
