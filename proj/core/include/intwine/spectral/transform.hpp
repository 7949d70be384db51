#pragma once

#include <span>
#include <vector>

#include "intwine/spectral/grid.hpp"

namespace intwine::spectral {

/// Evaluates sum_k c_k exp(i k.x) on an m x m physical grid (m >= grid.n(),
/// even). Coefficients follow the half-spectrum layout of `grid`; modes are
/// zero-padded when m > n. Output is row-major over (x, y).
void to_physical(const Grid& grid, std::span<const cplx> coeffs, int m,
                 std::vector<double>& out);

/// Forward transform of n x n samples to normalized coefficients
/// (c_k = n^-2 sum_x f(x) exp(-i k.x)), with the ky = 0 and ky = n/2
/// columns symmetrized so the half spectrum is exactly Hermitian.
void to_spectral(const Grid& grid, std::span<const double> samples, std::vector<cplx>& out);

}  // namespace intwine::spectral
