#include "intwine/spectral/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "intwine/errors.hpp"

namespace intwine::spectral {

namespace {

// FFTW planning is not thread-safe; executing an existing plan on fresh
// arrays (fftw_execute_dft_*) is. Plans are created once per size under a
// lock and shared; each thread owns its own aligned work buffers.
struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (ptr == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

struct Workspace {
  explicit Workspace(int m)
      : real(sizeof(double) * static_cast<std::size_t>(m) * m),
        spec(sizeof(fftw_complex) * static_cast<std::size_t>(m) * (m / 2 + 1)) {}
  double* r() { return static_cast<double*>(real.ptr); }
  fftw_complex* c() { return static_cast<fftw_complex*>(spec.ptr); }
  FftwBuffer real;
  FftwBuffer spec;
};

Workspace& workspace(int m) {
  thread_local std::map<int, std::unique_ptr<Workspace>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, std::make_unique<Workspace>(m)).first;
  return *it->second;
}

const Plans& plans(int m) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(plan_mutex());
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  Workspace tmp(m);
  Plans p;
  p.r2c = fftw_plan_dft_r2c_2d(m, m, tmp.r(), tmp.c(), FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r_2d(m, m, tmp.c(), tmp.r(), FFTW_ESTIMATE);
  if (p.r2c == nullptr || p.c2r == nullptr) throw Error("FFTW planning failed");
  return cache.emplace(m, p).first->second;
}

}  // namespace

void to_physical(const Grid& grid, std::span<const cplx> coeffs, int m, std::vector<double>& out) {
  const int n = grid.n();
  if (m < n || m % 2 != 0) throw PreconditionError("physical grid must be even and >= n");
  const int mky = m / 2 + 1;
  Workspace& ws = workspace(m);
  fftw_complex* c = ws.c();
  std::memset(c, 0, sizeof(fftw_complex) * static_cast<std::size_t>(m) * mky);
  for (int i = 0; i < n; ++i) {
    const int kx = grid.kx(i);
    if (2 * kx == n) continue;  // Nyquist row is never populated
    const int row = kx >= 0 ? kx : kx + m;
    for (int j = 0; j < grid.nky(); ++j) {
      if (2 * j == n) continue;
      const cplx v = coeffs[grid.index(i, j)];
      c[static_cast<std::size_t>(row) * mky + j][0] = v.real();
      c[static_cast<std::size_t>(row) * mky + j][1] = v.imag();
    }
  }
  fftw_execute_dft_c2r(plans(m).c2r, c, ws.r());
  out.assign(ws.r(), ws.r() + static_cast<std::size_t>(m) * m);
}

void to_spectral(const Grid& grid, std::span<const double> samples, std::vector<cplx>& out) {
  const int n = grid.n();
  Workspace& ws = workspace(n);
  std::memcpy(ws.r(), samples.data(), sizeof(double) * grid.physical_size());
  fftw_execute_dft_r2c(plans(n).r2c, ws.r(), ws.c());
  const double scale = 1.0 / static_cast<double>(grid.physical_size());
  out.resize(grid.spectral_size());
  const fftw_complex* c = ws.c();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = cplx(c[k][0] * scale, c[k][1] * scale);
  // Self-conjugate columns: enforce c(-kx) = conj(c(kx)) exactly.
  for (int j : {0, n / 2}) {
    for (int i = 0; i <= n / 2; ++i) {
      const int ic = (n - i) % n;
      if (ic < i) continue;
      const std::size_t a = grid.index(i, j);
      const std::size_t b = grid.index(ic, j);
      const cplx avg = 0.5 * (out[a] + std::conj(out[b]));
      out[a] = avg;
      out[b] = std::conj(avg);
    }
  }
}

}  // namespace intwine::spectral
