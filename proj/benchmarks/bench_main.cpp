#include <benchmark/benchmark.h>

#include <memory>

#include "intwine/dynamics/forcing.hpp"
#include "intwine/dynamics/integrator.hpp"
#include "intwine/spectral/operators.hpp"
#include "intwine/spectral/random.hpp"

using namespace intwine;

namespace {

spectral::SpectralField field(const spectral::Grid& g, std::uint64_t seed) {
  spectral::RandomFieldSpec s;
  s.seed = seed;
  s.l2 = 1.0;
  return spectral::random_field(g, s);
}

void BM_BilinearB(benchmark::State& st) {
  const spectral::Grid g(static_cast<int>(st.range(0)));
  const auto u = field(g, 1), v = field(g, 2);
  for (auto _ : st) benchmark::DoNotOptimize(spectral::bilinear_B(u, v));
}
BENCHMARK(BM_BilinearB)->Arg(32)->Arg(64)->Arg(128);

void BM_Step(benchmark::State& st) {
  const spectral::Grid g(static_cast<int>(st.range(0)));
  const bool dr = st.range(1) != 0;
  const auto f = std::make_shared<const dynamics::Forcing>(
      dynamics::Forcing::steady(dynamics::kolmogorov_field(g, 0.05, 2)));
  const auto m = dr ? dynamics::IntertwiningMatrix::dr_mut(0.5, 0.5) : dynamics::IntertwiningMatrix::nudge_mut(1.0, 1.0);
  dynamics::IntertwinedState s(0.0, 0.05, g.n() / 4.0, m, field(g, 3), field(g, 4), f, f);
  dynamics::StepperOptions o;
  o.dt = 1e-3;
  const dynamics::Stepper stp(o);
  for (auto _ : st) stp.step(s);
  st.SetLabel(dr ? "direct replacement" : "nudging");
}
BENCHMARK(BM_Step)->Args({64, 0})->Args({64, 1})->Args({128, 0});

}  // namespace

BENCHMARK_MAIN();
