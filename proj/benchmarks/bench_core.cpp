#include <benchmark/benchmark.h>

#include <cmath>

#include "heis/bergman.hpp"
#include "heis/twisted.hpp"
#include "heis/uncertainty.hpp"
#include "heis/weyl.hpp"

using namespace heis;

namespace {

SampledFunction gaussian(int points, double lambda) {
  return sample(Grid(2, 8.0, points), [](std::span<const double> x) {
    return Complex(std::exp(-0.5 * ((x[0] - 0.3) * (x[0] - 0.3) + x[1] * x[1])));
  }, 1, lambda);
}

void BM_PiReal(benchmark::State& state) {
  const BasisSpec b(1, 1.0, static_cast<int>(state.range(0)));
  const double x[1] = {0.7}, u[1] = {-0.4};
  for (auto _ : state) benchmark::DoNotOptimize(pi_real(x, u, b));
}
BENCHMARK(BM_PiReal)->Arg(16)->Arg(48)->Arg(96);

void BM_PiComplexN2(benchmark::State& state) {
  const BasisSpec b(2, 1.0, static_cast<int>(state.range(0)));
  const Complex z[2] = {Complex(0.3, 0.2), Complex(-0.1, 0.4)}, w[2] = {Complex(0.5, -0.1), Complex(0.2, 0.3)};
  for (auto _ : state) benchmark::DoNotOptimize(pi_complex(z, w, b));
}
BENCHMARK(BM_PiComplexN2)->Arg(8)->Arg(16);

void BM_WeylTransform(benchmark::State& state) {
  const auto g = gaussian(static_cast<int>(state.range(0)), 1.0);
  const BasisSpec b(1, 1.0, 48);
  for (auto _ : state) benchmark::DoNotOptimize(weyl_transform(g, b));
}
BENCHMARK(BM_WeylTransform)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

void BM_TwistedConv(benchmark::State& state) {
  const auto f = gaussian(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(twisted_conv(f, f, 1.0));
}
BENCHMARK(BM_TwistedConv)->Arg(33)->Arg(49)->Arg(65)->Unit(benchmark::kMillisecond);

void BM_TraceNorm(benchmark::State& state) {
  const BasisSpec b(1, 1.0, static_cast<int>(state.range(0)));
  const double x[1] = {0.7}, u[1] = {-0.4};
  const auto T = pi_real(x, u, b) * hermite_semigroup(0.5, b);
  for (auto _ : state) benchmark::DoNotOptimize(schatten_norm(T, Schatten::One));
}
BENCHMARK(BM_TraceNorm)->Arg(48)->Arg(96);

void BM_TraceNormWeight(benchmark::State& state) {
  const auto fhat = hermite_semigroup(1.0, BasisSpec(1, 1.0, 32));
  for (auto _ : state) benchmark::DoNotOptimize(TraceNormWeight(fhat, 3.0, 0.25));
}
BENCHMARK(BM_TraceNormWeight)->Unit(benchmark::kMillisecond);

void BM_HeatKernelSeries(benchmark::State& state) {
  const KernelParams p(0.5, 1.0, 1);
  const Complex z[2] = {Complex(0.3, 0.4), Complex(-0.6, 0.2)};
  for (auto _ : state) benchmark::DoNotOptimize(heat_kernel_series(p, z, 60));
}
BENCHMARK(BM_HeatKernelSeries);

}  // namespace

BENCHMARK_MAIN();
