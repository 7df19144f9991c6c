#include <benchmark/benchmark.h>

#include <cmath>

#include "innerlab/boundary_maps.hpp"
#include "innerlab/certify.hpp"
#include "innerlab/clark.hpp"
#include "innerlab/counting.hpp"
#include "innerlab/fixtures.hpp"
#include "innerlab/transfer.hpp"

using namespace innerlab;

static void BM_BoundaryValueBlaschke(benchmark::State& state) {
  const auto f = fixtures::blaschke_random(static_cast<int>(state.range(0)), 1);
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.boundary_value(t));
    t += 1e-3;
  }
}
BENCHMARK(BM_BoundaryValueBlaschke)->Arg(4)->Arg(16)->Arg(64);

static void BM_ClarkMeasureBlaschke(benchmark::State& state) {
  const auto f = fixtures::blaschke_random(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(clark_measure(f, std::polar(1.0, 0.7)));
}
BENCHMARK(BM_ClarkMeasureBlaschke)->Arg(4)->Arg(16)->Arg(64);

static void BM_ClarkMeasureSingleAtom(benchmark::State& state) {
  const auto f = fixtures::hmr_phi1(kPi).normalize_to_zero();
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clark_measure(f, std::polar(1.0, 0.7), tol));
}
BENCHMARK(BM_ClarkMeasureSingleAtom)->Arg(4)->Arg(6);

static void BM_InteriorPreimages(benchmark::State& state) {
  const auto f = fixtures::blaschke_random(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(interior_preimages(f, Complex(0.2, -0.1)));
}
BENCHMARK(BM_InteriorPreimages)->Arg(4)->Arg(16);

static void BM_CertifyHmr(benchmark::State& state) {
  const auto p = fixtures::hmr_pair(1.0, kPi * kPi);
  for (auto _ : state) benchmark::DoNotOptimize(certify_pair(p.theta, p.phi, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CertifyHmr)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_UlamMatrix(benchmark::State& state) {
  const auto p = fixtures::normalized_hmr_pair(kTwoPi, kTwoPi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ulam_matrix(p.theta, p.phi, static_cast<std::size_t>(state.range(0)), 64, 1e-6, 1));
  }
}
BENCHMARK(BM_UlamMatrix)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_ApplyTransferCubic(benchmark::State& state) {
  const auto p = fixtures::asymmetric_cubic_pair();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = BoundaryFunction::sample(Arc::upper_half(), n, [](double t) { return 1.0 + std::sin(t); });
  TransferOptions opt;
  opt.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(apply_transfer(p.theta, p.phi, f, opt));
}
BENCHMARK(BM_ApplyTransferCubic)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
