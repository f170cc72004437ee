#include <benchmark/benchmark.h>

#include <cmath>

#include "stabgeo/dependence.hpp"
#include "stabgeo/geometry.hpp"
#include "stabgeo/moments.hpp"
#include "stabgeo/simulate.hpp"

using namespace stabgeo;

namespace {

StableModel discrete_model() {
  return make_discrete(1.5, Kind::Symmetric,
                       {{1, 0}, {0, 1}, {0.6, 0.8}, {0.28, 0.96}}, {1.0, 0.8, 0.5, 0.7});
}

StableModel subgaussian_model() {
  Matrix C(2, 2);
  C(0, 0) = 2.0;
  C(0, 1) = C(1, 0) = 1.0;
  C(1, 1) = 2.0;
  return make_subgaussian(1.5, C);
}

void BM_gauge_discrete(benchmark::State& state) {
  StableModel m = discrete_model();
  Vec u{0.3, -0.9};
  for (auto _ : state) benchmark::DoNotOptimize(gauge(m, u));
}
BENCHMARK(BM_gauge_discrete);

void BM_gauge_elliptical(benchmark::State& state) {
  StableModel m = subgaussian_model();
  Vec u{0.3, -0.9};
  for (auto _ : state) benchmark::DoNotOptimize(gauge(m, u));
}
BENCHMARK(BM_gauge_elliptical);

void BM_support_point(benchmark::State& state) {
  StableModel m = discrete_model();
  Vec u{0.3, -0.9};
  for (auto _ : state) benchmark::DoNotOptimize(support_point(m, u));
}
BENCHMARK(BM_support_point);

void BM_volume(benchmark::State& state) {
  StableModel m = discrete_model();
  SphereRule rule = circle_rule(512);
  for (auto _ : state) benchmark::DoNotOptimize(volume(m, rule).value);
}
BENCHMARK(BM_volume);

void BM_density(benchmark::State& state) {
  StableModel m = subgaussian_model();
  SphereRule rule = circle_rule(512);
  Vec x{0.7, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(density(m, x, rule).value);
}
BENCHMARK(BM_density);

void BM_john_ellipsoid(benchmark::State& state) {
  StableModel m = discrete_model();
  for (auto _ : state) benchmark::DoNotOptimize(john_ellipsoid(m).ellipsoid.m(0, 0));
}
BENCHMARK(BM_john_ellipsoid);

void BM_iF_functional(benchmark::State& state) {
  StableModel m = subgaussian_model();
  for (auto _ : state) benchmark::DoNotOptimize(iF_functional(m, 2048));
}
BENCHMARK(BM_iF_functional);

void BM_sample_vector(benchmark::State& state) {
  StableModel m = discrete_model();
  for (auto _ : state) benchmark::DoNotOptimize(sample_vector(m, 100000, 7u).data[0]);
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_sample_vector);

void BM_sample_subgaussian(benchmark::State& state) {
  Matrix C = Matrix::diag({2.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(sample_subgaussian(C, 1.5, 100000, 7u).data[0]);
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_sample_subgaussian);

void BM_norm_moment(benchmark::State& state) {
  StableModel m = discrete_model();
  SphereRule rule = circle_rule(512);
  for (auto _ : state) benchmark::DoNotOptimize(norm_moment(m, 0.5, rule).value);
}
BENCHMARK(BM_norm_moment);

}  // namespace

BENCHMARK_MAIN();
