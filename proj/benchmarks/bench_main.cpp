#include <benchmark/benchmark.h>

#include <random>

#include "berkline/schottky.hpp"
#include "berkline/shift_ops.hpp"
#include "berkline/spectral.hpp"

namespace {

using berkline::Rational;
using berkline::line::BerkPoint;
using berkline::padic::PrimeContext;

std::vector<BerkPoint> random_points(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12), ex(-4, 4);
  std::vector<BerkPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    out.emplace_back(c, Rational(ex(rng)));
  }
  return out;
}

void BM_BigMetric(benchmark::State& state) {
  PrimeContext ctx(3);
  auto pts = random_points(256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(berkline::line::big_metric(ctx, pts[i % 256], pts[(i * 7 + 3) % 256]));
    ++i;
  }
}
BENCHMARK(BM_BigMetric);

void BM_DiracSpectrum(benchmark::State& state) {
  PrimeContext ctx(2);
  std::vector<berkline::spectral::Disk> disks;
  for (long k = 0; k < state.range(0); ++k) disks.push_back({Rational(k), Rational(1 + k % 4)});
  auto tree = berkline::spectral::build_graph_of_discs(ctx, disks);
  auto st = berkline::spectral::assemble_triple(tree);
  for (auto _ : state) benchmark::DoNotOptimize(berkline::spectral::spectrum(st));
  state.counters["dim"] = static_cast<double>(st.dim());
}
BENCHMARK(BM_DiracSpectrum)->Arg(4)->Arg(8)->Arg(12);

void BM_SubshiftRelations(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  berkline::shift::TruncatedBasis tb(berkline::dendrite::default_comb(n), n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(berkline::shift::verify_relations(tb));
  state.counters["basis"] = static_cast<double>(tb.size());
}
BENCHMARK(BM_SubshiftRelations)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OrbitEnumerate(benchmark::State& state) {
  using berkline::group::MoebiusMap;
  berkline::group::SchottkyGroup g(PrimeContext(3), {MoebiusMap(3, 0, 0, 1), MoebiusMap(5, -4, 2, -1)});
  auto L = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(berkline::group::orbit_enumerate(g, L));
}
BENCHMARK(BM_OrbitEnumerate)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
