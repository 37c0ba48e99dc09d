#include "schottky/bt_tree.hpp"
#include "schottky/word_oracle.hpp"

#include <benchmark/benchmark.h>

using namespace schottky;

namespace {

const Matrix kSanovA{{1, 2}, {0, 1}};
const Matrix kSanovB{{1, 0}, {2, 1}};

std::vector<tree::TreeIsometry> demo_pair() {
  const tree::TreeIsometry g1(Matrix::diagonal({5, Rational(1, 5)}), Prime(5));
  return {g1, g1.conjugated_by(Matrix{{1, 1}, {1, 2}})};
}

void BM_FreenessCheck(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = oracle::freeness_check({kSanovA, kSanovB}, len, 1);
    benchmark::DoNotOptimize(r.words_checked);
  }
  std::uint64_t words = 0;
  for (std::size_t k = 1; k <= len; ++k) words += oracle::reduced_word_count(2, k);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words));
}
BENCHMARK(BM_FreenessCheck)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_DisplacementScan(benchmark::State& state) {
  const auto gens = demo_pair();
  const auto o = tree::TreeVertex::standard(Prime(5));
  for (auto _ : state) {
    auto r = oracle::displacement_scan(gens, static_cast<std::size_t>(state.range(0)), o, 1);
    benchmark::DoNotOptimize(r.min_displacement);
  }
}
BENCHMARK(BM_DisplacementScan)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  const Prime p(5);
  const auto g = demo_pair()[1];
  const auto x = tree::TreeVertex::standard(p);
  const auto y = g.pow(4).apply(x);
  for (auto _ : state) benchmark::DoNotOptimize(tree::distance(x, y));
}
BENCHMARK(BM_Distance);

void BM_Classify(benchmark::State& state) {
  const auto g = demo_pair()[1].pow(3);
  for (auto _ : state) benchmark::DoNotOptimize(tree::classify(g).translation_length);
}
BENCHMARK(BM_Classify);

void BM_Project(benchmark::State& state) {
  const auto pair = demo_pair();
  const auto a = tree::axis(pair[1]);
  const auto x = pair[0].pow(3).apply(tree::TreeVertex::standard(Prime(5)));
  for (auto _ : state) benchmark::DoNotOptimize(tree::project(x, a).coordinate);
}
BENCHMARK(BM_Project);

void BM_SchottkyCheck(benchmark::State& state) {
  const auto gens = demo_pair();
  for (auto _ : state) benchmark::DoNotOptimize(tree::schottky_check(gens).status);
}
BENCHMARK(BM_SchottkyCheck)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
