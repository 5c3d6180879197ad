// Serial reference vs OpenMP kernels. Set OMP_NUM_THREADS to compare.
#include <benchmark/benchmark.h>

#include <vector>

#include "seqgrow/batch.hpp"
#include "seqgrow/kernels.hpp"
#include "seqgrow/rng.hpp"
#include "seqgrow/synth.hpp"

namespace {

using namespace seqgrow;

AdjacencyMatrix random_dag(std::size_t n, double density, std::uint64_t seed) {
  Rng rng(seed);
  AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(density)) a.set(i, j);
    }
  }
  return a;
}

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {rng.uniform(-48.0, 48.0), rng.uniform(-30.0, 30.0)};
  return pts;
}

std::vector<LaneGraph> corpus(std::size_t count) {
  std::vector<LaneGraph> out;
  SynthParams p;
  p.node_budget = 60;
  p.grid_pitch = 8.0;
  p.p_loop = 0.3;
  p.p_bidirectional = 0.1;
  for (std::size_t i = 0; i < count; ++i) {
    p.seed = corpus_seed(7, i);
    out.push_back(generate(p));
  }
  return out;
}

template <bool Parallel>
void BM_TransitiveClosure(benchmark::State& state) {
  const auto a = random_dag(static_cast<std::size_t>(state.range(0)), 0.02, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::transitive_closure(a) : kernels::serial::transitive_closure(a));
  }
}
BENCHMARK(BM_TransitiveClosure<false>)->Arg(150)->Arg(600);
BENCHMARK(BM_TransitiveClosure<true>)->Arg(150)->Arg(600);

template <bool Parallel>
void BM_NearestDistances(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = random_points(n, 2);
  const auto r = random_points(n, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::nearest_distances(q, r) : kernels::serial::nearest_distances(q, r));
  }
}
BENCHMARK(BM_NearestDistances<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_NearestDistances<true>)->Arg(1024)->Arg(4096);

template <bool Parallel>
void BM_RoundTripCorpus(benchmark::State& state) {
  const auto graphs = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? batch::roundtrip_corpus(graphs, OrderingStrategy::kDfs)
                                      : batch::serial::roundtrip_corpus(graphs, OrderingStrategy::kDfs));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RoundTripCorpus<false>)->Arg(256);
BENCHMARK(BM_RoundTripCorpus<true>)->Arg(256);

template <bool Parallel>
void BM_FuzzDecode(benchmark::State& state) {
  const auto count = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? batch::fuzz_decode(count, 11) : batch::serial::fuzz_decode(count, 11));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FuzzDecode<false>)->Arg(20000);
BENCHMARK(BM_FuzzDecode<true>)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
