// Microbenchmarks for the oracle hot paths: per-query costs, materialization
// throughput, and the distance estimator. Run manually; not part of ctest.
//
// Fixtures are cached per size: google-benchmark re-enters each function
// while calibrating, and instance corruption is deliberately simple rather
// than fast, so it must not sit on the measured path.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <utility>

#include "grepair/corrupt.hpp"
#include "grepair/generate.hpp"
#include "grepair/random.hpp"
#include "grepair/recon_connect.hpp"
#include "grepair/recon_diameter.hpp"
#include "grepair/recon_kconn.hpp"
#include "grepair/recon_strong.hpp"
#include "grepair/tolerant.hpp"

using namespace grepair;

namespace {

SparseGraph corrupted_connected(int n, std::int64_t m, std::uint64_t seed) {
  SparseGraph g = generate({GraphKind::Connected, n, m, 2, 3, seed});
  int comps = static_cast<int>(0.05 * static_cast<double>(m)) + 1;
  return corrupt_connectivity(g, comps, seed + 1).graph;
}

const SparseGraph& cached_connected(int n) {
  static std::map<int, SparseGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, corrupted_connected(n, 2 * n, 11)).first;
  return it->second;
}

const SparseGraph& cached_strong(int n) {
  static std::map<int, SparseGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    SparseGraph g = generate(
        {GraphKind::StronglyConnected, n, 5 * static_cast<std::int64_t>(n), 2, 3, 31});
    it = cache.emplace(n, corrupt_strong(g, 5, 5, 32).graph).first;
  }
  return it->second;
}

const SparseGraph& cached_lowdiam(int n) {
  static std::map<int, SparseGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    SparseGraph g = generate(
        {GraphKind::LowDiameter, n, 3 * static_cast<std::int64_t>(n), 2, 3, 51});
    it = cache.emplace(n, corrupt_diameter(g, 8, 52).graph).first;
  }
  return it->second;
}

void BM_ConnectedEdgeQuery(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparseGraph& cut = cached_connected(n);
  ConnConfig cfg;
  cfg.epsilon = 0.05;
  cfg.alpha = 1.0;
  cfg.delta = 0.2;
  cfg.seed = 12;
  ConnectedOracle oracle(cut, cfg);
  Rng rng(13);
  for (auto _ : state) {
    Vertex u = 1 + static_cast<Vertex>(rng.below(n));
    Vertex v = 1 + static_cast<Vertex>(rng.below(n));
    if (u == v) v = (v % n) + 1;
    benchmark::DoNotOptimize(oracle.edge(std::min(u, v), std::max(u, v)));
  }
  state.counters["probes/query"] =
      static_cast<double>(oracle.handle().query_count()) /
      static_cast<double>(state.iterations());
}
BENCHMARK(BM_ConnectedEdgeQuery)->Arg(2000)->Arg(10000);

void BM_ConnectedMaterialize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparseGraph& cut = cached_connected(n);
  ConnConfig cfg;
  cfg.epsilon = 0.05;
  cfg.alpha = 1.0;
  cfg.delta = 0.2;
  std::uint64_t seed = 22;
  for (auto _ : state) {
    cfg.seed = ++seed;
    ConnectedOracle oracle(cut, cfg);
    ConnectedNeighborOracle nbr(oracle);
    benchmark::DoNotOptimize(materialize_from_neighbors(nbr, n, 2 * n));
  }
}
BENCHMARK(BM_ConnectedMaterialize)->Arg(1000)->Arg(4000);

void BM_StrongArcQuery(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparseGraph& cut = cached_strong(n);
  StrongConfig cfg;
  cfg.epsilon = 0.05;
  cfg.alpha = 1.0;
  cfg.delta = 0.2;
  cfg.seed = 33;
  StronglyConnectedOracle oracle(cut, cfg);
  Rng rng(34);
  for (auto _ : state) {
    Vertex u = 1 + static_cast<Vertex>(rng.below(n));
    Vertex v = 1 + static_cast<Vertex>(rng.below(n));
    if (u == v) v = (v % n) + 1;
    benchmark::DoNotOptimize(oracle.arc(u, v));
  }
  state.counters["probes/query"] =
      static_cast<double>(oracle.handle().query_count()) /
      static_cast<double>(state.iterations());
}
BENCHMARK(BM_StrongArcQuery)->Arg(2000)->Arg(10000);

void BM_ExtremeSetSearch(benchmark::State& state) {
  static const SparseGraph cut = [] {
    SparseGraph g = generate({GraphKind::KConnected, 400, 1200, 2, 3, 41});
    return corrupt_kconn(g, 2, 2, 42).graph;
  }();
  KConnConfig cfg;
  cfg.epsilon = 0.05;
  cfg.alpha = 165.0;
  cfg.delta = 0.1;
  cfg.gamma = 0.1;
  cfg.super_fraction = 0.1;
  cfg.k = 2;
  cfg.seed = 43;
  KConnStack stack(cut, cfg);
  stack.materialize(1);
  Rng rng(44);
  std::int64_t iter = 0;
  for (auto _ : state) {
    Vertex v = static_cast<Vertex>(stack.derived().super_count + 1 +
                                   rng.below(400 - stack.derived().super_count));
    benchmark::DoNotOptimize(stack.search_once(2, v, ++iter));
  }
}
BENCHMARK(BM_ExtremeSetSearch);

void BM_DiameterEdgeQuery(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparseGraph& cut = cached_lowdiam(n);
  DiamConfig cfg;
  cfg.epsilon = 0.1;
  cfg.super_fraction = 0.05;
  cfg.diameter_target = 3;
  cfg.seed = 53;
  SmallDiamOracle oracle(cut, cfg);
  Rng rng(54);
  for (auto _ : state) {
    Vertex u = 1 + static_cast<Vertex>(rng.below(n));
    Vertex v = 1 + static_cast<Vertex>(rng.below(n));
    if (u == v) v = (v % n) + 1;
    benchmark::DoNotOptimize(oracle.edge(std::min(u, v), std::max(u, v)));
  }
}
BENCHMARK(BM_DiameterEdgeQuery)->Arg(500)->Arg(2000);

void BM_DistanceEstimator(benchmark::State& state) {
  const SparseGraph& cut = cached_connected(2000);
  ConnConfig cfg;
  cfg.epsilon = 0.05;
  cfg.alpha = 1.0;
  cfg.delta = 0.2;
  cfg.seed = 62;
  ConnectedOracle oracle(cut, cfg);
  ReconSurface surface = surface_for(oracle);
  ToleranceParams params;
  params.beta = 0.02;
  std::uint64_t seed = 63;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_reconstruction_distance(surface, params, ++seed));
}
BENCHMARK(BM_DistanceEstimator);

void BM_GenerateAndCorrupt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 71;
  for (auto _ : state)
    benchmark::DoNotOptimize(corrupted_connected(n, 2 * n, ++seed));
}
BENCHMARK(BM_GenerateAndCorrupt)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
