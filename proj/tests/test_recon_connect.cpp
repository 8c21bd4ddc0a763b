#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "doctest.h"
#include "grepair/corrupt.hpp"
#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/generate.hpp"
#include "grepair/graph.hpp"
#include "grepair/oracle.hpp"
#include "grepair/recon_connect.hpp"
#include "helpers.hpp"

using namespace grepair;
using namespace grepair::testutil;

namespace {

// Truncated BFS reimplemented directly from the contract: FIFO order,
// neighbors ascending, stop at cap distinct vertices, cut mid-level.
std::vector<Vertex> reference_ball(const SparseGraph& g, Vertex w, int cap) {
  std::vector<Vertex> ball{w};
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  seen[static_cast<std::size_t>(w)] = 1;
  std::queue<Vertex> q;
  q.push(w);
  while (!q.empty() && static_cast<int>(ball.size()) < cap) {
    Vertex u = q.front();
    q.pop();
    for (Vertex v : g.neighbors(u)) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      ball.push_back(v);
      q.push(v);
      if (static_cast<int>(ball.size()) == cap) break;
    }
  }
  return ball;
}

bool reference_leader(const SparseGraph& g, const RandomSource& ranks, Vertex w, int cap) {
  RankPair mine = ranks.rank(w);
  for (Vertex v : reference_ball(g, w, cap))
    if (ranks.rank(v) < mine) return false;
  return true;
}

}  // namespace

TEST_CASE("ball cap derivation enforces its precondition") {
  ConnConfig cfg;
  cfg.epsilon = 0.05;
  cfg.alpha = 1.0;
  cfg.delta = 0.2;
  CHECK(derive_ball_cap(cfg, 2000) == 106);  // ceil(2000 / 19)
  CHECK_THROWS_AS(derive_ball_cap(cfg, 80), ParameterError);  // 0.01*80 < 1
  ConnConfig bad = cfg;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(derive_ball_cap(bad, 2000), ParameterError);
}

TEST_CASE("existing edges are kept and self-queries rejected") {
  SparseGraph g = cycle(12, 24);
  ConnConfig cfg;
  cfg.epsilon = 0.5;
  cfg.alpha = 1.0;
  cfg.delta = 0.5;
  ConnectedOracle oracle(g, cfg);
  for (Vertex v = 1; v < 12; ++v) CHECK(oracle.edge(v, v + 1) == 1);
  CHECK(oracle.edge(12, 1) == 1);
  CHECK_THROWS_AS(oracle.edge(3, 3), QueryViolation);
  CHECK_THROWS_AS(oracle.edge(0, 1), QueryViolation);
}

TEST_CASE("two disjoint triangles: only the minimum-rank vertex links to the anchor") {
  SparseGraph g = undirected(6, 6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
  for (std::uint64_t seed : {1ull, 7ull, 19ull, 101ull}) {
    ConnConfig cfg;
    cfg.epsilon = 0.5;
    cfg.alpha = 2.0;
    cfg.delta = 0.5;
    cfg.seed = seed;
    ConnectedOracle oracle(g, cfg);
    REQUIRE(oracle.ball_cap() == 3);

    RandomSource ranks(seed, Stream::VertexRank);
    Vertex best = 4;
    for (Vertex v : {5, 6})
      if (ranks.rank(v) < ranks.rank(best)) best = v;
    for (Vertex w : {4, 5, 6}) {
      CHECK(oracle.edge(w, 1) == (w == best ? 1 : 0));
      CHECK(oracle.edge(1, w) == oracle.edge(w, 1));
    }
  }
}

TEST_CASE("anchor answers match a direct leader simulation on one big component") {
  SparseGraph g = path(6, 6);  // component size 6 = 2K
  ConnConfig cfg;
  cfg.epsilon = 0.5;
  cfg.alpha = 2.0;
  cfg.delta = 0.5;
  cfg.seed = 77;
  ConnectedOracle oracle(g, cfg);
  REQUIRE(oracle.ball_cap() == 3);

  RandomSource ranks(77, Stream::VertexRank);
  for (Vertex w = 2; w <= 6; ++w) {
    int expected = g.has_edge(w, 1) ? 1 : (reference_leader(g, ranks, w, 3) ? 1 : 0);
    CHECK(oracle.edge(w, 1) == expected);
  }
}

TEST_CASE("every edge query stays within the probe budget") {
  SparseGraph g = generate({GraphKind::Connected, 80, 160, 2, 3, 5});
  Corruption cut = corrupt_connectivity(g, 9, 11);
  ConnConfig cfg;
  cfg.epsilon = 0.1;
  cfg.alpha = 1.0;
  cfg.delta = 0.3;
  cfg.seed = 3;
  ConnectedOracle oracle(cut.graph, cfg);
  const std::int64_t budget = oracle.probe_budget();
  CHECK(budget == 2 * oracle.ball_cap() + 2);
  for (Vertex u = 1; u <= 80; ++u)
    for (Vertex v = u + 1; v <= 80; ++v) {
      oracle.handle().reset_count();
      oracle.edge(u, v);
      CHECK(oracle.handle().query_count() <= budget);
    }
}

TEST_CASE("corrected graph is a connected symmetric supergraph for every seed") {
  Rng mix(404);
  for (int instance = 0; instance < 20; ++instance) {
    SparseGraph g = generate({GraphKind::Connected, 60, 120, 2, 3, mix.next()});
    int comps = 2 + static_cast<int>(mix.below(10));
    Corruption cut = corrupt_connectivity(g, comps, mix.next());
    for (int s = 0; s < 50; ++s) {
      ConnConfig cfg;
      cfg.epsilon = 0.1;
      cfg.alpha = 1.0;
      cfg.delta = 0.25;
      cfg.seed = mix.next();
      ConnectedOracle oracle(cut.graph, cfg);
      ConnectedNeighborOracle nbr(oracle);
      SparseGraph fixed = materialize_from_neighbors(nbr, 60, 120);
      CHECK(is_connected(fixed));
      for (const auto& [u, v] : cut.graph.edges()) CHECK(fixed.has_edge(u, v));
    }
  }
}

TEST_CASE("added edges stay within the closeness bound for most seeds") {
  SparseGraph g = generate({GraphKind::Connected, 200, 400, 2, 3, 12});
  const double eps = 0.05;
  const double alpha = 1.0;
  const double delta = 0.2;
  const int components = static_cast<int>(eps * 400) + 1;  // exactly eps-close
  Corruption cut = corrupt_connectivity(g, components, 9);

  int within = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    ConnConfig cfg;
    cfg.epsilon = eps;
    cfg.alpha = alpha;
    cfg.delta = delta;
    cfg.seed = 1000 + static_cast<std::uint64_t>(s);
    ConnectedOracle oracle(cut.graph, cfg);
    ConnectedNeighborOracle nbr(oracle);
    SparseGraph fixed = materialize_from_neighbors(nbr, 200, 400);
    std::int64_t added = fixed.edge_count() - cut.graph.edge_count();
    if (static_cast<double>(added) <= (1.0 + alpha) * eps * 400) ++within;
  }
  double sigma = std::sqrt(seeds * delta * (1.0 - delta));
  CHECK(within >= static_cast<int>(seeds * (1.0 - delta) - 3.0 * sigma));
}

TEST_CASE("super-node chain is present regardless of the input") {
  SparseGraph g = undirected(40, 40, {{17, 23}, {5, 31}});
  ConnConfig cfg;
  cfg.epsilon = 0.5;
  cfg.alpha = 1.0;
  cfg.delta = 0.5;
  cfg.super_fraction = 0.2;
  ModConnectedOracle oracle(g, cfg);
  REQUIRE(oracle.super_count() == 8);
  for (Vertex i = 1; i < 8; ++i) CHECK(oracle.edge(i, i + 1) == 1);
  // two super endpoints resolve by chain membership only
  CHECK(oracle.edge(1, 3) == 0);
  CHECK(oracle.edge(2, 7) == 0);
}

TEST_CASE("non-super vertices can only gain their own bucket super-node") {
  SparseGraph g = generate({GraphKind::Connected, 50, 100, 2, 3, 8});
  ConnConfig cfg;
  cfg.epsilon = 0.2;
  cfg.alpha = 1.0;
  cfg.delta = 0.3;
  cfg.super_fraction = 0.2;
  cfg.seed = 21;
  ModConnectedOracle oracle(g, cfg);
  const int n0 = oracle.super_count();
  for (Vertex x = n0 + 1; x <= 50; ++x) {
    Vertex mine = oracle.bucket_super(x);
    for (Vertex w = 1; w <= n0; ++w) {
      if (w == mine || g.has_edge(x, w)) continue;
      CHECK(oracle.edge(x, w) == 0);
    }
  }
}

TEST_CASE("bucket inversion lists exactly the vertices hashing to a super-node") {
  SparseGraph g = generate({GraphKind::Connected, 61, 122, 2, 3, 31});
  ConnConfig cfg;
  cfg.epsilon = 0.2;
  cfg.alpha = 1.0;
  cfg.delta = 0.3;
  cfg.super_fraction = 0.13;
  ModConnectedOracle oracle(g, cfg);
  const int n0 = oracle.super_count();
  for (Vertex w = 1; w <= n0; ++w) {
    std::vector<Vertex> members = oracle.bucket_members(w);
    CHECK(static_cast<double>(members.size()) <= std::ceil(1.0 / 0.13) + 1.0);
    CHECK(std::is_sorted(members.begin(), members.end()));
    for (Vertex x = n0 + 1; x <= 61; ++x) {
      bool listed = std::find(members.begin(), members.end(), x) != members.end();
      CHECK(listed == (oracle.bucket_super(x) == w));
    }
  }
}

TEST_CASE("multi-super-node additions respect the component-count bound") {
  const int n = 120;
  const std::int64_t m = 240;
  SparseGraph g = generate({GraphKind::Connected, n, m, 2, 3, 77});
  const int j = 7;
  Corruption cut = corrupt_connectivity(g, j, 13);
  const double delta = 0.25;
  const double c = 0.1;

  int within = 0;
  const int seeds = 200;
  int n0 = 0, cap = 0;
  for (int s = 0; s < seeds; ++s) {
    ConnConfig cfg;
    cfg.epsilon = 0.1;
    cfg.alpha = 1.0;
    cfg.delta = delta;
    cfg.super_fraction = c;
    cfg.seed = 5000 + static_cast<std::uint64_t>(s);
    ModConnectedOracle oracle(cut.graph, cfg);
    n0 = oracle.super_count();
    cap = oracle.ball_cap();
    CorrectedNeighborOracle nbr(oracle, n);
    SparseGraph fixed = materialize_from_neighbors(nbr, n, m);
    CHECK(is_connected(fixed));
    double added = static_cast<double>(fixed.edge_count() - cut.graph.edge_count());
    double bound = j + (n - n0) / (static_cast<double>(cap) * delta) + (n0 - 1);
    if (added <= bound) ++within;
  }
  double sigma = std::sqrt(seeds * delta * (1.0 - delta));
  CHECK(within >= static_cast<int>(seeds * (1.0 - delta) - 3.0 * sigma));
}

TEST_CASE("corrected degrees grow as the contract promises") {
  SparseGraph g = generate({GraphKind::Connected, 90, 180, 2, 3, 55});
  Corruption cut = corrupt_connectivity(g, 6, 2);
  ConnConfig cfg;
  cfg.epsilon = 0.1;
  cfg.alpha = 1.0;
  cfg.delta = 0.25;
  cfg.super_fraction = 0.1;
  cfg.seed = 9;
  ModConnectedOracle oracle(cut.graph, cfg);
  const int n0 = oracle.super_count();
  CorrectedNeighborOracle nbr(oracle, 90);
  for (Vertex v = 1; v <= 90; ++v) {
    int base = static_cast<int>(cut.graph.neighbors(v).size());
    int grown = nbr.degree(v);
    if (v > n0) {
      CHECK((grown == base || grown == base + 1));
    } else {
      CHECK(grown <= base + static_cast<int>(std::ceil(1.0 / 0.1)) + 2);
    }
  }
  CHECK_THROWS_AS(nbr.neighbor(5, nbr.degree(5) + 1), QueryViolation);
}

TEST_CASE("edge-oracle and neighbor-oracle materializations agree") {
  SparseGraph g = generate({GraphKind::Connected, 70, 140, 2, 3, 91});
  Corruption cut = corrupt_connectivity(g, 5, 4);

  ConnConfig cfg;
  cfg.epsilon = 0.1;
  cfg.alpha = 1.0;
  cfg.delta = 0.25;
  cfg.seed = 14;

  SUBCASE("single anchor") {
    ConnectedOracle oracle(cut.graph, cfg);
    SparseGraph via_edges = materialize_all_pairs(
        [&oracle](Vertex u, Vertex v) { return oracle.edge(u, v); }, 70, 140);
    ConnectedNeighborOracle nbr(oracle);
    SparseGraph via_lists = materialize_from_neighbors(nbr, 70, 140);
    CHECK(graph_distance(via_edges, via_lists).differing_pairs == 0);
  }

  SUBCASE("super-node variant") {
    cfg.super_fraction = 0.1;
    ModConnectedOracle oracle(cut.graph, cfg);
    SparseGraph via_edges = materialize_all_pairs(
        [&oracle](Vertex u, Vertex v) { return oracle.edge(u, v); }, 70, 140);
    CorrectedNeighborOracle nbr(oracle, 70);
    SparseGraph via_lists = materialize_from_neighbors(nbr, 70, 140);
    CHECK(graph_distance(via_edges, via_lists).differing_pairs == 0);
  }
}
