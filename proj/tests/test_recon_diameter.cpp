#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <vector>

#include "doctest.h"
#include "grepair/corrupt.hpp"
#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/generate.hpp"
#include "grepair/graph.hpp"
#include "grepair/random.hpp"
#include "grepair/recon_connect.hpp"
#include "grepair/recon_diameter.hpp"
#include "helpers.hpp"

using namespace grepair;
using namespace grepair::testutil;

namespace {

// The connectivity layer the diameter oracle reads through, as a plain graph.
SparseGraph base_correction(SmallDiamOracle& oracle) {
  const SparseGraph& g = oracle.handle().graph();
  return materialize_from_neighbors(oracle.corrected(), g.vertex_count(), g.edge_bound());
}

std::vector<int> bfs_dist(const SparseGraph& g, Vertex s) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  std::queue<Vertex> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

// Path 1..32 (the two super-nodes sit inside it), one isolated vertex 33, and
// one far pair 34-35. The bucket map sends 33, 34, 35 to super-node 2, whose
// corrected degree stays below the threshold, so the structure of clean balls
// is the same for every seed.
SparseGraph path_plus_satellites() {
  EdgeList edges;
  for (Vertex v = 1; v < 32; ++v) edges.push_back({v, v + 1});
  edges.push_back({34, 35});
  return SparseGraph::undirected(35, 60, edges);
}

DiamConfig satellite_config(std::uint64_t seed) {
  DiamConfig cfg;
  cfg.epsilon = 0.5;
  cfg.alpha = 1.0;
  cfg.delta = 0.05;  // keeps the leader-election ball cap above n
  cfg.super_fraction = 0.05;
  cfg.diameter_target = 1;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("derived radius takes the smaller of the ratio and the target") {
  DiamConfig cfg;
  cfg.epsilon = 0.1;
  cfg.alpha = 1.0;
  cfg.delta = 0.1;
  cfg.diameter_target = 3;

  DiamDerived d = derive_diam(cfg, 100, 400);
  CHECK(d.radius == 3);  // ratio ceil(200/40) = 5 exceeds the target
  CHECK(d.avg_degree == doctest::Approx(8.0));
  CHECK(d.high_threshold == doctest::Approx(80.0));
  const double lg = std::log2(std::pow(80.0, 3) + 2.0);
  CHECK(d.rounds == static_cast<std::int64_t>(std::ceil(4.0 * lg * lg - 1e-9)));

  cfg.diameter_target = 10;
  CHECK(derive_diam(cfg, 100, 400).radius == 5);  // now the ratio binds

  cfg.diameter_target = 3;
  cfg.epsilon = 0.5;
  CHECK(derive_diam(cfg, 100, 400).radius == 1);  // ratio 1, floor at 1

  cfg.epsilon = 0.1;
  cfg.mis_round_constant = 8;
  CHECK(derive_diam(cfg, 100, 400).rounds >= d.rounds);
}

TEST_CASE("radius derivation rejects out-of-range parameters") {
  DiamConfig cfg;
  auto broken = [&](auto mutate) {
    DiamConfig bad = cfg;
    mutate(bad);
    return bad;
  };
  CHECK_THROWS_AS(derive_diam(broken([](DiamConfig& c) { c.epsilon = 0.0; }), 50, 100),
                  ParameterError);
  CHECK_THROWS_AS(derive_diam(broken([](DiamConfig& c) { c.epsilon = 1.0; }), 50, 100),
                  ParameterError);
  CHECK_THROWS_AS(derive_diam(broken([](DiamConfig& c) { c.alpha = 0.0; }), 50, 100),
                  ParameterError);
  CHECK_THROWS_AS(derive_diam(broken([](DiamConfig& c) { c.delta = 1.0; }), 50, 100),
                  ParameterError);
  CHECK_THROWS_AS(derive_diam(broken([](DiamConfig& c) { c.diameter_target = 0; }), 50, 100),
                  ParameterError);
  CHECK_THROWS_AS(derive_diam(broken([](DiamConfig& c) { c.mis_round_constant = 0; }), 50, 100),
                  ParameterError);
  CHECK_THROWS_AS(derive_diam(cfg, 1, 100), ParameterError);
  CHECK_THROWS_AS(derive_diam(cfg, 50, 40), ParameterError);

  // tau^K overflows a double once the radius is large enough
  DiamConfig wide = cfg;
  wide.epsilon = 0.001;
  wide.diameter_target = 150;
  CHECK_THROWS_AS(derive_diam(wide, 100, 400), ParameterError);
}

TEST_CASE("hub stars mark the hub high-degree and dominate their spokes") {
  // hub 30 with spokes 21..29 and 31..50; vertices 4..20 are singletons whose
  // bucket edges land on the anchor, far from the star
  EdgeList edges;
  for (Vertex s = 21; s <= 50; ++s) {
    if (s != 30) edges.push_back({std::min<Vertex>(s, 30), std::max<Vertex>(s, 30)});
  }
  SparseGraph g = SparseGraph::undirected(50, 60, edges);

  DiamConfig cfg;
  cfg.epsilon = 0.5;
  cfg.alpha = 1.0;
  cfg.delta = 0.05;
  cfg.diameter_target = 3;
  cfg.seed = 11;
  SmallDiamOracle oracle(g, cfg);
  CHECK(oracle.derived().radius == 3);

  CHECK(oracle.is_high_degree(30));  // degree 29 over threshold 4.8
  CHECK(oracle.is_high_degree(1));   // forced, its own degree is small
  CHECK(!oracle.is_high_degree(2));
  CHECK(!oracle.is_high_degree(21));
  CHECK_THROWS_AS(oracle.low_ball(30), QueryViolation);
  CHECK_THROWS_AS(oracle.low_ball(1), QueryViolation);
  CHECK_THROWS_AS(oracle.mis(21), QueryViolation);  // ball is unclean

  CHECK(oracle.edge(1, 30) == 1);  // high-degree vertices attach to the anchor
  for (Vertex s : {21, 35, 50}) {
    const auto& ball = oracle.low_ball(s);
    CHECK(!ball.clean);  // the hub sits one step away
    CHECK(ball.members.empty());
    CHECK(oracle.edge(1, s) == 0);  // dominated through the hub instead
  }
  CHECK(oracle.edge(21, 30) == 1);  // input edge passes through
  CHECK(oracle.edge(21, 22) == 0);  // non-anchor pairs never gain edges
  CHECK_THROWS_AS(oracle.edge(7, 7), QueryViolation);
}

TEST_CASE("sieve traces on a fixed component layout") {
  SparseGraph g = path_plus_satellites();
  for (std::uint64_t seed : {3ull, 7ull, 21ull}) {
    DiamConfig cfg = satellite_config(seed);
    SmallDiamOracle oracle(g, cfg);
    REQUIRE(oracle.derived().radius == 1);

    // super-node 2 reads the anchor in its radius-1 ball: unclean, low degree
    CHECK(!oracle.is_high_degree(2));
    CHECK(!oracle.low_ball(2).clean);
    CHECK_THROWS_AS(oracle.fallback_member(2), QueryViolation);

    // vertex 33's only corrected neighbor is the unclean super-node 2, so its
    // sieve component is a single vertex: it joins in round one
    const auto& lone = oracle.low_ball(33);
    REQUIRE(lone.clean);
    CHECK(lone.members == std::vector<Vertex>{2, 33});
    CHECK(oracle.mis(33) == 1);
    CHECK(!oracle.fallback_member(33));
    CHECK(oracle.edge(1, 33) == 1);

    // 34 and 35 form one sieve edge; the smaller first-round coin wins
    REQUIRE(oracle.low_ball(34).clean);
    REQUIRE(oracle.low_ball(35).clean);
    RandomSource coins(seed, Stream::MisCoin, 0);
    Vertex winner = coins.unit(34, 1) < coins.unit(35, 1) ? 34 : 35;
    Vertex loser = winner == 34 ? 35 : 34;
    CHECK(oracle.mis(winner) == 1);
    CHECK(oracle.mis(loser) == 0);
    CHECK(!oracle.fallback_member(winner));
    CHECK(!oracle.fallback_member(loser));
    CHECK(oracle.edge(1, winner) == 1);
    CHECK(oracle.edge(1, loser) == 0);
    CHECK(oracle.edge(34, 35) == 1);
    CHECK(oracle.edge(33, 34) == 0);

    SparseGraph fixed = materialize_all_pairs(
        [&oracle](Vertex a, Vertex b) { return oracle.edge(a, b); }, 35, 60);
    for (const auto& [u, v] : g.edges()) CHECK(fixed.has_edge(u, v));
    auto diam = exact_diameter(fixed);
    REQUIRE(diam.has_value());
    CHECK(*diam <= 2 * oracle.derived().radius + 2);

    // the adjacency surface agrees with the pair oracle
    SmallDiamNeighborOracle nbr(oracle);
    SparseGraph via_lists = materialize_from_neighbors(nbr, 35, 60);
    CHECK(serialize_graph(via_lists) == serialize_graph(fixed));
  }
}

TEST_CASE("high-degree census stays within the averaging bound") {
  Rng mix(5151);
  for (int i = 0; i < 10; ++i) {
    SparseGraph g = generate({GraphKind::Connected, 120, 240, 2, 3, mix.next()});
    DiamConfig cfg;
    cfg.epsilon = 0.25;
    cfg.alpha = 1.0;
    cfg.delta = 0.1;
    cfg.diameter_target = 3;
    cfg.seed = mix.next();
    SmallDiamOracle oracle(g, cfg);
    int high = 0;
    for (Vertex v = 2; v <= 120; ++v) {
      if (oracle.is_high_degree(v)) ++high;
    }
    CHECK(high <= static_cast<int>(0.25 * 120) + 1);
  }
}

TEST_CASE("oracle answers match a whole-graph reference simulation") {
  Rng mix(909);
  for (int i = 0; i < 6; ++i) {
    SparseGraph base = generate({GraphKind::LowDiameter, 90, 240, 2, 3, mix.next()});
    Corruption cut = corrupt_diameter(base, 6, mix.next());
    const SparseGraph& g = cut.graph;

    DiamConfig cfg;
    cfg.epsilon = 0.2;
    cfg.alpha = 1.0;
    cfg.delta = 0.1;
    cfg.diameter_target = 2;
    cfg.seed = mix.next();
    SmallDiamOracle oracle(g, cfg);
    const int K = oracle.derived().radius;
    REQUIRE(K == 2);
    const double tau = oracle.derived().high_threshold;

    SparseGraph gp = base_correction(oracle);
    const int n = g.vertex_count();

    std::vector<bool> high(static_cast<std::size_t>(n) + 1, false);
    high[1] = true;
    for (Vertex v = 2; v <= n; ++v) {
      high[v] = static_cast<double>(gp.neighbors(v).size()) > tau;
    }
    for (Vertex v = 1; v <= n; ++v) CHECK(oracle.is_high_degree(v) == high[v]);

    // radius-K balls and cleanliness from all-pairs distances in G'
    std::vector<std::vector<int>> dist;
    dist.reserve(static_cast<std::size_t>(n) + 1);
    dist.emplace_back();
    for (Vertex v = 1; v <= n; ++v) dist.push_back(bfs_dist(gp, v));

    double ball_cap = 0.0;
    for (int p = 0; p <= K; ++p) ball_cap += std::pow(tau, p);

    std::vector<bool> clean(static_cast<std::size_t>(n) + 1, false);
    for (Vertex v = 1; v <= n; ++v) {
      if (high[v]) continue;
      std::vector<Vertex> members;
      bool ok = true;
      for (Vertex w = 1; w <= n; ++w) {
        if (dist[v][w] < 0 || dist[v][w] > K) continue;
        if (high[w]) ok = false;
        members.push_back(w);
      }
      clean[v] = ok;
      const auto& ball = oracle.low_ball(v);
      CHECK(ball.clean == ok);
      if (ok) {
        CHECK(ball.members == members);
        CHECK(static_cast<double>(ball.members.size()) <= ball_cap);
      } else {
        CHECK(ball.members.empty());
      }
    }

    // sieve verdicts: joiners less fallbacks are independent at distance K,
    // and excluded vertices always see a genuine joiner within distance K
    SparseGraph power = power_graph(gp, K);
    std::vector<Vertex> j1, j3, ex;
    for (Vertex v = 2; v <= n; ++v) {
      if (high[v] || !clean[v]) continue;
      if (oracle.mis(v) == 0) {
        ex.push_back(v);
      } else if (oracle.fallback_member(v)) {
        j3.push_back(v);
      } else {
        j1.push_back(v);
      }
    }
    for (std::size_t a = 0; a < j1.size(); ++a) {
      for (std::size_t b = a + 1; b < j1.size(); ++b) {
        CHECK(!power.has_edge(j1[a], j1[b]));
      }
    }
    for (Vertex v : ex) {
      bool covered = false;
      for (Vertex w : j1) {
        if (w != v && power.has_edge(v, w)) covered = true;
      }
      CHECK(covered);
    }

    // edge answers decompose exactly as passthrough + anchor rules
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = u + 1; v <= n; ++v) {
        int expect;
        if (gp.has_edge(u, v)) {
          expect = 1;
        } else if (u != 1) {
          expect = 0;
        } else {
          if (high[v]) {
            expect = 1;
          } else if (!clean[v]) {
            expect = 0;
          } else {
            expect = oracle.mis(v);
          }
        }
        CHECK(oracle.edge(u, v) == expect);
      }
    }

    // the corrected graph keeps every vertex within K+1 of the anchor
    SparseGraph fixed = materialize_all_pairs(
        [&oracle](Vertex a, Vertex b) { return oracle.edge(a, b); }, n, g.edge_bound());
    std::vector<int> from_anchor = bfs_dist(fixed, 1);
    for (Vertex v = 1; v <= n; ++v) {
      CHECK(from_anchor[v] >= 0);
      CHECK(from_anchor[v] <= K + 1);
    }
    auto diam = exact_diameter(fixed);
    REQUIRE(diam.has_value());
    CHECK(*diam <= 2 * K + 2);

    // a fresh oracle queried in the reverse order gives identical answers
    SmallDiamOracle again(g, cfg);
    bool same = true;
    for (Vertex u = n; u >= 1; --u) {
      for (Vertex v = n; v > u; --v) {
        if (again.edge(u, v) != oracle.edge(u, v)) same = false;
      }
    }
    CHECK(same);
  }
}

TEST_CASE("anchor additions usually stay within twice the edge budget") {
  SparseGraph base = generate({GraphKind::LowDiameter, 150, 400, 2, 3, 73});
  Corruption cut = corrupt_diameter(base, 12, 29);
  const double eps = 0.15;
  int within = 0;
  const int seeds = 30;
  for (int s = 0; s < seeds; ++s) {
    DiamConfig cfg;
    cfg.epsilon = eps;
    cfg.alpha = 1.0;
    cfg.delta = 0.1;
    cfg.diameter_target = 3;
    cfg.seed = 400 + static_cast<std::uint64_t>(s);
    SmallDiamOracle oracle(cut.graph, cfg);
    SparseGraph gp = base_correction(oracle);
    SmallDiamNeighborOracle nbr(oracle);
    SparseGraph fixed = materialize_from_neighbors(nbr, 150, cut.graph.edge_bound());
    auto diam = exact_diameter(fixed);
    REQUIRE(diam.has_value());
    CHECK(*diam <= 2 * oracle.derived().radius + 2);
    const double added = static_cast<double>(fixed.edge_count() - gp.edge_count());
    if (added <= 2.0 * eps * static_cast<double>(cut.graph.edge_bound()) + 1.0) ++within;
  }
  // failure rate is at most delta + 1/n ~ 0.107; allow three sigma below
  const double p = 1.0 - 0.1 - 1.0 / 150.0;
  const double sigma = std::sqrt(seeds * p * (1.0 - p));
  CHECK(within >= static_cast<int>(seeds * p - 3.0 * sigma));
}
