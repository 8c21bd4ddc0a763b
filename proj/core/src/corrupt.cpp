#include "grepair/corrupt.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <vector>

#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/random.hpp"

namespace grepair {

namespace {

constexpr int kRetries = 16;

std::vector<std::set<Vertex>> adjacency_sets(const SparseGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) {
    const auto& nbrs = g.neighbors(v);
    adj[static_cast<std::size_t>(v)].insert(nbrs.begin(), nbrs.end());
  }
  return adj;
}

SparseGraph graph_from_sets(const std::vector<std::set<Vertex>>& adj, int n,
                            std::int64_t m_bound) {
  EdgeList edges;
  for (Vertex v = 1; v <= n; ++v) {
    for (Vertex w : adj[static_cast<std::size_t>(v)]) {
      if (w > v) edges.push_back({v, w});
    }
  }
  return SparseGraph::undirected(n, m_bound, edges);
}

std::vector<Vertex> sample_distinct(int n, int count, Rng& rng) {
  std::set<Vertex> chosen;
  while (static_cast<int>(chosen.size()) < count) {
    chosen.insert(static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n))));
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

Corruption corrupt_connectivity(const SparseGraph& g, int target_components,
                                std::uint64_t seed) {
  if (g.is_directed())
    throw WrongGraphKind("connectivity corruption expects an undirected graph");
  if (!is_connected(g)) throw ParameterError("input graph must be connected");
  const int n = g.vertex_count();
  if (target_components < 1 || target_components > n)
    throw ParameterError("component target out of range");

  Rng rng(seed);
  auto adj = adjacency_sets(g);
  std::vector<bool> isolated(static_cast<std::size_t>(n) + 1, false);
  EdgeList removed;

  for (int round = 1; round < target_components; ++round) {
    // Largest remaining non-singleton component, lowest discovery tie-break.
    std::vector<int> comp(static_cast<std::size_t>(n) + 1, -1);
    int best_root = 0;
    int best_size = 0;
    for (Vertex v = 1; v <= n; ++v) {
      if (comp[static_cast<std::size_t>(v)] >= 0 || isolated[static_cast<std::size_t>(v)])
        continue;
      int size = 0;
      std::queue<Vertex> queue;
      queue.push(v);
      comp[static_cast<std::size_t>(v)] = v;
      while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop();
        ++size;
        for (Vertex w : adj[static_cast<std::size_t>(u)]) {
          if (comp[static_cast<std::size_t>(w)] < 0) {
            comp[static_cast<std::size_t>(w)] = v;
            queue.push(w);
          }
        }
      }
      if (size > best_size) {
        best_size = size;
        best_root = v;
      }
    }
    if (best_size < 2)
      throw ParameterError("not enough vertices to split further");

    // BFS spanning tree of that component; its leaves are safe to isolate.
    std::vector<Vertex> parent(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> tree_deg(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Vertex> members;
    std::queue<Vertex> queue;
    queue.push(static_cast<Vertex>(best_root));
    parent[static_cast<std::size_t>(best_root)] = best_root;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop();
      members.push_back(u);
      for (Vertex w : adj[static_cast<std::size_t>(u)]) {
        if (parent[static_cast<std::size_t>(w)] == 0) {
          parent[static_cast<std::size_t>(w)] = u;
          ++tree_deg[static_cast<std::size_t>(u)];
          ++tree_deg[static_cast<std::size_t>(w)];
          queue.push(w);
        }
      }
    }
    std::vector<Vertex> leaves;
    for (Vertex u : members) {
      if (tree_deg[static_cast<std::size_t>(u)] == 1) leaves.push_back(u);
    }
    const Vertex leaf =
        leaves[static_cast<std::size_t>(rng.below(leaves.size()))];
    for (Vertex w : adj[static_cast<std::size_t>(leaf)]) {
      adj[static_cast<std::size_t>(w)].erase(leaf);
      removed.push_back({std::min(leaf, w), std::max(leaf, w)});
    }
    adj[static_cast<std::size_t>(leaf)].clear();
    isolated[static_cast<std::size_t>(leaf)] = true;
  }

  SparseGraph corrupted = graph_from_sets(adj, n, g.edge_bound());
  const Components check = connected_components(corrupted);
  if (check.count != target_components)
    throw VerificationError("corruption missed the component target");
  const double distance = static_cast<double>(target_components - 1) /
                          static_cast<double>(g.edge_bound());
  std::ostringstream cert;
  cert << "property=connectivity components=" << target_components
       << " removed=" << removed.size() << " repair=" << (target_components - 1)
       << " distance=" << distance << " exact=1";
  return Corruption{std::move(corrupted), std::move(removed), distance, true,
                    cert.str()};
}

Corruption corrupt_strong(const SparseGraph& g, int sources, int sinks,
                          std::uint64_t seed) {
  if (!g.is_directed())
    throw WrongGraphKind("strong corruption expects a directed graph");
  if (!is_strongly_connected(g))
    throw ParameterError("input digraph must be strongly connected");
  const int n = g.vertex_count();
  if (sources < 1 || sinks < 1 || sources + sinks >= n)
    throw ParameterError("source/sink counts out of range");

  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
    const std::vector<Vertex> chosen = sample_distinct(n, sources + sinks, rng);
    std::vector<bool> is_src(static_cast<std::size_t>(n) + 1, false);
    std::vector<bool> is_snk(static_cast<std::size_t>(n) + 1, false);
    // sample_distinct returns ascending ids; shuffle roles for variety.
    std::vector<Vertex> roles = chosen;
    for (int i = static_cast<int>(roles.size()) - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(roles[static_cast<std::size_t>(i)], roles[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < sources; ++i) is_src[static_cast<std::size_t>(roles[static_cast<std::size_t>(i)])] = true;
    for (int i = sources; i < sources + sinks; ++i)
      is_snk[static_cast<std::size_t>(roles[static_cast<std::size_t>(i)])] = true;

    EdgeList kept;
    EdgeList removed;
    for (Vertex v = 1; v <= n; ++v) {
      for (Vertex w : g.out_neighbors(v)) {
        if (is_src[static_cast<std::size_t>(w)] || is_snk[static_cast<std::size_t>(v)]) {
          removed.push_back({v, w});
        } else {
          kept.push_back({v, w});
        }
      }
    }
    SparseGraph corrupted = SparseGraph::directed(n, g.edge_bound(), kept);
    const SccDecomposition scc = scc_decompose(corrupted);
    if (scc.count != sources + sinks + 1) continue;
    bool shape_ok = true;
    int src_comps = 0;
    int snk_comps = 0;
    for (int c = 0; c < scc.count && shape_ok; ++c) {
      if (scc.is_source[static_cast<std::size_t>(c)] &&
          scc.is_sink[static_cast<std::size_t>(c)])
        shape_ok = false;  // isolated component, wrong shape
      else if (scc.is_source[static_cast<std::size_t>(c)])
        ++src_comps;
      else if (scc.is_sink[static_cast<std::size_t>(c)])
        ++snk_comps;
    }
    if (!shape_ok || src_comps != sources || snk_comps != sinks) continue;
    const GraphDistance dist = distance_to_strong_connectivity(corrupted);
    if (dist.differing_pairs != std::max(sources, sinks)) continue;

    std::ostringstream cert;
    cert << "property=strong-connectivity sources=" << sources
         << " sinks=" << sinks << " removed=" << removed.size()
         << " repair=" << std::max(sources, sinks) << " distance=" << dist.value()
         << " exact=1";
    return Corruption{std::move(corrupted), std::move(removed), dist.value(),
                      true, cert.str()};
  }
  throw VerificationError("strong corruption failed to reach the target shape");
}

Corruption corrupt_kconn(const SparseGraph& g, int k, int downgrades,
                         std::uint64_t seed) {
  if (g.is_directed())
    throw WrongGraphKind("k-connectivity corruption expects an undirected graph");
  if (k < 1) throw ParameterError("k must be at least 1");
  if (downgrades < 1) throw ParameterError("need at least one downgrade");
  if (edge_connectivity(g) < k)
    throw ParameterError("input graph must be k-edge-connected");
  const int n = g.vertex_count();

  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
    auto adj = adjacency_sets(g);
    EdgeList removed;
    std::vector<bool> chosen(static_cast<std::size_t>(n) + 1, false);
    std::vector<Vertex> picks;
    bool ok = true;
    for (int i = 0; i < downgrades && ok; ++i) {
      // A vertex not chosen yet and not adjacent to a chosen one, so the
      // downgrades do not interfere.
      Vertex v = 0;
      for (int tries = 0; tries < 4 * n; ++tries) {
        const Vertex c = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n)));
        if (chosen[static_cast<std::size_t>(c)]) continue;
        bool clash = false;
        for (Vertex w : adj[static_cast<std::size_t>(c)]) {
          if (chosen[static_cast<std::size_t>(w)]) {
            clash = true;
            break;
          }
        }
        if (!clash) {
          v = c;
          break;
        }
      }
      if (v == 0) {
        ok = false;
        break;
      }
      chosen[static_cast<std::size_t>(v)] = true;
      picks.push_back(v);
      std::vector<Vertex> nbrs(adj[static_cast<std::size_t>(v)].begin(),
                               adj[static_cast<std::size_t>(v)].end());
      for (int i2 = static_cast<int>(nbrs.size()) - 1; i2 > 0; --i2) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i2) + 1));
        std::swap(nbrs[static_cast<std::size_t>(i2)], nbrs[static_cast<std::size_t>(j)]);
      }
      for (Vertex w : nbrs) {
        if (static_cast<int>(adj[static_cast<std::size_t>(v)].size()) <= k - 1) break;
        if (static_cast<int>(adj[static_cast<std::size_t>(w)].size()) <= k) continue;
        adj[static_cast<std::size_t>(v)].erase(w);
        adj[static_cast<std::size_t>(w)].erase(v);
        removed.push_back({std::min(v, w), std::max(v, w)});
      }
      if (static_cast<int>(adj[static_cast<std::size_t>(v)].size()) != k - 1) ok = false;
    }
    if (!ok) continue;
    SparseGraph corrupted = graph_from_sets(adj, n, g.edge_bound());
    if (edge_connectivity(corrupted) != k - 1) continue;

    const double distance = static_cast<double>(removed.size()) /
                            static_cast<double>(g.edge_bound());
    std::ostringstream cert;
    cert << "property=k-edge-connectivity k=" << k
         << " downgrades=" << downgrades << " removed=" << removed.size()
         << " repair<=" << removed.size() << " repair>=" << (downgrades + 1) / 2
         << " distance<=" << distance << " exact=0";
    return Corruption{std::move(corrupted), std::move(removed), distance, false,
                      cert.str()};
  }
  throw VerificationError("k-connectivity corruption failed to reach the target cut");
}

Corruption corrupt_diameter(const SparseGraph& g, int spokes, std::uint64_t seed) {
  if (g.is_directed())
    throw WrongGraphKind("diameter corruption expects an undirected graph");
  if (spokes < 1) throw ParameterError("need at least one spoke to remove");
  const int n = g.vertex_count();

  Vertex hub = 1;
  for (Vertex v = 2; v <= n; ++v) {
    if (g.neighbors(v).size() > g.neighbors(hub).size()) hub = v;
  }

  Rng rng(seed);
  auto adj = adjacency_sets(g);
  EdgeList removed;
  std::vector<Vertex> nbrs(adj[static_cast<std::size_t>(hub)].begin(),
                           adj[static_cast<std::size_t>(hub)].end());
  for (int i = static_cast<int>(nbrs.size()) - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(nbrs[static_cast<std::size_t>(i)], nbrs[static_cast<std::size_t>(j)]);
  }
  for (Vertex u : nbrs) {
    if (static_cast<int>(removed.size()) == spokes) break;
    if (static_cast<int>(adj[static_cast<std::size_t>(u)].size()) < 2) continue;
    if (static_cast<int>(adj[static_cast<std::size_t>(hub)].size()) < 2) break;
    adj[static_cast<std::size_t>(hub)].erase(u);
    adj[static_cast<std::size_t>(u)].erase(hub);
    removed.push_back({std::min(hub, u), std::max(hub, u)});
  }
  if (static_cast<int>(removed.size()) != spokes)
    throw ParameterError("not enough removable spokes at the hub");

  SparseGraph corrupted = graph_from_sets(adj, n, g.edge_bound());
  const double distance =
      static_cast<double>(spokes) / static_cast<double>(g.edge_bound());
  std::ostringstream cert;
  cert << "property=bounded-diameter hub=" << hub << " removed=" << spokes
       << " repair<=" << spokes << " distance<=" << distance << " exact=0";
  return Corruption{std::move(corrupted), std::move(removed), distance, false,
                    cert.str()};
}

}  // namespace grepair
