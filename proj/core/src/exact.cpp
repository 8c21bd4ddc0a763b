#include "grepair/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>

#include "grepair/error.hpp"

namespace grepair {

Components connected_components(const SparseGraph& g) {
  if (g.is_directed()) throw WrongGraphKind("connected_components expects an undirected graph");
  int n = g.vertex_count();
  Components out;
  out.id.assign(n + 1, -1);
  std::vector<Vertex> queue;
  for (Vertex s = 1; s <= n; ++s) {
    if (out.id[s] != -1) continue;
    int c = out.count++;
    out.id[s] = c;
    queue.assign(1, s);
    while (!queue.empty()) {
      Vertex v = queue.back();
      queue.pop_back();
      for (Vertex u : g.neighbors(v)) {
        if (out.id[u] == -1) {
          out.id[u] = c;
          queue.push_back(u);
        }
      }
    }
  }
  return out;
}

bool is_connected(const SparseGraph& g) { return connected_components(g).count == 1; }

SccDecomposition scc_decompose(const SparseGraph& g) {
  if (!g.is_directed()) throw WrongGraphKind("scc_decompose expects a digraph");
  int n = g.vertex_count();

  // Iterative Tarjan.
  std::vector<int> index(n + 1, -1), low(n + 1, 0), comp(n + 1, -1);
  std::vector<bool> on_stack(n + 1, false);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> call;  // vertex, next child position
  int next_index = 0, comp_count = 0;

  for (Vertex root = 1; root <= n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, child] = call.back();
      if (child == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      auto out = g.out_neighbors(v);
      bool descended = false;
      while (child < out.size()) {
        Vertex u = out[child++];
        if (index[u] == -1) {
          call.emplace_back(u, 0);
          descended = true;
          break;
        }
        if (on_stack[u]) low[v] = std::min(low[v], index[u]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        while (true) {
          Vertex w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
          if (w == v) break;
        }
        ++comp_count;
      }
      Vertex finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }

  SccDecomposition out;
  out.count = comp_count;
  out.id.assign(comp.begin(), comp.end());
  out.is_source.assign(comp_count, true);
  out.is_sink.assign(comp_count, true);
  for (Vertex v = 1; v <= n; ++v) {
    for (Vertex u : g.out_neighbors(v)) {
      if (comp[v] != comp[u]) {
        out.is_sink[comp[v]] = false;    // has an arc out
        out.is_source[comp[u]] = false;  // has an arc in
      }
    }
  }
  return out;
}

bool is_strongly_connected(const SparseGraph& g) { return scc_decompose(g).count == 1; }

int edge_connectivity(const SparseGraph& g) {
  if (g.is_directed()) throw WrongGraphKind("edge_connectivity expects an undirected graph");
  int n = g.vertex_count();
  if (n < 2) throw ParameterError("edge_connectivity needs at least two vertices");
  if (!is_connected(g)) return 0;
  if (n > 2048) throw SizeLimitError("edge_connectivity limited to n <= 2048");

  // Stoer-Wagner with unit weights on a dense working matrix.
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (Vertex v = 1; v <= n; ++v)
    for (Vertex u : g.neighbors(v))
      if (u > v) w[v - 1][u - 1] = w[u - 1][v - 1] = 1;

  std::vector<int> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  int best = std::numeric_limits<int>::max();
  std::vector<int> conn(n), order;
  std::vector<bool> added(n);

  while (alive.size() > 1) {
    // Maximum-adjacency order over the alive supervertices.
    for (int a : alive) {
      conn[a] = 0;
      added[a] = false;
    }
    order.clear();
    for (std::size_t step = 0; step < alive.size(); ++step) {
      int pick = -1;
      for (int a : alive)
        if (!added[a] && (pick == -1 || conn[a] > conn[pick])) pick = a;
      added[pick] = true;
      order.push_back(pick);
      for (int a : alive)
        if (!added[a]) conn[a] += w[pick][a];
    }
    int t = order.back();
    int s = order[order.size() - 2];
    best = std::min(best, conn[t]);
    // Contract t into s.
    for (int a : alive) {
      if (a == s || a == t) continue;
      w[s][a] += w[t][a];
      w[a][s] = w[s][a];
    }
    alive.erase(std::find(alive.begin(), alive.end(), t));
  }
  return best;
}

namespace {

// BFS distances from s; -1 for unreachable. Uses out-arcs on digraphs.
std::vector<int> bfs_distances(const SparseGraph& g, Vertex s) {
  std::vector<int> dist(g.vertex_count() + 1, -1);
  std::deque<Vertex> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    auto list = g.is_directed() ? g.out_neighbors(v) : g.neighbors(v);
    for (Vertex u : list) {
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

}  // namespace

std::optional<int> exact_diameter(const SparseGraph& g) {
  int n = g.vertex_count();
  int diameter = 0;
  for (Vertex s = 1; s <= n; ++s) {
    auto dist = bfs_distances(g, s);
    for (Vertex v = 1; v <= n; ++v) {
      if (dist[v] == -1) return std::nullopt;
      diameter = std::max(diameter, dist[v]);
    }
  }
  return diameter;
}

SparseGraph power_graph(const SparseGraph& g, int target_distance) {
  if (g.is_directed()) throw WrongGraphKind("power_graph expects an undirected graph");
  if (target_distance < 1) throw ParameterError("power_graph needs target_distance >= 1");
  int n = g.vertex_count();
  EdgeList edges;
  for (Vertex s = 1; s <= n; ++s) {
    auto dist = bfs_distances(g, s);
    for (Vertex v = s + 1; v <= n; ++v)
      if (dist[v] != -1 && dist[v] <= target_distance) edges.emplace_back(s, v);
  }
  auto count = static_cast<std::int64_t>(edges.size());
  return SparseGraph::undirected(n, std::max<std::int64_t>(n, count), edges);
}

std::vector<std::vector<Vertex>> enumerate_extreme_sets(const SparseGraph& g, std::int64_t ell) {
  if (g.is_directed()) throw WrongGraphKind("enumerate_extreme_sets expects an undirected graph");
  int n = g.vertex_count();
  if (n > 16) throw SizeLimitError("enumerate_extreme_sets limited to n <= 16");
  if (ell < 0) throw ParameterError("extreme-set boundary degree must be >= 0");

  std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> adj(n, 0);
  std::vector<int> deg(n, 0);
  for (Vertex v = 1; v <= n; ++v) {
    deg[v - 1] = static_cast<int>(g.neighbors(v).size());
    for (Vertex u : g.neighbors(v)) adj[v - 1] |= 1u << (u - 1);
  }

  // boundary[U] by incremental update over the lowest set bit.
  std::vector<std::int32_t> boundary(full + 1, 0);
  std::vector<std::int32_t> min_proper(full + 1, std::numeric_limits<std::int32_t>::max());
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int v = std::countr_zero(mask);
    std::uint32_t rest = mask & (mask - 1);
    int internal = std::popcount(adj[v] & rest);
    boundary[mask] = boundary[rest] + deg[v] - 2 * internal;
  }
  // min over nonempty proper subsets, via one-element removals.
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::int32_t best = std::numeric_limits<std::int32_t>::max();
    std::uint32_t rem = mask;
    while (rem) {
      std::uint32_t sub = mask & ~(rem & (0u - rem));
      rem &= rem - 1;
      best = std::min({best, boundary[sub], min_proper[sub]});
    }
    min_proper[mask] = best;
  }

  std::vector<std::vector<Vertex>> out;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (boundary[mask] != ell) continue;
    if (std::popcount(mask) >= 2 && min_proper[mask] <= ell) continue;
    std::vector<Vertex> set;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) set.push_back(v + 1);
    out.push_back(std::move(set));
  }
  return out;
}

GraphDistance distance_to_connectivity(const SparseGraph& g) {
  return GraphDistance{connected_components(g).count - 1, g.edge_bound()};
}

GraphDistance distance_to_strong_connectivity(const SparseGraph& g) {
  auto scc = scc_decompose(g);
  if (scc.count == 1) return GraphDistance{0, g.edge_bound()};
  std::int64_t sources = 0, sinks = 0;
  for (int c = 0; c < scc.count; ++c) {
    if (scc.is_source[c]) ++sources;
    if (scc.is_sink[c]) ++sinks;
  }
  return GraphDistance{std::max(sources, sinks), g.edge_bound()};
}

int max_independent_set_size(const SparseGraph& g) {
  if (g.is_directed()) throw WrongGraphKind("max_independent_set_size expects an undirected graph");
  int n = g.vertex_count();
  if (n > 20) throw SizeLimitError("max_independent_set_size limited to n <= 20");
  std::vector<std::uint32_t> adj(n, 0);
  for (Vertex v = 1; v <= n; ++v)
    for (Vertex u : g.neighbors(v)) adj[v - 1] |= 1u << (u - 1);
  int best = 0;
  std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (std::uint32_t rem = mask; rem; rem &= rem - 1) {
      int v = std::countr_zero(rem);
      if (adj[v] & mask) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

}  // namespace grepair
