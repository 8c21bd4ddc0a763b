#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "grepair/exact.hpp"
#include "grepair/graph.hpp"

namespace grepair::testutil {

inline SparseGraph undirected(int n, std::int64_t m_bound, EdgeList edges) {
  return SparseGraph::undirected(n, m_bound, std::move(edges));
}

inline SparseGraph directed(int n, std::int64_t m_bound, EdgeList arcs) {
  return SparseGraph::directed(n, m_bound, std::move(arcs));
}

inline SparseGraph path(int n, std::int64_t m_bound = 0) {
  EdgeList e;
  for (int v = 1; v < n; ++v) e.push_back({v, v + 1});
  return undirected(n, m_bound ? m_bound : std::max<std::int64_t>(n, n - 1), std::move(e));
}

inline SparseGraph cycle(int n, std::int64_t m_bound = 0) {
  EdgeList e;
  for (int v = 1; v < n; ++v) e.push_back({v, v + 1});
  e.push_back({n, 1});
  return undirected(n, m_bound ? m_bound : n, std::move(e));
}

inline SparseGraph complete(int n, std::int64_t m_bound = 0) {
  EdgeList e;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) e.push_back({u, v});
  std::int64_t full = static_cast<std::int64_t>(n) * (n - 1) / 2;
  return undirected(n, m_bound ? m_bound : std::max<std::int64_t>(n, full), std::move(e));
}

// Minimum boundary degree over all nonempty proper vertex subsets; the
// exponential reference for edge_connectivity on tiny graphs.
inline int brute_min_cut(const SparseGraph& g) {
  const int n = g.vertex_count();
  int best = -1;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    int boundary = 0;
    for (int u = 1; u <= n; ++u) {
      if (!(mask & (1u << (u - 1)))) continue;
      for (Vertex v : g.neighbors(u))
        if (!(mask & (1u << (v - 1)))) ++boundary;
    }
    if (best < 0 || boundary < best) best = boundary;
  }
  return best;
}

// Boundary degree of one subset.
inline int subset_degree(const SparseGraph& g, const std::vector<Vertex>& set) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (Vertex v : set) in[static_cast<std::size_t>(v)] = 1;
  int boundary = 0;
  for (Vertex u : set)
    for (Vertex v : g.neighbors(u))
      if (!in[static_cast<std::size_t>(v)]) ++boundary;
  return boundary;
}

inline bool sets_equal(std::vector<Vertex> a, std::vector<Vertex> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace grepair::testutil
