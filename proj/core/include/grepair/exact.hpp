#pragma once

#include <optional>
#include <vector>

#include "grepair/graph.hpp"

namespace grepair {

/// Connected components of an undirected graph.
struct Components {
  int count = 0;
  std::vector<int> id;  // 1..n -> 0..count-1; id[0] unused
};
Components connected_components(const SparseGraph& g);
bool is_connected(const SparseGraph& g);

/// Strongly connected components of a digraph, with condensation source and
/// sink flags per component (an isolated component is both).
struct SccDecomposition {
  int count = 0;
  std::vector<int> id;  // 1..n -> 0..count-1
  std::vector<bool> is_source;
  std::vector<bool> is_sink;
};
SccDecomposition scc_decompose(const SparseGraph& g);
bool is_strongly_connected(const SparseGraph& g);

/// Exact global min cut of an undirected graph (0 when disconnected,
/// n-1 >= value). Deterministic Stoer-Wagner contraction scheme.
int edge_connectivity(const SparseGraph& g);

/// Largest finite eccentricity; nullopt when the graph is disconnected
/// (or not strongly connected, for digraphs the forward distances are used).
std::optional<int> exact_diameter(const SparseGraph& g);

/// Graph on the same vertices with an edge wherever the original distance is
/// between 1 and target_distance.
SparseGraph power_graph(const SparseGraph& g, int target_distance);

/// All vertex sets U with boundary degree exactly ell whose nonempty proper
/// subsets all have boundary degree > ell. Exhaustive; n <= 16.
std::vector<std::vector<Vertex>> enumerate_extreme_sets(const SparseGraph& g, std::int64_t ell);

/// Exact distance to the nearest connected supergraph: components - 1 pairs.
GraphDistance distance_to_connectivity(const SparseGraph& g);

/// Exact distance to the nearest strongly connected supergraph:
/// max(sources, sinks) of the condensation (0 when already strong).
GraphDistance distance_to_strong_connectivity(const SparseGraph& g);

/// Exhaustive maximum independent set size; n <= 20.
int max_independent_set_size(const SparseGraph& g);

}  // namespace grepair
