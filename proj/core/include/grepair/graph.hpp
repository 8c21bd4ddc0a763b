#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grepair/random.hpp"

namespace grepair {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

/// Distance between two graphs on the same vertex set and edge budget:
/// the number of vertex pairs (arcs for digraphs) present in exactly one of
/// them, normalized by the shared edge budget.
struct GraphDistance {
  std::int64_t differing_pairs = 0;
  std::int64_t edge_bound = 0;

  double value() const { return static_cast<double>(differing_pairs) / static_cast<double>(edge_bound); }
};

/// Immutable sparse graph in the adjacency-list model. Vertices are 1..n.
/// Lists are stored sorted ascending; no self-loops or parallel edges.
/// The edge budget m_bound satisfies m_bound >= max(n, |E|); it is the
/// denominator of every distance involving this graph.
class SparseGraph {
 public:
  /// allow_excess_edges permits |E| > m_bound; corrected supergraphs keep the
  /// original budget as their distance denominator even when they outgrow it.
  static SparseGraph undirected(int n, std::int64_t m_bound, const EdgeList& edges,
                                bool allow_excess_edges = false);
  static SparseGraph directed(int n, std::int64_t m_bound, const EdgeList& arcs,
                              bool allow_excess_edges = false);

  int vertex_count() const { return n_; }
  std::int64_t edge_bound() const { return m_bound_; }
  bool is_directed() const { return directed_; }
  std::int64_t edge_count() const { return edge_count_; }

  /// Undirected adjacency. Throws WrongGraphKind on digraphs.
  std::span<const Vertex> neighbors(Vertex v) const;
  /// Directed adjacency. Throws WrongGraphKind on undirected graphs.
  std::span<const Vertex> out_neighbors(Vertex v) const;
  std::span<const Vertex> in_neighbors(Vertex v) const;

  /// Membership test (unordered pair, or arc u->v for digraphs).
  bool has_edge(Vertex u, Vertex v) const;

  /// Canonical edge list: (u < v) pairs for undirected, arcs for directed,
  /// sorted lexicographically.
  EdgeList edges() const;

  void check_vertex(Vertex v) const;

 private:
  SparseGraph() = default;

  int n_ = 0;
  std::int64_t m_bound_ = 0;
  bool directed_ = false;
  std::int64_t edge_count_ = 0;
  std::vector<std::vector<Vertex>> adj_;     // out-lists (or the only lists)
  std::vector<std::vector<Vertex>> in_adj_;  // directed only
};

/// Differing-pair distance. Throws IncompatibleGraphs unless both graphs
/// share n, m_bound, and directedness.
GraphDistance graph_distance(const SparseGraph& a, const SparseGraph& b);

/// Text format: header "n m_bound d" (d = 1 for directed), then one line
/// "v: a b c" per vertex in order, neighbors ascending (out-lists only for
/// digraphs). Serialization is canonical: equal graphs produce equal bytes.
std::string serialize_graph(const SparseGraph& g);
SparseGraph parse_graph(std::string_view text);

SparseGraph load_graph(const std::filesystem::path& path);
void save_graph(const SparseGraph& g, const std::filesystem::path& path);

}  // namespace grepair
