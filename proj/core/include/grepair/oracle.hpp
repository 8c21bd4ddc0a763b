#pragma once

#include <atomic>
#include <cstdint>

#include "grepair/graph.hpp"

namespace grepair {

/// Counted adjacency-list access to a graph. Every degree or i-th-neighbor
/// probe increments the handle's counter; reconstructors budget their work
/// in these units. Neighbor indices are 1-based. Probes are read-only, so
/// concurrent queries through one handle are safe; the counter is a relaxed
/// atomic accumulator.
class OracleHandle {
 public:
  explicit OracleHandle(const SparseGraph& g) : g_(&g) {}

  int degree(Vertex v);
  Vertex neighbor(Vertex v, int i);

  int out_degree(Vertex v);
  Vertex out_neighbor(Vertex v, int i);
  int in_degree(Vertex v);
  Vertex in_neighbor(Vertex v, int i);

  std::uint64_t query_count() const { return count_.load(std::memory_order_relaxed); }
  void reset_count() { count_.store(0, std::memory_order_relaxed); }

  const SparseGraph& graph() const { return *g_; }

 private:
  void bump() { count_.fetch_add(1, std::memory_order_relaxed); }

  const SparseGraph* g_;
  std::atomic<std::uint64_t> count_{0};
};

/// Abstract undirected neighbor-oracle surface: the interface reconstructors
/// consume and also provide, allowing them to stack.
class NeighborOracle {
 public:
  virtual ~NeighborOracle() = default;
  virtual int degree(Vertex v) = 0;
  virtual Vertex neighbor(Vertex v, int i) = 0;  // 1-based
};

/// Counted neighbor-oracle surface over a plain graph handle.
class GraphNeighborOracle : public NeighborOracle {
 public:
  explicit GraphNeighborOracle(OracleHandle& h) : h_(&h) {}
  int degree(Vertex v) override { return h_->degree(v); }
  Vertex neighbor(Vertex v, int i) override { return h_->neighbor(v, i); }

 private:
  OracleHandle* h_;
};

/// Edge membership through counted probes: one degree query on the lower-id
/// endpoint plus a binary search of its sorted list. The cost is a function
/// of the unordered pair, so both query orders spend identical budget.
bool probe_edge(OracleHandle& h, Vertex u, Vertex v);

/// Arc membership u->v through counted probes on u's out-list.
bool probe_arc(OracleHandle& h, Vertex u, Vertex v);

}  // namespace grepair
