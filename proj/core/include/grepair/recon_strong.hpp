#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "grepair/graph.hpp"
#include "grepair/oracle.hpp"
#include "grepair/random.hpp"

namespace grepair {

struct StrongConfig {
  double epsilon = 0.05;
  double alpha = 1.0;
  double delta = 0.2;
  std::uint64_t seed = 0;
};

// Reach cap K = ceil(m / (delta*alpha*epsilon*m/2 - 1)). Throws ParameterError
// unless the denominator is positive and the cap is at least 2.
int derive_reach_cap(const StrongConfig& cfg, std::int64_t m_bound);

// True iff v lies in a sink (resp. source) component with fewer than `cap`
// vertices. A forward (resp. backward) DFS explores the reachable set; if it
// sees `cap` distinct vertices the answer is false without an SCC pass, else
// the explored set is checked to form a single strongly connected component.
bool in_small_sink(OracleHandle& h, Vertex v, int cap);
bool in_small_source(OracleHandle& h, Vertex v, int cap);

// Arc oracle for a strongly connected supergraph. Arcs are only ever added
// between the anchor vertex and elected endpoints:
//   transmitter test (arc w -> anchor): forward DFS from w up to K distinct
//   vertices; if the cap was hit or w sits in a small sink component, w is
//   elected iff its rank is minimal in the explored set; otherwise an
//   undirected BFS ball (out-list then in-list per vertex, FIFO) of up to K
//   vertices decides minimality.
//   receiver test (arc anchor -> w): mirror image with a backward DFS and the
//   small-source check.
// Every sink component's minimum-rank vertex passes the transmitter test and
// every source component's minimum-rank vertex passes the receiver test, so
// the corrected digraph is strongly connected for every seed. All searches
// stop once the per-call probe budget is spent, counting a truncated DFS as a
// cap hit, which keeps that guarantee intact.
class StronglyConnectedOracle {
 public:
  StronglyConnectedOracle(const SparseGraph& g, const StrongConfig& cfg);

  int arc(Vertex u, Vertex v);

  int reach_cap() const { return reach_cap_; }
  Vertex anchor() const { return 1; }
  std::int64_t probe_budget() const { return 16 * static_cast<std::int64_t>(reach_cap_); }
  OracleHandle& handle() { return handle_; }

 private:
  bool transmitter(Vertex w, std::int64_t budget);
  bool receiver(Vertex w, std::int64_t budget);

  OracleHandle handle_;
  RandomSource ranks_;
  int reach_cap_;
  std::vector<signed char> transmit_memo_;
  std::vector<signed char> receive_memo_;
  std::mutex mu_;
};

// Materializes the corrected digraph by querying every ordered pair.
SparseGraph materialize_strong(StronglyConnectedOracle& oracle);

// Corrected adjacency surface. Arcs are only added incident to the anchor, so
// a non-anchor out-list is the original list plus at most the anchor, and the
// anchor's own lists are completed by a vertex scan. Original entries come
// first, additions appended.
std::vector<Vertex> corrected_out_list(StronglyConnectedOracle& oracle, Vertex v);
std::vector<Vertex> corrected_in_list(StronglyConnectedOracle& oracle, Vertex v);

// Materializes through the list surface, verifying that out-lists and
// in-lists describe the same arc set.
SparseGraph materialize_strong_from_neighbors(StronglyConnectedOracle& oracle);

}  // namespace grepair
