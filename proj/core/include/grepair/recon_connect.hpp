#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <vector>

#include "grepair/oracle.hpp"
#include "grepair/random.hpp"

namespace grepair {

/// Parameters shared by the connectivity reconstructors.
///   epsilon        closeness promise on the input
///   alpha          overshoot factor traded for query cost
///   delta          failure probability of the closeness guarantee
///   super_fraction super-node share c (multi-super-node variant only)
///   rank_tag       separates rank namespaces when stacked oracles share a seed
struct ConnConfig {
  double epsilon = 0.05;
  double alpha = 1.0;
  double delta = 0.2;
  double super_fraction = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t rank_tag = 0;
};

/// Ceiling of x*c that tolerates 1-ulp float noise on exact integers.
int scaled_ceil(std::int64_t x, double c);

/// Ball cap K derived from (epsilon, alpha, delta) and the edge budget.
/// Throws ParameterError unless delta*alpha*epsilon*m > 1 and K >= 2.
int derive_ball_cap(const ConnConfig& cfg, std::int64_t m_bound);

/// Result of the truncated-ball leader test around one vertex.
struct LeaderBall {
  bool leader = false;
  int ball_size = 0;
};

/// Truncated BFS ball from w with the minimum-rank test. The search stops at
/// the first of: component exhausted, `cap` distinct vertices collected, or
/// `probe_budget` oracle calls spent. FIFO order, neighbors in adjacency
/// order, truncation mid-level. Deterministic given (graph, ranks, w).
LeaderBall ball_leader(OracleHandle& h, const RandomSource& ranks, Vertex w, int cap,
                       std::int64_t probe_budget);

/// Edge oracle for the connectivity correction with a single designated
/// vertex (vertex 1). Answers 1 for original edges, plus (w, 1) whenever w
/// has the minimal rank in its truncated ball. The corrected graph is
/// connected for every seed. Each call spends at most 2K+2 probes on the
/// underlying handle: the membership check costs a degree probe plus a
/// binary search of the lower-id endpoint's list, and the ball search gets
/// the remainder of the budget.
class ConnectedOracle {
 public:
  ConnectedOracle(const SparseGraph& g, const ConnConfig& cfg);

  int edge(Vertex u, Vertex v);

  int ball_cap() const { return ball_cap_; }
  Vertex anchor() const { return 1; }
  OracleHandle& handle() { return handle_; }
  std::int64_t probe_budget() const { return 2 * static_cast<std::int64_t>(ball_cap_) + 2; }

 private:
  bool leader(Vertex w, std::int64_t budget);

  OracleHandle handle_;
  RandomSource ranks_;
  int ball_cap_;
  std::vector<signed char> leader_memo_;
  std::mutex mu_;
};

/// Adjacency surface of the single-anchor connectivity correction. Additions
/// are all incident to the anchor: a non-anchor list is the original list
/// plus at most the anchor, and the anchor's list is completed by a vertex
/// scan. Original entries first, additions appended; cached per vertex.
class ConnectedNeighborOracle : public NeighborOracle {
 public:
  explicit ConnectedNeighborOracle(ConnectedOracle& oracle);

  int degree(Vertex v) override;
  Vertex neighbor(Vertex v, int i) override;  // 1-based

  const std::vector<Vertex>& corrected_list(Vertex v);

 private:
  ConnectedOracle& oracle_;
  int n_;
  std::vector<bool> cached_;
  std::vector<std::vector<Vertex>> lists_;
  std::mutex mu_;
};

/// Edge oracle for the connectivity correction with super-nodes 1..n0,
/// n0 = ceil(c*n). Original edges answer 1; consecutive super-nodes form a
/// chain; a non-super-node x attaches to its bucket super-node h(x) when x
/// wins the leader test. Queries with two super-node endpoints resolve by
/// chain membership only. Same per-call probe budget as ConnectedOracle.
class ModConnectedOracle {
 public:
  ModConnectedOracle(const SparseGraph& g, const ConnConfig& cfg);

  int edge(Vertex u, Vertex v);

  /// Bucket super-node h(x) of a non-super-node x.
  Vertex bucket_super(Vertex x) const;
  /// All non-super-nodes x with h(x) = w, ascending. At most ceil(1/c)+1.
  std::vector<Vertex> bucket_members(Vertex w) const;

  int super_count() const { return super_count_; }
  int ball_cap() const { return ball_cap_; }
  OracleHandle& handle() { return handle_; }
  std::int64_t probe_budget() const { return 2 * static_cast<std::int64_t>(ball_cap_) + 2; }

 private:
  bool leader(Vertex w, std::int64_t budget);

  OracleHandle handle_;
  RandomSource ranks_;
  int ball_cap_;
  int super_count_;
  double fraction_;
  std::vector<signed char> leader_memo_;
  std::mutex mu_;
};

/// Neighbor-oracle surface of the ModConnectedOracle correction. Corrected
/// adjacency lists keep the original ascending list first and append added
/// neighbors ascending. Lists are cached per vertex on first access.
class CorrectedNeighborOracle : public NeighborOracle {
 public:
  explicit CorrectedNeighborOracle(ModConnectedOracle& oracle, int n);

  int degree(Vertex v) override;
  Vertex neighbor(Vertex v, int i) override;

  /// Corrected-edge membership; delegates to the edge oracle.
  int edge(Vertex u, Vertex v) { return oracle_.edge(u, v); }

  const std::vector<Vertex>& corrected_list(Vertex v);

 private:
  ModConnectedOracle& oracle_;
  int n_;
  std::vector<bool> cached_;
  std::vector<std::vector<Vertex>> lists_;
  std::mutex mu_;
};

/// Corrected graph assembled by evaluating `edge` on every unordered pair.
SparseGraph materialize_all_pairs(const std::function<int(Vertex, Vertex)>& edge, int n,
                                  std::int64_t m_bound);

/// Corrected graph assembled from a neighbor-oracle surface.
SparseGraph materialize_from_neighbors(NeighborOracle& nbr, int n, std::int64_t m_bound);

}  // namespace grepair
