#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <vector>

#include "grepair/graph.hpp"
#include "grepair/oracle.hpp"
#include "grepair/random.hpp"
#include "grepair/recon_connect.hpp"

namespace grepair {

struct KConnConfig {
  double epsilon = 0.05;
  double alpha = 1.0;
  double delta = 0.1;
  double gamma = 0.1;
  double super_fraction = 0.1;
  int k = 2;
  std::uint64_t seed = 0;
  // Largest set size the exhaustive extremeness check accepts; the derived
  // search size t must stay at or below it.
  int brute_force_limit = 16;
};

struct KConnDerived {
  double big_c = 0.0;             // 1 / ln(1/(1-gamma))
  int t = 0;                      // search size ceil(ln(Cn)/(delta*alpha*epsilon))
  std::int64_t iterations = 0;    // ceil(t^2 * ln(Cn)) search repetitions
  double random_rule = 0.0;       // fallback success threshold ln(Cn/t)/t
  int super_count = 0;            // |V0| = ceil(c*n)
  int ring_width = 0;             // s = ceil(k/2)
};

// Validates the configuration against n and computes the derived quantities.
// Throws ParameterError on infeasible parameters and SizeLimitError when the
// search size t exceeds brute_force_limit.
KConnDerived derive_kconn(const KConnConfig& cfg, int n);

// Super-node set of a non-super-node: {b, b+1, ..., b+k-1} with b = ceil(v*c),
// wrapped into {1..super_count}. Entries in wrap order, b first.
std::vector<Vertex> hash_supernodes(Vertex v, double c, int k, int super_count);

// All non-super-nodes whose hash set contains super-node w, ascending.
std::vector<Vertex> hash_preimage(Vertex w, double c, int k, int super_count, int n);

// Ring among super-nodes: edge iff circular distance on {1..super_count} is
// at most ring_width.
bool ring_edge(Vertex u, Vertex v, int super_count, int ring_width);
std::vector<Vertex> ring_neighbors(Vertex w, int super_count, int ring_width);

struct SearchOutcome {
  bool success = false;
  std::vector<Vertex> members;
  int boundary = 0;
};

// True iff deg(members) == ell and every nonempty proper subset has boundary
// degree strictly above ell, degrees taken from the supplied neighbor lists.
// Exhaustive over 2^|members| subsets; sets larger than brute_force_limit are
// rejected with SizeLimitError.
bool verify_extreme(const std::vector<Vertex>& members, int ell,
                    const std::function<std::vector<Vertex>(Vertex)>& neighbors_of,
                    int brute_force_limit = 16);

// Oracle stack for the recursive k-connectivity correction. Level 1 is the
// multi-super-node connectivity correction with the full ring among
// super-nodes; level j in 2..k adds, per non-super-node, at most one edge to
// the lexicographically smallest unused member of its hash set, elected by
// repeated bounded extreme-set searches against level j-1 with a rank-
// threshold fallback.
//
// In staged mode (default) each level is materialized once and further levels
// read flat adjacency arrays; in pure mode every answer is computed through
// the level below's oracle surface, with base-graph probes counted by the
// handle. Both modes answer identically; staged mode is the fast path.
class KConnStack {
 public:
  KConnStack(const SparseGraph& g, const KConnConfig& cfg, bool staged = true);

  // Presence bit in the corrected graph G_level, level in 1..k.
  int edge(int level, Vertex u, Vertex v);

  // Corrected adjacency: original ascending list first, added neighbors
  // ascending. Cached per (level, vertex).
  const std::vector<Vertex>& neighbors(int level, Vertex v);
  int degree(int level, Vertex v);

  // The corrected graph at a level as a concrete graph (keeps the input's
  // edge bound; may exceed it).
  const SparseGraph& materialize(int level);

  // One bounded search for a (level-1)-extreme set around v, using the
  // weight stream of the given repetition index (1-based). Level in 2..k.
  SearchOutcome search_once(int level, Vertex v, std::int64_t iter);

  // Super-node the per-level decision attaches v to, or 0. Level in 2..k.
  Vertex decision_target(int level, Vertex v);

  bool is_super(Vertex v) const { return v <= derived_.super_count; }
  std::vector<Vertex> hash_set(Vertex v) const;
  const KConnConfig& config() const { return cfg_; }
  const KConnDerived& derived() const { return derived_; }
  OracleHandle& handle() { return modconn_.handle(); }
  int vertex_count() const { return n_; }

 private:
  struct View;

  int edge_unlocked(int level, Vertex u, Vertex v);
  const std::vector<Vertex>& neighbors_unlocked(int level, Vertex v);
  Vertex decide(int level, Vertex v);
  SearchOutcome run_search(View& view, int level, Vertex v, std::int64_t iter);
  const SparseGraph& ensure_level(int level);
  std::vector<Vertex> candidate_partners(Vertex v) const;

  int n_;
  KConnConfig cfg_;
  KConnDerived derived_;
  bool staged_;
  ModConnectedOracle modconn_;
  std::vector<RandomSource> level_ranks_;                       // index = level
  std::vector<std::vector<Vertex>> decision_;                   // -1 unknown, 0 none
  std::vector<std::vector<std::optional<std::vector<Vertex>>>> nbr_cache_;
  std::vector<std::optional<SparseGraph>> levels_;
  std::recursive_mutex mu_;
};

}  // namespace grepair
