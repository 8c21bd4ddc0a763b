#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "grepair/graph.hpp"
#include "grepair/oracle.hpp"
#include "grepair/random.hpp"
#include "grepair/recon_connect.hpp"

namespace grepair {

struct DiamConfig {
  double epsilon = 0.1;
  double alpha = 1.0;
  double delta = 0.1;
  double super_fraction = 0.05;
  int diameter_target = 3;  // D
  std::uint64_t seed = 0;
  // Multiplier on the squared log of the effective degree in the round count.
  int mis_round_constant = 4;
};

struct DiamDerived {
  int radius = 0;               // K = min(ceil(2n/(eps*m)), D)
  double avg_degree = 0.0;      // 2*m_bound/n
  double high_threshold = 0.0;  // avg_degree / epsilon
  std::int64_t rounds = 0;      // sieve rounds before the fallback join
};

DiamDerived derive_diam(const DiamConfig& cfg, int n, std::int64_t m_bound);

// Edge oracle for a bounded-diameter supergraph of the connectivity
// correction G' (the multi-super-node layer). Beyond G', edges are added only
// between the anchor and a dominating set of G'^K: every high-degree vertex,
// plus a maximal-independent-set sieve over the low-degree vertices whose
// radius-K balls avoid high-degree vertices. Vertices the sieve leaves
// undecided after the round budget join outright, so every vertex ends within
// K+1 of the anchor and the corrected graph has diameter at most 2K+2 for
// every seed.
class SmallDiamOracle {
 public:
  SmallDiamOracle(const SparseGraph& g, const DiamConfig& cfg);

  int edge(Vertex v1, Vertex v2);

  // deg_{G'}(v) > threshold, with the anchor high-degree by fiat.
  bool is_high_degree(Vertex v);

  struct Ball {
    bool clean = false;             // no high-degree vertex within radius K
    std::vector<Vertex> members;    // the full ball when clean, else empty
  };
  // Radius-K ball of v in G', aborted on the first high-degree vertex seen
  // (that vertex then dominates v within K). Precondition: v not high-degree.
  const Ball& low_ball(Vertex v);

  // Sieve verdict for a clean low-degree vertex: 1 joined (in some round, or
  // by the fallback), 0 excluded by a joining neighbor.
  int mis(Vertex v);

  // True iff v joined through the fallback rule rather than by winning a
  // round. Fallback members keep domination deterministic but are the only
  // members allowed to violate independence.
  bool fallback_member(Vertex v);

  Vertex anchor() const { return 1; }
  const DiamDerived& derived() const { return derived_; }
  ModConnectedOracle& base() { return modconn_; }
  CorrectedNeighborOracle& corrected() { return corrected_; }
  OracleHandle& handle() { return modconn_.handle(); }

 private:
  bool high_degree_unlocked(Vertex v);
  const Ball& ball_unlocked(Vertex v);
  bool clean_unlocked(Vertex v);
  int mis_unlocked(Vertex v);
  void simulate_component(Vertex v);

  int n_;
  DiamConfig cfg_;
  DiamDerived derived_;
  ModConnectedOracle modconn_;
  CorrectedNeighborOracle corrected_;
  RandomSource coins_;
  std::vector<std::optional<Ball>> balls_;
  std::vector<signed char> status_;  // 0 unknown, 1 joined, 2 excluded, 3 fallback-joined
  std::mutex mu_;
};

/// Adjacency surface of the bounded-diameter correction. All additions are
/// incident to the anchor, so every other list is the G' list plus at most
/// the anchor; the anchor's list is completed by a vertex scan.
class SmallDiamNeighborOracle : public NeighborOracle {
 public:
  explicit SmallDiamNeighborOracle(SmallDiamOracle& oracle);

  int degree(Vertex v) override;
  Vertex neighbor(Vertex v, int i) override;  // 1-based

  const std::vector<Vertex>& corrected_list(Vertex v);

 private:
  SmallDiamOracle& oracle_;
  int n_;
  std::vector<std::optional<std::vector<Vertex>>> lists_;
  std::mutex mu_;
};

}  // namespace grepair
