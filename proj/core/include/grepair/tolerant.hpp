#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grepair/graph.hpp"
#include "grepair/oracle.hpp"
#include "grepair/recon_connect.hpp"
#include "grepair/recon_diameter.hpp"
#include "grepair/recon_kconn.hpp"
#include "grepair/recon_strong.hpp"

namespace grepair {

// A property tester packaged for the combinator: a verdict procedure over
// some oracle surface, the parameter blowup it incurs, and what it declares
// about its own cost.
struct TesterSpec {
  std::string property;
  std::function<bool(double)> run;  // epsilon' -> accept
  double epsilon_prime = 0.05;
  std::int64_t declared_budget = 0;  // 0 = unspecified
  bool sublinear = true;
};

struct ToleranceParams {
  double epsilon1 = 0.02;
  double epsilon2 = 0.04;
  double beta = 0.02;
  bool structured = true;            // false = literal uniform-pair estimator
  std::int64_t sample_override = 0;  // 0 = derived sample count
};

// What the distance estimator needs from a reconstructor. All four
// reconstructors add edges only incident to their super-node set, so the
// estimator can confine its probes to the few candidate partners of each
// sampled vertex plus an exactly enumerated deterministic part (chain, ring
// and anchor-to-super edges).
struct ReconSurface {
  int n = 0;
  std::int64_t m_bound = 0;
  bool directed = false;
  std::vector<Vertex> super_nodes;  // ascending
  int k_max = 1;  // max correction pairs incident to one non-super vertex
  // Count of corrected-vs-input differing pairs incident to a non-super
  // vertex (its super-node partners only).
  std::function<int(Vertex)> added_incident;
  // Differing-pair predicate for the literal estimator: unordered pair for
  // graphs, ordered for digraphs.
  std::function<bool(Vertex, Vertex)> pair_differs;
  std::int64_t deterministic_added = 0;  // super-super additions, exact
};

ReconSurface surface_for(ConnectedOracle& oracle);
ReconSurface surface_for(ModConnectedOracle& oracle);
ReconSurface surface_for(KConnStack& stack);
ReconSurface surface_for(SmallDiamOracle& oracle);
ReconSurface surface_for(StronglyConnectedOracle& oracle);

struct DistanceEstimate {
  double value = 0.0;
  std::int64_t samples = 0;
};

// Additive beta/2 estimate of dist(G, corrected G) with probability >= 5/6.
// Structured mode samples vertices and probes only their candidate partners;
// the summands are bounded by k_max, so a Hoeffding sample count suffices.
// Uniform-pair mode is the literal pair sampler at the same sample count.
DistanceEstimate estimate_reconstruction_distance(const ReconSurface& surface,
                                                  const ToleranceParams& params,
                                                  std::uint64_t seed);

struct ConnectivityTestReport {
  bool accept = true;
  std::int64_t samples = 0;      // vertices sampled
  int ball_cap = 0;              // component-size threshold B
  std::int64_t oracle_calls = 0;  // neighbor-oracle calls spent
};

// One-sided sublinear connectivity tester: sample ceil(6n/(eps*m)) vertices,
// BFS each until B+1 = ceil(2n/(eps*m))+1 vertices are seen, reject iff some
// BFS exhausts a component of at most B vertices. Connected inputs are always
// accepted; eps-far inputs are rejected with probability >= 2/3.
ConnectivityTestReport connectivity_tester(NeighborOracle& surface, int n,
                                           std::int64_t m_bound, double epsilon,
                                           std::uint64_t seed);

// TesterSpec wrappers. The connectivity one is the genuine sublinear tester;
// the exact ones fully verify the materialized corrected graph and are marked
// non-sublinear.
TesterSpec connectivity_tester_spec(NeighborOracle& surface, int n,
                                    std::int64_t m_bound, std::uint64_t seed);
TesterSpec exact_strong_tester(std::function<SparseGraph()> materialize);
TesterSpec exact_kconn_tester(std::function<SparseGraph()> materialize, int k);
TesterSpec exact_diameter_tester(std::function<SparseGraph()> materialize,
                                 int diameter_bound);

struct TolerantVerdict {
  bool accept = false;
  double estimate = 0.0;
  bool estimator_rejected = false;
};

// Reconstructor-to-tolerant-tester combinator: estimate dist(G, corrected G),
// reject outright if the estimate exceeds epsilon2 + beta/2, otherwise defer
// to the tester run against the corrected surface.
TolerantVerdict tolerant_tester(const ReconSurface& surface,
                                const TesterSpec& tester,
                                const ToleranceParams& params,
                                std::uint64_t seed);

}  // namespace grepair
