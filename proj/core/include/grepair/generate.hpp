#pragma once

#include <cstdint>

#include "grepair/graph.hpp"

namespace grepair {

enum class GraphKind {
  Connected,          // random spanning tree plus random extra edges
  KConnected,         // successor ring of width ceil(k/2) plus random chords
  StronglyConnected,  // random Hamiltonian cycle plus random extra arcs
  LowDiameter,        // hub clique with spokes plus random extra edges
};

struct GenSpec {
  GraphKind kind = GraphKind::Connected;
  int n = 0;
  std::int64_t m_bound = 0;
  int k = 2;         // KConnected target
  int diameter = 3;  // LowDiameter target
  std::uint64_t seed = 0;
};

// Deterministic per seed. The target property is verified before the graph is
// emitted; a construction that fails its verifier after bounded retries
// raises VerificationError. Edge counts saturate m_bound.
SparseGraph generate(const GenSpec& spec);

}  // namespace grepair
