#pragma once

#include <cstdint>
#include <string>

#include "grepair/graph.hpp"

namespace grepair {

// A corrupted instance with machine-checkable distance evidence. `removed`
// lists the deleted pairs (arcs for digraphs); re-adding them restores the
// property, so removed.size()/m upper-bounds the distance. When the corruptor
// can pin the distance exactly (connectivity, strong connectivity) the
// certificate says so and `property_distance` is exact.
struct Corruption {
  SparseGraph graph;
  EdgeList removed;
  double property_distance = 0.0;  // certified distance to the property
  bool distance_exact = false;
  std::string certificate;
};

// Cuts a connected graph into exactly `target_components` components by
// isolating spanning-tree leaves; the distance to connectivity is exactly
// (target_components - 1)/m.
Corruption corrupt_connectivity(const SparseGraph& g, int target_components,
                                std::uint64_t seed);

// Strips the in-arcs of `sources` chosen vertices and the out-arcs of
// `sinks` other chosen vertices of a strongly connected digraph, then
// verifies the condensation has exactly those source/sink components plus one
// core; the distance to strong connectivity is exactly max(sources, sinks)/m.
Corruption corrupt_strong(const SparseGraph& g, int sources, int sinks,
                          std::uint64_t seed);

// Downgrades `downgrades` chosen vertices of a k-edge-connected graph to
// degree k-1, leaving edge connectivity exactly k-1 (verified); the removed
// set certifies an upper bound on the distance.
Corruption corrupt_kconn(const SparseGraph& g, int k, int downgrades,
                         std::uint64_t seed);

// Removes `spokes` hub-incident edges of a low-diameter graph (keeping every
// endpoint at degree >= 1); re-adding them restores diameter <= D, an
// upper-bound certificate.
Corruption corrupt_diameter(const SparseGraph& g, int spokes, std::uint64_t seed);

}  // namespace grepair
