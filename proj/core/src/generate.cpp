#include "grepair/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/random.hpp"

namespace grepair {

namespace {

constexpr int kRetries = 16;

// Fills with distinct random pairs (ordered for digraphs) until the edge list
// reaches target size; never emits self-loops or duplicates.
void fill_random_pairs(EdgeList& edges, std::set<std::pair<Vertex, Vertex>>& present,
                       int n, std::int64_t target, bool directed, Rng& rng) {
  const double complete =
      directed ? static_cast<double>(n) * (n - 1)
               : static_cast<double>(n) * (n - 1) / 2.0;
  if (static_cast<double>(target) > complete)
    throw ParameterError("edge target exceeds the complete graph");
  while (static_cast<std::int64_t>(edges.size()) < target) {
    Vertex a = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n)));
    Vertex b = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    if (!directed && a > b) std::swap(a, b);
    if (present.insert({a, b}).second) edges.push_back({a, b});
  }
}

SparseGraph build_connected(const GenSpec& spec, Rng& rng) {
  EdgeList edges;
  std::set<std::pair<Vertex, Vertex>> present;
  for (Vertex v = 2; v <= spec.n; ++v) {
    const Vertex parent =
        static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(v - 1)));
    edges.push_back({parent, v});
    present.insert({parent, v});
  }
  fill_random_pairs(edges, present, spec.n, spec.m_bound, false, rng);
  SparseGraph g = SparseGraph::undirected(spec.n, spec.m_bound, edges);
  if (!is_connected(g)) throw VerificationError("generated graph is not connected");
  return g;
}

SparseGraph build_kconnected(const GenSpec& spec, Rng& rng) {
  if (spec.k < 1) throw ParameterError("k must be at least 1");
  const int width = (spec.k + 1) / 2;
  if (spec.n < 2 * width + 1)
    throw ParameterError("ring needs at least 2*ceil(k/2)+1 vertices");
  EdgeList edges;
  std::set<std::pair<Vertex, Vertex>> present;
  for (Vertex v = 1; v <= spec.n; ++v) {
    for (int d = 1; d <= width; ++d) {
      Vertex w = static_cast<Vertex>((v - 1 + d) % spec.n + 1);
      Vertex a = std::min(v, w);
      Vertex b = std::max(v, w);
      if (present.insert({a, b}).second) edges.push_back({a, b});
    }
  }
  if (static_cast<std::int64_t>(edges.size()) > spec.m_bound)
    throw ParameterError("m_bound below the ring size");
  fill_random_pairs(edges, present, spec.n, spec.m_bound, false, rng);
  SparseGraph g = SparseGraph::undirected(spec.n, spec.m_bound, edges);
  if (edge_connectivity(g) < spec.k)
    throw VerificationError("generated graph is not k-edge-connected");
  return g;
}

SparseGraph build_strong(const GenSpec& spec, Rng& rng) {
  std::vector<Vertex> order(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  for (int i = spec.n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  EdgeList arcs;
  std::set<std::pair<Vertex, Vertex>> present;
  for (int i = 0; i < spec.n; ++i) {
    const Vertex a = order[static_cast<std::size_t>(i)];
    const Vertex b = order[static_cast<std::size_t>((i + 1) % spec.n)];
    arcs.push_back({a, b});
    present.insert({a, b});
  }
  fill_random_pairs(arcs, present, spec.n, spec.m_bound, true, rng);
  SparseGraph g = SparseGraph::directed(spec.n, spec.m_bound, arcs);
  if (!is_strongly_connected(g))
    throw VerificationError("generated digraph is not strongly connected");
  return g;
}

SparseGraph build_low_diameter(const GenSpec& spec, Rng& rng) {
  if (spec.diameter < 1) throw ParameterError("diameter target must be at least 1");
  EdgeList edges;
  std::set<std::pair<Vertex, Vertex>> present;
  auto add = [&edges, &present](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    if (present.insert({a, b}).second) edges.push_back({a, b});
  };
  if (spec.diameter == 1) {
    for (Vertex a = 1; a <= spec.n; ++a)
      for (Vertex b = a + 1; b <= spec.n; ++b) add(a, b);
  } else {
    // Hub clique with spokes spread round-robin: spoke-hub-hub-spoke paths
    // bound the diameter by 3, and a single hub bounds it by 2.
    const int hubs =
        spec.diameter == 2
            ? 1
            : std::max(2, static_cast<int>(std::ceil(spec.n / 64.0)));
    const int h = std::min(hubs, spec.n);
    for (Vertex a = 1; a <= h; ++a)
      for (Vertex b = a + 1; b <= h; ++b) add(a, b);
    for (Vertex v = static_cast<Vertex>(h) + 1; v <= spec.n; ++v)
      add(static_cast<Vertex>((v - h - 1) % h + 1), v);
  }
  if (static_cast<std::int64_t>(edges.size()) > spec.m_bound)
    throw ParameterError("m_bound below the hub construction size");
  fill_random_pairs(edges, present, spec.n, spec.m_bound, false, rng);
  SparseGraph g = SparseGraph::undirected(spec.n, spec.m_bound, edges);
  const auto d = exact_diameter(g);
  if (!d || *d > spec.diameter)
    throw VerificationError("generated graph misses the diameter target");
  return g;
}

}  // namespace

SparseGraph generate(const GenSpec& spec) {
  if (spec.n < 2) throw ParameterError("generator needs at least two vertices");
  if (spec.m_bound < spec.n)
    throw ParameterError("edge bound must be at least n");
  VerificationError last("generation failed");
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Rng rng(spec.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
    try {
      switch (spec.kind) {
        case GraphKind::Connected:
          return build_connected(spec, rng);
        case GraphKind::KConnected:
          return build_kconnected(spec, rng);
        case GraphKind::StronglyConnected:
          return build_strong(spec, rng);
        case GraphKind::LowDiameter:
          return build_low_diameter(spec, rng);
      }
      throw ParameterError("unknown graph kind");
    } catch (const VerificationError& e) {
      last = e;
    }
  }
  throw last;
}

}  // namespace grepair
