#include "grepair/tolerant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_set>
#include <utility>

#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/random.hpp"

namespace grepair {

namespace {

constexpr double kCeilTolerance = 1e-9;

void validate_params(const ToleranceParams& p) {
  if (!(p.beta > 0.0)) throw ParameterError("beta must be positive");
  if (p.epsilon1 < 0.0) throw ParameterError("epsilon1 must be nonnegative");
  if (p.epsilon1 > p.epsilon2)
    throw ParameterError("epsilon1 must not exceed epsilon2");
}

std::int64_t derived_sample_count(const ReconSurface& s, const ToleranceParams& p) {
  if (p.sample_override > 0) return p.sample_override;
  const double k = static_cast<double>(s.k_max);
  const double base =
      std::ceil(8.0 * k * k * std::log(12.0) / (p.beta * p.beta) - kCeilTolerance);
  const double ratio = std::ceil(static_cast<double>(s.n) /
                                     static_cast<double>(s.m_bound) -
                                 kCeilTolerance);
  return static_cast<std::int64_t>(base * ratio * ratio);
}

}  // namespace

DistanceEstimate estimate_reconstruction_distance(const ReconSurface& surface,
                                                  const ToleranceParams& params,
                                                  std::uint64_t seed) {
  validate_params(params);
  if (surface.n < 2 || surface.m_bound < surface.n)
    throw ParameterError("surface must describe a graph with m_bound >= n >= 2");
  if (params.structured && !surface.added_incident)
    throw ParameterError("structured estimation needs an added_incident probe");
  if (!params.structured && !surface.pair_differs)
    throw ParameterError("uniform-pair estimation needs a pair_differs probe");

  const std::int64_t s = derived_sample_count(surface, params);
  const double m = static_cast<double>(surface.m_bound);
  const double n = static_cast<double>(surface.n);
  Rng rng(seed);
  DistanceEstimate out;
  out.samples = s;

  if (params.structured) {
    // Per-vertex memo: resampling a vertex reuses its probe result.
    std::vector<int> memo(static_cast<std::size_t>(surface.n) + 1, -1);
    std::int64_t sum = 0;
    for (std::int64_t i = 0; i < s; ++i) {
      const Vertex u = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(surface.n)));
      if (std::binary_search(surface.super_nodes.begin(), surface.super_nodes.end(), u))
        continue;  // super-node draws contribute zero
      int& slot = memo[static_cast<std::size_t>(u)];
      if (slot < 0) slot = surface.added_incident(u);
      sum += slot;
    }
    out.value = (n / static_cast<double>(s)) * static_cast<double>(sum) / m +
                static_cast<double>(surface.deterministic_added) / m;
    return out;
  }

  std::int64_t differing = 0;
  for (std::int64_t i = 0; i < s; ++i) {
    const Vertex a = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(surface.n)));
    Vertex b = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(surface.n - 1)));
    if (b >= a) ++b;
    const Vertex lo = std::min(a, b);
    const Vertex hi = std::max(a, b);
    const bool diff = surface.directed ? surface.pair_differs(a, b)
                                       : surface.pair_differs(lo, hi);
    if (diff) ++differing;
  }
  const double total_pairs =
      surface.directed ? n * (n - 1.0) : n * (n - 1.0) / 2.0;
  out.value = total_pairs * static_cast<double>(differing) /
              (static_cast<double>(s) * m);
  return out;
}

ConnectivityTestReport connectivity_tester(NeighborOracle& surface, int n,
                                           std::int64_t m_bound, double epsilon,
                                           std::uint64_t seed) {
  if (n < 1) throw ParameterError("graph must be nonempty");
  const double m = static_cast<double>(m_bound);
  if (!(epsilon * m > 2.0))
    throw ParameterError("epsilon * m_bound must exceed 2");

  ConnectivityTestReport report;
  report.ball_cap = static_cast<int>(
      std::ceil(2.0 * static_cast<double>(n) / (epsilon * m) - kCeilTolerance));
  report.samples = static_cast<std::int64_t>(
      std::ceil(6.0 * static_cast<double>(n) / (epsilon * m) - kCeilTolerance));
  if (report.ball_cap < 1) report.ball_cap = 1;
  if (report.samples < 1) report.samples = 1;

  Rng rng(seed);
  const int cap = report.ball_cap;
  for (std::int64_t trial = 0; trial < report.samples; ++trial) {
    const Vertex start =
        static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n)));
    std::unordered_set<Vertex> seen;
    std::queue<Vertex> queue;
    seen.insert(start);
    queue.push(start);
    bool big = false;
    while (!queue.empty() && !big) {
      const Vertex u = queue.front();
      queue.pop();
      const int deg = surface.degree(u);
      ++report.oracle_calls;
      for (int i = 1; i <= deg && !big; ++i) {
        const Vertex w = surface.neighbor(u, i);
        ++report.oracle_calls;
        if (seen.insert(w).second) {
          queue.push(w);
          if (static_cast<int>(seen.size()) > cap) big = true;
        }
      }
    }
    if (!big && static_cast<int>(seen.size()) <= cap) {
      report.accept = false;
      return report;
    }
  }
  return report;
}

TesterSpec connectivity_tester_spec(NeighborOracle& surface, int n,
                                    std::int64_t m_bound, std::uint64_t seed) {
  TesterSpec spec;
  spec.property = "connectivity";
  spec.sublinear = true;
  NeighborOracle* s = &surface;
  spec.run = [s, n, m_bound, seed](double eps) {
    return connectivity_tester(*s, n, m_bound, eps, seed).accept;
  };
  return spec;
}

TesterSpec exact_strong_tester(std::function<SparseGraph()> materialize) {
  TesterSpec spec;
  spec.property = "strong-connectivity";
  spec.sublinear = false;
  spec.run = [mat = std::move(materialize)](double) {
    return is_strongly_connected(mat());
  };
  return spec;
}

TesterSpec exact_kconn_tester(std::function<SparseGraph()> materialize, int k) {
  TesterSpec spec;
  spec.property = "k-edge-connectivity";
  spec.sublinear = false;
  spec.run = [mat = std::move(materialize), k](double) {
    return edge_connectivity(mat()) >= k;
  };
  return spec;
}

TesterSpec exact_diameter_tester(std::function<SparseGraph()> materialize,
                                 int diameter_bound) {
  TesterSpec spec;
  spec.property = "bounded-diameter";
  spec.sublinear = false;
  spec.run = [mat = std::move(materialize), diameter_bound](double) {
    const auto d = exact_diameter(mat());
    return d.has_value() && *d <= diameter_bound;
  };
  return spec;
}

TolerantVerdict tolerant_tester(const ReconSurface& surface,
                                const TesterSpec& tester,
                                const ToleranceParams& params,
                                std::uint64_t seed) {
  validate_params(params);
  if (!tester.run) throw ParameterError("tester has no procedure");
  TolerantVerdict verdict;
  const DistanceEstimate est =
      estimate_reconstruction_distance(surface, params, seed);
  verdict.estimate = est.value;
  if (est.value > params.epsilon2 + params.beta / 2.0) {
    verdict.estimator_rejected = true;
    verdict.accept = false;
    return verdict;
  }
  verdict.accept = tester.run(tester.epsilon_prime);
  return verdict;
}

ReconSurface surface_for(ConnectedOracle& oracle) {
  ReconSurface s;
  const SparseGraph& g = oracle.handle().graph();
  s.n = g.vertex_count();
  s.m_bound = g.edge_bound();
  s.super_nodes = {oracle.anchor()};
  s.k_max = 1;
  ConnectedOracle* op = &oracle;
  OracleHandle* h = &oracle.handle();
  const Vertex v0 = oracle.anchor();
  s.added_incident = [op, h, v0](Vertex u) {
    return op->edge(u, v0) == 1 && !probe_edge(*h, u, v0) ? 1 : 0;
  };
  s.pair_differs = [op, h](Vertex a, Vertex b) {
    return op->edge(a, b) != (probe_edge(*h, a, b) ? 1 : 0);
  };
  return s;
}

ReconSurface surface_for(ModConnectedOracle& oracle) {
  ReconSurface s;
  const SparseGraph& g = oracle.handle().graph();
  s.n = g.vertex_count();
  s.m_bound = g.edge_bound();
  const int n0 = oracle.super_count();
  s.super_nodes.resize(static_cast<std::size_t>(n0));
  for (int i = 0; i < n0; ++i) s.super_nodes[static_cast<std::size_t>(i)] = i + 1;
  s.k_max = 1;
  ModConnectedOracle* op = &oracle;
  OracleHandle* h = &oracle.handle();
  s.added_incident = [op, h](Vertex u) {
    const Vertex b = op->bucket_super(u);
    return op->edge(u, b) == 1 && !probe_edge(*h, u, b) ? 1 : 0;
  };
  s.pair_differs = [op, h](Vertex a, Vertex b) {
    return op->edge(a, b) != (probe_edge(*h, a, b) ? 1 : 0);
  };
  for (Vertex i = 1; i < n0; ++i) {
    if (!probe_edge(*h, i, i + 1)) ++s.deterministic_added;  // chain edge
  }
  return s;
}

ReconSurface surface_for(KConnStack& stack) {
  ReconSurface s;
  s.n = stack.vertex_count();
  s.m_bound = stack.handle().graph().edge_bound();
  const int n0 = stack.derived().super_count;
  const int k = stack.config().k;
  s.super_nodes.resize(static_cast<std::size_t>(n0));
  for (int i = 0; i < n0; ++i) s.super_nodes[static_cast<std::size_t>(i)] = i + 1;
  s.k_max = k;
  KConnStack* st = &stack;
  OracleHandle* h = &stack.handle();
  s.added_incident = [st, h, k](Vertex u) {
    int count = 0;
    for (Vertex w : st->hash_set(u)) {
      if (st->edge(k, u, w) == 1 && !probe_edge(*h, u, w)) ++count;
    }
    return count;
  };
  s.pair_differs = [st, h, k](Vertex a, Vertex b) {
    return st->edge(k, a, b) != (probe_edge(*h, a, b) ? 1 : 0);
  };
  const int width = stack.derived().ring_width;
  for (Vertex w = 1; w <= n0; ++w) {
    for (Vertex x : ring_neighbors(w, n0, width)) {
      if (x > w && !probe_edge(*h, w, x)) ++s.deterministic_added;
    }
  }
  return s;
}

ReconSurface surface_for(SmallDiamOracle& oracle) {
  ReconSurface s;
  const SparseGraph& g = oracle.handle().graph();
  s.n = g.vertex_count();
  s.m_bound = g.edge_bound();
  const int n0 = oracle.base().super_count();
  s.super_nodes.resize(static_cast<std::size_t>(n0));
  for (int i = 0; i < n0; ++i) s.super_nodes[static_cast<std::size_t>(i)] = i + 1;
  s.k_max = 2;
  SmallDiamOracle* op = &oracle;
  OracleHandle* h = &oracle.handle();
  const Vertex v0 = oracle.anchor();
  s.added_incident = [op, h, v0](Vertex u) {
    int count = 0;
    const Vertex b = op->base().bucket_super(u);
    if (op->edge(u, b) == 1 && !probe_edge(*h, u, b)) ++count;
    if (b != v0 && op->edge(u, v0) == 1 && !probe_edge(*h, u, v0)) ++count;
    return count;
  };
  s.pair_differs = [op, h](Vertex a, Vertex b) {
    return op->edge(a, b) != (probe_edge(*h, a, b) ? 1 : 0);
  };
  for (Vertex i = 1; i < n0; ++i) {
    if (!probe_edge(*h, i, i + 1)) ++s.deterministic_added;  // chain edge
  }
  for (Vertex b = 3; b <= n0; ++b) {  // anchor edges to supers; (1,2) is chain
    if (op->edge(v0, b) == 1 && !probe_edge(*h, v0, b)) ++s.deterministic_added;
  }
  return s;
}

ReconSurface surface_for(StronglyConnectedOracle& oracle) {
  ReconSurface s;
  const SparseGraph& g = oracle.handle().graph();
  s.n = g.vertex_count();
  s.m_bound = g.edge_bound();
  s.directed = true;
  s.super_nodes = {oracle.anchor()};
  s.k_max = 2;
  StronglyConnectedOracle* op = &oracle;
  OracleHandle* h = &oracle.handle();
  const Vertex v0 = oracle.anchor();
  s.added_incident = [op, h, v0](Vertex u) {
    int count = 0;
    if (op->arc(u, v0) == 1 && !probe_arc(*h, u, v0)) ++count;
    if (op->arc(v0, u) == 1 && !probe_arc(*h, v0, u)) ++count;
    return count;
  };
  s.pair_differs = [op, h](Vertex a, Vertex b) {
    return op->arc(a, b) != (probe_arc(*h, a, b) ? 1 : 0);
  };
  return s;
}

}  // namespace grepair
