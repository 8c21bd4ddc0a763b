#include "grepair/recon_strong.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grepair/error.hpp"
#include "grepair/exact.hpp"

namespace grepair {

namespace {

constexpr double kCeilTolerance = 1e-9;

struct Scratch {
  std::vector<std::uint32_t> stamp;
  std::vector<int> local;
  std::uint32_t epoch = 0;
};

Scratch& scratch_for(int n) {
  thread_local Scratch s;
  if (static_cast<int>(s.stamp.size()) < n + 1) {
    s.stamp.resize(n + 1, 0);
    s.local.resize(n + 1, 0);
  }
  if (++s.epoch == 0) {
    std::fill(s.stamp.begin(), s.stamp.end(), 0);
    s.epoch = 1;
  }
  return s;
}

struct ReachResult {
  bool truncated = false;
  std::vector<Vertex> order;            // discovery order, root first
  std::vector<std::vector<int>> adj;    // probed arcs as local indices; complete iff !truncated
  RankPair best{2.0, 0};
};

ReachResult bounded_dfs(OracleHandle& h, const RandomSource& ranks, Vertex root, int cap,
                        std::int64_t budget, bool forward) {
  Scratch& s = scratch_for(h.graph().vertex_count());
  ReachResult r;
  std::int64_t spent = 0;

  auto discover = [&](Vertex v) {
    s.stamp[v] = s.epoch;
    s.local[v] = static_cast<int>(r.order.size());
    r.order.push_back(v);
    r.adj.emplace_back();
    r.best = std::min(r.best, ranks.rank(v));
  };
  discover(root);
  if (cap <= 1) {
    r.truncated = true;
    return r;
  }

  struct Frame {
    Vertex v;
    int next;
    int deg;
  };
  std::vector<Frame> stack;
  auto push_frame = [&](Vertex v) {
    if (spent >= budget) return false;
    int deg = forward ? h.out_degree(v) : h.in_degree(v);
    ++spent;
    stack.push_back(Frame{v, 1, deg});
    return true;
  };
  if (!push_frame(root)) {
    r.truncated = true;
    return r;
  }

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next > f.deg) {
      stack.pop_back();
      continue;
    }
    if (spent >= budget) {
      r.truncated = true;
      return r;
    }
    Vertex y = forward ? h.out_neighbor(f.v, f.next) : h.in_neighbor(f.v, f.next);
    ++spent;
    ++f.next;
    int from = s.local[f.v];
    if (s.stamp[y] == s.epoch) {
      r.adj[from].push_back(s.local[y]);
      continue;
    }
    discover(y);
    r.adj[from].push_back(s.local[y]);
    if (static_cast<int>(r.order.size()) >= cap) {
      r.truncated = true;
      return r;
    }
    if (!push_frame(y)) {
      r.truncated = true;
      return r;
    }
  }
  return r;
}

// The explored set is forward- (or backward-) closed, so its probed arcs are
// exactly the induced subgraph; SCC structure is reversal-invariant, letting
// the backward case reuse the same check.
bool single_component(const ReachResult& r) {
  int n = static_cast<int>(r.order.size());
  if (n == 1) return true;
  EdgeList arcs;
  for (int i = 0; i < n; ++i)
    for (int t : r.adj[i]) arcs.emplace_back(i + 1, t + 1);
  SparseGraph sub = SparseGraph::directed(
      n, std::max<std::int64_t>(n, static_cast<std::int64_t>(arcs.size())), arcs);
  return is_strongly_connected(sub);
}

bool undirected_leader(OracleHandle& h, const RandomSource& ranks, Vertex w, int cap,
                       std::int64_t budget) {
  Scratch& s = scratch_for(h.graph().vertex_count());
  std::vector<Vertex> queue;
  queue.push_back(w);
  s.stamp[w] = s.epoch;
  RankPair root = ranks.rank(w);
  RankPair best = root;
  int collected = 1;
  std::int64_t spent = 0;

  auto visit = [&](Vertex y) {
    if (s.stamp[y] == s.epoch) return;
    s.stamp[y] = s.epoch;
    queue.push_back(y);
    ++collected;
    best = std::min(best, ranks.rank(y));
  };

  for (std::size_t head = 0; head < queue.size() && collected < cap && spent < budget; ++head) {
    Vertex x = queue[head];
    int out = h.out_degree(x);
    ++spent;
    for (int i = 1; i <= out && collected < cap && spent < budget; ++i) {
      visit(h.out_neighbor(x, i));
      ++spent;
    }
    if (collected >= cap || spent >= budget) break;
    int in = h.in_degree(x);
    ++spent;
    for (int i = 1; i <= in && collected < cap && spent < budget; ++i) {
      visit(h.in_neighbor(x, i));
      ++spent;
    }
  }
  return best == root;
}

}  // namespace

int derive_reach_cap(const StrongConfig& cfg, std::int64_t m_bound) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ParameterError("epsilon must lie in (0,1)");
  if (!(cfg.alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
  double den = cfg.delta * cfg.alpha * cfg.epsilon * static_cast<double>(m_bound) / 2.0 - 1.0;
  if (!(den > 0.0))
    throw ParameterError("edge budget too small: delta*alpha*epsilon*m/2 must exceed 1");
  int cap = static_cast<int>(std::ceil(static_cast<double>(m_bound) / den - kCeilTolerance));
  if (cap < 2) throw ParameterError("derived reach cap below 2; relax alpha or delta");
  return cap;
}

bool in_small_sink(OracleHandle& h, Vertex v, int cap) {
  h.graph().check_vertex(v);
  RandomSource unused(0, Stream::VertexRank, 0);
  ReachResult r =
      bounded_dfs(h, unused, v, cap, std::numeric_limits<std::int64_t>::max(), /*forward=*/true);
  return !r.truncated && single_component(r);
}

bool in_small_source(OracleHandle& h, Vertex v, int cap) {
  h.graph().check_vertex(v);
  RandomSource unused(0, Stream::VertexRank, 0);
  ReachResult r =
      bounded_dfs(h, unused, v, cap, std::numeric_limits<std::int64_t>::max(), /*forward=*/false);
  return !r.truncated && single_component(r);
}

StronglyConnectedOracle::StronglyConnectedOracle(const SparseGraph& g, const StrongConfig& cfg)
    : handle_(g),
      ranks_(cfg.seed, Stream::VertexRank, 0),
      reach_cap_(derive_reach_cap(cfg, g.edge_bound())),
      transmit_memo_(g.vertex_count() + 1, -1),
      receive_memo_(g.vertex_count() + 1, -1) {
  if (!g.is_directed())
    throw WrongGraphKind("strong connectivity correction expects a directed graph");
}

bool StronglyConnectedOracle::transmitter(Vertex w, std::int64_t budget) {
  std::uint64_t start = handle_.query_count();
  ReachResult r = bounded_dfs(handle_, ranks_, w, reach_cap_, budget, /*forward=*/true);
  if (r.truncated || single_component(r)) return r.best == ranks_.rank(w);
  std::int64_t left = budget - static_cast<std::int64_t>(handle_.query_count() - start);
  return undirected_leader(handle_, ranks_, w, reach_cap_, std::max<std::int64_t>(left, 0));
}

bool StronglyConnectedOracle::receiver(Vertex w, std::int64_t budget) {
  std::uint64_t start = handle_.query_count();
  ReachResult r = bounded_dfs(handle_, ranks_, w, reach_cap_, budget, /*forward=*/false);
  if (r.truncated || single_component(r)) return r.best == ranks_.rank(w);
  std::int64_t left = budget - static_cast<std::int64_t>(handle_.query_count() - start);
  return undirected_leader(handle_, ranks_, w, reach_cap_, std::max<std::int64_t>(left, 0));
}

int StronglyConnectedOracle::arc(Vertex u, Vertex v) {
  const SparseGraph& g = handle_.graph();
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw QueryViolation("degenerate query (u == v)");
  std::uint64_t before = handle_.query_count();
  if (probe_arc(handle_, u, v)) return 1;
  if (u != anchor() && v != anchor()) return 0;
  std::int64_t spent = static_cast<std::int64_t>(handle_.query_count() - before);
  std::scoped_lock lock(mu_);
  if (v == anchor()) {
    signed char& memo = transmit_memo_[u];
    if (memo < 0) memo = transmitter(u, probe_budget() - spent) ? 1 : 0;
    return memo;
  }
  signed char& memo = receive_memo_[v];
  if (memo < 0) memo = receiver(v, probe_budget() - spent) ? 1 : 0;
  return memo;
}

SparseGraph materialize_strong(StronglyConnectedOracle& oracle) {
  const SparseGraph& g = oracle.handle().graph();
  const int n = g.vertex_count();
  EdgeList arcs;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = 1; v <= n; ++v) {
      if (u != v && oracle.arc(u, v)) arcs.push_back({u, v});
    }
  }
  return SparseGraph::directed(n, g.edge_bound(), arcs, /*allow_excess_edges=*/true);
}

namespace {

std::vector<Vertex> corrected_arc_list(StronglyConnectedOracle& oracle, Vertex v,
                                       bool outgoing) {
  OracleHandle& h = oracle.handle();
  h.graph().check_vertex(v);
  const int n = h.graph().vertex_count();
  const Vertex v0 = oracle.anchor();
  std::vector<Vertex> list;
  const int deg = outgoing ? h.out_degree(v) : h.in_degree(v);
  list.reserve(static_cast<std::size_t>(deg));
  for (int i = 1; i <= deg; ++i) {
    list.push_back(outgoing ? h.out_neighbor(v, i) : h.in_neighbor(v, i));
  }
  auto present = [&list](Vertex w) {
    return std::find(list.begin(), list.end(), w) != list.end();
  };
  auto corrected = [&oracle, outgoing](Vertex a, Vertex b) {
    return outgoing ? oracle.arc(a, b) : oracle.arc(b, a);
  };
  if (v == v0) {
    for (Vertex w = 1; w <= n; ++w) {
      if (w == v0 || present(w)) continue;
      if (corrected(v0, w)) list.push_back(w);
    }
  } else if (!present(v0) && corrected(v, v0)) {
    list.push_back(v0);
  }
  return list;
}

}  // namespace

std::vector<Vertex> corrected_out_list(StronglyConnectedOracle& oracle, Vertex v) {
  return corrected_arc_list(oracle, v, /*outgoing=*/true);
}

std::vector<Vertex> corrected_in_list(StronglyConnectedOracle& oracle, Vertex v) {
  return corrected_arc_list(oracle, v, /*outgoing=*/false);
}

SparseGraph materialize_strong_from_neighbors(StronglyConnectedOracle& oracle) {
  const SparseGraph& g = oracle.handle().graph();
  const int n = g.vertex_count();
  EdgeList from_out;
  EdgeList from_in;
  for (Vertex v = 1; v <= n; ++v) {
    for (Vertex w : corrected_out_list(oracle, v)) from_out.push_back({v, w});
    for (Vertex w : corrected_in_list(oracle, v)) from_in.push_back({w, v});
  }
  std::sort(from_out.begin(), from_out.end());
  std::sort(from_in.begin(), from_in.end());
  if (from_out != from_in)
    throw VerificationError("out-lists and in-lists describe different arc sets");
  return SparseGraph::directed(n, g.edge_bound(), from_out, /*allow_excess_edges=*/true);
}

}  // namespace grepair
