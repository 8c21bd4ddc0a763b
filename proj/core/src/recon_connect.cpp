#include "grepair/recon_connect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grepair/error.hpp"

namespace grepair {

namespace {

constexpr double kCeilTolerance = 1e-9;

void validate_common(const ConnConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ParameterError("epsilon must lie in (0,1)");
  if (!(cfg.alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
}

void check_pair(const SparseGraph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw QueryViolation("degenerate query (u == v)");
}

}  // namespace

int scaled_ceil(std::int64_t x, double c) {
  return static_cast<int>(std::ceil(static_cast<double>(x) * c - kCeilTolerance));
}

int derive_ball_cap(const ConnConfig& cfg, std::int64_t m_bound) {
  validate_common(cfg);
  double den = cfg.delta * cfg.alpha * cfg.epsilon * static_cast<double>(m_bound) - 1.0;
  if (!(den > 0.0))
    throw ParameterError("edge budget too small: delta*alpha*epsilon*m must exceed 1");
  int cap = static_cast<int>(std::ceil(static_cast<double>(m_bound) / den - kCeilTolerance));
  if (cap < 2) throw ParameterError("derived ball cap below 2; relax alpha or delta");
  return cap;
}

LeaderBall ball_leader(OracleHandle& h, const RandomSource& ranks, Vertex w, int cap,
                       std::int64_t probe_budget) {
  struct Scratch {
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;
    std::vector<Vertex> queue;
  };
  thread_local Scratch s;

  int n = h.graph().vertex_count();
  if (static_cast<int>(s.stamp.size()) < n + 1) s.stamp.resize(n + 1, 0);
  if (++s.epoch == 0) {
    std::fill(s.stamp.begin(), s.stamp.end(), 0);
    s.epoch = 1;
  }

  s.queue.clear();
  s.queue.push_back(w);
  s.stamp[w] = s.epoch;
  RankPair root = ranks.rank(w);
  RankPair best = root;
  int collected = 1;
  std::int64_t spent = 0;

  for (std::size_t head = 0; head < s.queue.size() && collected < cap; ++head) {
    Vertex x = s.queue[head];
    if (spent >= probe_budget) break;
    int deg = h.degree(x);
    ++spent;
    for (int i = 1; i <= deg; ++i) {
      if (spent >= probe_budget) break;
      Vertex y = h.neighbor(x, i);
      ++spent;
      if (s.stamp[y] == s.epoch) continue;
      s.stamp[y] = s.epoch;
      s.queue.push_back(y);
      ++collected;
      best = std::min(best, ranks.rank(y));
      if (collected == cap) break;
    }
    if (collected == cap || spent >= probe_budget) break;
  }
  return LeaderBall{best == root, collected};
}

ConnectedOracle::ConnectedOracle(const SparseGraph& g, const ConnConfig& cfg)
    : handle_(g),
      ranks_(cfg.seed, Stream::VertexRank, cfg.rank_tag),
      ball_cap_(derive_ball_cap(cfg, g.edge_bound())),
      leader_memo_(g.vertex_count() + 1, -1) {
  if (g.is_directed()) throw WrongGraphKind("connectivity correction expects an undirected graph");
}

bool ConnectedOracle::leader(Vertex w, std::int64_t budget) {
  signed char& memo = leader_memo_[w];
  if (memo < 0) memo = ball_leader(handle_, ranks_, w, ball_cap_, budget).leader ? 1 : 0;
  return memo == 1;
}

int ConnectedOracle::edge(Vertex u, Vertex v) {
  check_pair(handle_.graph(), u, v);
  std::uint64_t before = handle_.query_count();
  if (probe_edge(handle_, u, v)) return 1;
  if (u != anchor() && v != anchor()) return 0;
  Vertex w = (u == anchor()) ? v : u;
  std::int64_t spent = static_cast<std::int64_t>(handle_.query_count() - before);
  std::scoped_lock lock(mu_);
  return leader(w, probe_budget() - spent) ? 1 : 0;
}

ModConnectedOracle::ModConnectedOracle(const SparseGraph& g, const ConnConfig& cfg)
    : handle_(g),
      ranks_(cfg.seed, Stream::VertexRank, cfg.rank_tag),
      ball_cap_(derive_ball_cap(cfg, g.edge_bound())),
      super_count_(0),
      fraction_(cfg.super_fraction),
      leader_memo_(g.vertex_count() + 1, -1) {
  if (g.is_directed()) throw WrongGraphKind("connectivity correction expects an undirected graph");
  if (!(fraction_ > 0.0 && fraction_ < 1.0))
    throw ParameterError("super-node fraction must lie in (0,1)");
  super_count_ = std::clamp(scaled_ceil(g.vertex_count(), fraction_), 1, g.vertex_count());
}

Vertex ModConnectedOracle::bucket_super(Vertex x) const {
  return std::clamp(scaled_ceil(x, fraction_), 1, super_count_);
}

std::vector<Vertex> ModConnectedOracle::bucket_members(Vertex w) const {
  std::vector<Vertex> out;
  int n = handle_.graph().vertex_count();
  auto lo = static_cast<Vertex>(std::max<double>(super_count_ + 1, (w - 1) / fraction_ - 2));
  auto hi = static_cast<Vertex>(std::min<double>(n, w / fraction_ + 2));
  for (Vertex x = lo; x <= hi; ++x)
    if (x > super_count_ && bucket_super(x) == w) out.push_back(x);
  return out;
}

bool ModConnectedOracle::leader(Vertex w, std::int64_t budget) {
  signed char& memo = leader_memo_[w];
  if (memo < 0) memo = ball_leader(handle_, ranks_, w, ball_cap_, budget).leader ? 1 : 0;
  return memo == 1;
}

int ModConnectedOracle::edge(Vertex u, Vertex v) {
  check_pair(handle_.graph(), u, v);
  std::uint64_t before = handle_.query_count();
  if (probe_edge(handle_, u, v)) return 1;
  Vertex a = std::min(u, v);
  Vertex b = std::max(u, v);
  if (b <= super_count_) return (b - a == 1) ? 1 : 0;  // chain between super-nodes
  if (a > super_count_) return 0;
  if (bucket_super(b) != a) return 0;
  std::int64_t spent = static_cast<std::int64_t>(handle_.query_count() - before);
  std::scoped_lock lock(mu_);
  return leader(b, probe_budget() - spent) ? 1 : 0;
}

ConnectedNeighborOracle::ConnectedNeighborOracle(ConnectedOracle& oracle)
    : oracle_(oracle),
      n_(oracle.handle().graph().vertex_count()),
      cached_(static_cast<std::size_t>(n_) + 1, false),
      lists_(static_cast<std::size_t>(n_) + 1) {}

const std::vector<Vertex>& ConnectedNeighborOracle::corrected_list(Vertex v) {
  if (v < 1 || v > n_) throw QueryViolation("vertex out of range");
  std::scoped_lock lock(mu_);
  if (cached_[v]) return lists_[v];

  OracleHandle& h = oracle_.handle();
  std::vector<Vertex> list;
  const int deg = h.degree(v);
  list.reserve(static_cast<std::size_t>(deg) + 1);
  for (int i = 1; i <= deg; ++i) list.push_back(h.neighbor(v, i));
  auto in_base = [&list, deg](Vertex x) {
    return std::binary_search(list.begin(), list.begin() + deg, x);
  };
  const Vertex v0 = oracle_.anchor();
  if (v == v0) {
    for (Vertex w = 1; w <= n_; ++w) {
      if (w == v0 || in_base(w)) continue;
      if (oracle_.edge(v0, w)) list.push_back(w);
    }
  } else if (!in_base(v0) && oracle_.edge(v, v0)) {
    list.push_back(v0);
  }
  lists_[v] = std::move(list);
  cached_[v] = true;
  return lists_[v];
}

int ConnectedNeighborOracle::degree(Vertex v) {
  return static_cast<int>(corrected_list(v).size());
}

Vertex ConnectedNeighborOracle::neighbor(Vertex v, int i) {
  const auto& list = corrected_list(v);
  if (i < 1 || static_cast<std::size_t>(i) > list.size())
    throw QueryViolation("neighbor index out of range");
  return list[i - 1];
}

CorrectedNeighborOracle::CorrectedNeighborOracle(ModConnectedOracle& oracle, int n)
    : oracle_(oracle), n_(n), cached_(n + 1, false), lists_(n + 1) {}

const std::vector<Vertex>& CorrectedNeighborOracle::corrected_list(Vertex v) {
  std::scoped_lock lock(mu_);
  if (cached_[v]) return lists_[v];

  OracleHandle& h = oracle_.handle();
  std::vector<Vertex> list;
  int deg = h.degree(v);
  list.reserve(deg + 2);
  for (int i = 1; i <= deg; ++i) list.push_back(h.neighbor(v, i));

  auto in_base = [&](Vertex x) { return std::binary_search(list.begin(), list.begin() + deg, x); };
  std::vector<Vertex> added;
  int n0 = oracle_.super_count();
  if (v > n0) {
    Vertex target = oracle_.bucket_super(v);
    if (!in_base(target) && oracle_.edge(v, target)) added.push_back(target);
  } else {
    if (v > 1 && !in_base(v - 1)) added.push_back(v - 1);
    if (v + 1 <= n0 && !in_base(v + 1)) added.push_back(v + 1);
    for (Vertex x : oracle_.bucket_members(v))
      if (!in_base(x) && oracle_.edge(x, v)) added.push_back(x);
  }
  std::sort(added.begin(), added.end());
  list.insert(list.end(), added.begin(), added.end());

  lists_[v] = std::move(list);
  cached_[v] = true;
  return lists_[v];
}

int CorrectedNeighborOracle::degree(Vertex v) {
  if (v < 1 || v > n_) throw QueryViolation("vertex out of range");
  return static_cast<int>(corrected_list(v).size());
}

Vertex CorrectedNeighborOracle::neighbor(Vertex v, int i) {
  if (v < 1 || v > n_) throw QueryViolation("vertex out of range");
  const auto& list = corrected_list(v);
  if (i < 1 || static_cast<std::size_t>(i) > list.size())
    throw QueryViolation("neighbor index out of range");
  return list[i - 1];
}

SparseGraph materialize_all_pairs(const std::function<int(Vertex, Vertex)>& edge, int n,
                                  std::int64_t m_bound) {
  EdgeList edges;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (edge(u, v)) edges.emplace_back(u, v);
  return SparseGraph::undirected(n, m_bound, edges, /*allow_excess_edges=*/true);
}

SparseGraph materialize_from_neighbors(NeighborOracle& nbr, int n, std::int64_t m_bound) {
  EdgeList halves;
  for (Vertex v = 1; v <= n; ++v) {
    int deg = nbr.degree(v);
    for (int i = 1; i <= deg; ++i) {
      Vertex u = nbr.neighbor(v, i);
      halves.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(halves.begin(), halves.end());
  EdgeList edges;
  for (std::size_t i = 0; i < halves.size(); i += 2) {
    if (i + 1 >= halves.size() || halves[i] != halves[i + 1])
      throw VerificationError("neighbor lists are not symmetric around edge (" +
                              std::to_string(halves[i].first) + "," +
                              std::to_string(halves[i].second) + ")");
    edges.push_back(halves[i]);
  }
  return SparseGraph::undirected(n, m_bound, edges, /*allow_excess_edges=*/true);
}

}  // namespace grepair
