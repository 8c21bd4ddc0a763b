#include "grepair/recon_kconn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "grepair/error.hpp"

namespace grepair {

namespace {

constexpr double kCeilTolerance = 1e-9;

Vertex wrap_super(std::int64_t x, int super_count) {
  std::int64_t r = (x - 1) % super_count;
  if (r < 0) r += super_count;
  return static_cast<Vertex>(r + 1);
}

}  // namespace

KConnDerived derive_kconn(const KConnConfig& cfg, int n) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ParameterError("epsilon must lie in (0,1)");
  if (!(cfg.alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) throw ParameterError("gamma must lie in (0,1)");
  if (cfg.k < 1) throw ParameterError("k must be at least 1");
  if (!(cfg.super_fraction > 0.0 && cfg.super_fraction < 1.0))
    throw ParameterError("super-node fraction must lie in (0,1)");
  if (cfg.super_fraction * n < cfg.k)
    throw ParameterError("super-node fraction below k/n");

  KConnDerived d;
  d.big_c = 1.0 / std::log(1.0 / (1.0 - cfg.gamma));
  double log_cn = std::log(d.big_c * n);
  if (!(log_cn > 0.0)) throw ParameterError("vertex count too small for the derived constants");
  d.t = static_cast<int>(
      std::ceil(log_cn / (cfg.delta * cfg.alpha * cfg.epsilon) - kCeilTolerance));
  if (d.t < 2) throw ParameterError("derived search size below 2; shrink alpha");
  if (d.t > cfg.brute_force_limit)
    throw SizeLimitError("derived search size exceeds the exhaustive verification limit");
  d.iterations = static_cast<std::int64_t>(
      std::ceil(static_cast<double>(d.t) * d.t * log_cn - kCeilTolerance));
  d.random_rule = std::log(d.big_c * n / d.t) / d.t;
  d.super_count = std::clamp(scaled_ceil(n, cfg.super_fraction), 1, n);
  d.ring_width = (cfg.k + 1) / 2;
  if (d.super_count < 2 * d.ring_width + 1)
    throw ParameterError("too few super-nodes for the ring width");
  return d;
}

std::vector<Vertex> hash_supernodes(Vertex v, double c, int k, int super_count) {
  if (super_count < k) throw ParameterError("fewer super-nodes than hash entries");
  if (v <= super_count) throw ParameterError("hash set is defined for non-super-nodes only");
  Vertex b = std::clamp(scaled_ceil(v, c), 1, super_count);
  std::vector<Vertex> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(wrap_super(static_cast<std::int64_t>(b) + i, super_count));
  return out;
}

std::vector<Vertex> hash_preimage(Vertex w, double c, int k, int super_count, int n) {
  if (w < 1 || w > super_count) throw ParameterError("not a super-node");
  std::vector<Vertex> out;
  for (int i = 0; i < k; ++i) {
    Vertex b = wrap_super(static_cast<std::int64_t>(w) - i, super_count);
    auto lo = static_cast<Vertex>(std::max<double>(super_count + 1, (b - 1) / c - 2));
    auto hi = static_cast<Vertex>(std::min<double>(n, b / c + 2));
    for (Vertex x = lo; x <= hi; ++x)
      if (x > super_count && std::clamp(scaled_ceil(x, c), 1, super_count) == b) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ring_edge(Vertex u, Vertex v, int super_count, int ring_width) {
  if (u == v) return false;
  int d = std::abs(u - v);
  int circ = std::min(d, super_count - d);
  return circ <= ring_width;
}

std::vector<Vertex> ring_neighbors(Vertex w, int super_count, int ring_width) {
  std::vector<Vertex> out;
  for (int d = 1; d <= ring_width; ++d) {
    out.push_back(wrap_super(static_cast<std::int64_t>(w) + d, super_count));
    out.push_back(wrap_super(static_cast<std::int64_t>(w) - d, super_count));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), w), out.end());
  return out;
}

bool verify_extreme(const std::vector<Vertex>& members, int ell,
                    const std::function<std::vector<Vertex>(Vertex)>& neighbors_of,
                    int brute_force_limit) {
  int sz = static_cast<int>(members.size());
  if (sz == 0) throw ParameterError("empty candidate set");
  if (sz > brute_force_limit || sz > 24)
    throw SizeLimitError("candidate set exceeds the exhaustive verification limit");

  std::vector<std::uint32_t> inside(sz, 0);
  std::vector<long> deg(sz, 0);
  for (int i = 0; i < sz; ++i) {
    std::vector<Vertex> nb = neighbors_of(members[i]);
    deg[i] = static_cast<long>(nb.size());
    for (Vertex z : nb)
      for (int j = 0; j < sz; ++j)
        if (members[j] == z) inside[i] |= 1u << j;
  }

  std::uint32_t full = (1u << sz) - 1;
  std::vector<long> cut(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t m = 1; m <= full; ++m) {
    int v = std::countr_zero(m);
    std::uint32_t rest = m & (m - 1);
    cut[m] = cut[rest] + deg[v] - 2 * std::popcount(inside[v] & rest);
  }
  if (cut[full] != ell) return false;
  for (std::uint32_t m = 1; m < full; ++m)
    if (cut[m] <= ell) return false;
  return true;
}

struct KConnStack::View {
  KConnStack& stack;
  int below;
  const SparseGraph* arrays;  // set iff the level below is materialized

  std::span<const Vertex> nbrs(Vertex x) {
    if (arrays) return arrays->neighbors(x);
    return stack.neighbors_unlocked(below, x);
  }
  bool has(Vertex a, Vertex b) {
    return arrays ? arrays->has_edge(a, b) : stack.edge_unlocked(below, a, b) == 1;
  }
};

KConnStack::KConnStack(const SparseGraph& g, const KConnConfig& cfg, bool staged)
    : n_(g.vertex_count()),
      cfg_(cfg),
      derived_(derive_kconn(cfg, g.vertex_count())),
      staged_(staged),
      modconn_(g, ConnConfig{cfg.epsilon, cfg.alpha, cfg.delta, cfg.super_fraction, cfg.seed,
                             /*rank_tag=*/1}) {
  for (int j = 0; j <= cfg_.k; ++j)
    level_ranks_.emplace_back(cfg_.seed, Stream::VertexRank, static_cast<std::uint64_t>(j));
  decision_.assign(cfg_.k + 1, std::vector<Vertex>(n_ + 1, -1));
  nbr_cache_.assign(cfg_.k + 1, std::vector<std::optional<std::vector<Vertex>>>(n_ + 1));
  levels_.resize(cfg_.k + 1);
}

std::vector<Vertex> KConnStack::hash_set(Vertex v) const {
  return hash_supernodes(v, cfg_.super_fraction, cfg_.k, derived_.super_count);
}

std::vector<Vertex> KConnStack::candidate_partners(Vertex v) const {
  if (!is_super(v)) return hash_set(v);
  std::vector<Vertex> out = ring_neighbors(v, derived_.super_count, derived_.ring_width);
  std::vector<Vertex> pre =
      hash_preimage(v, cfg_.super_fraction, cfg_.k, derived_.super_count, n_);
  out.insert(out.end(), pre.begin(), pre.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int KConnStack::edge(int level, Vertex u, Vertex v) {
  std::scoped_lock lock(mu_);
  return edge_unlocked(level, u, v);
}

int KConnStack::edge_unlocked(int level, Vertex u, Vertex v) {
  if (level < 1 || level > cfg_.k) throw ParameterError("level out of range");
  const SparseGraph& g = modconn_.handle().graph();
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw QueryViolation("degenerate query (u == v)");

  bool us = is_super(u);
  bool vs = is_super(v);
  if (level == 1) {
    if (us && vs) {
      if (probe_edge(modconn_.handle(), u, v)) return 1;
      return ring_edge(u, v, derived_.super_count, derived_.ring_width) ? 1 : 0;
    }
    return modconn_.edge(u, v);
  }

  if (staged_) {
    const SparseGraph& below = ensure_level(level - 1);
    if (below.has_edge(u, v)) return 1;
  } else {
    if (edge_unlocked(level - 1, u, v)) return 1;
  }
  if (!us && !vs) return 0;
  if (us && vs) return ring_edge(u, v, derived_.super_count, derived_.ring_width) ? 1 : 0;
  Vertex plain = us ? v : u;
  Vertex sup = us ? u : v;
  return decide(level, plain) == sup ? 1 : 0;
}

Vertex KConnStack::decision_target(int level, Vertex v) {
  std::scoped_lock lock(mu_);
  if (level < 2 || level > cfg_.k) throw ParameterError("level out of range");
  modconn_.handle().graph().check_vertex(v);
  if (is_super(v)) throw ParameterError("decisions exist for non-super-nodes only");
  return decide(level, v);
}

Vertex KConnStack::decide(int level, Vertex v) {
  Vertex& memo = decision_[level][v];
  if (memo >= 0) return memo;

  View view{*this, level - 1, staged_ ? &ensure_level(level - 1) : nullptr};
  const RandomSource& ranks = level_ranks_[level];
  int t = derived_.t;
  bool elect = false;
  // A member of a t-bounded (level-1)-extreme set has at most t-1 internal
  // and level-2 cut edges below, so larger roots can never search successfully.
  if (static_cast<int>(view.nbrs(v).size()) <= t + level - 2) {
    for (std::int64_t iter = 1; iter <= derived_.iterations; ++iter) {
      SearchOutcome out = run_search(view, level, v, iter);
      if (out.success) {
        RankPair mine = ranks.rank(v);
        RankPair best = mine;
        for (Vertex u : out.members) best = std::min(best, ranks.rank(u));
        elect = best == mine;
        break;
      }
    }
  }
  if (!elect) elect = ranks.rank(v).value < derived_.random_rule;

  Vertex target = 0;
  if (elect) {
    std::vector<Vertex> hs = hash_set(v);
    std::sort(hs.begin(), hs.end());
    for (Vertex w : hs) {
      if (!view.has(v, w)) {
        target = w;
        break;
      }
    }
  }
  memo = target;
  return target;
}

SearchOutcome KConnStack::run_search(View& view, int level, Vertex v, std::int64_t iter) {
  RandomSource weights(cfg_.seed, Stream::EdgeWeight,
                       (static_cast<std::uint64_t>(level) << 32) |
                           static_cast<std::uint64_t>(iter));
  int t = derived_.t;
  int j = level;

  struct CutEdge {
    double weight;
    Vertex in, out;
  };
  auto precedes = [](const CutEdge& a, const CutEdge& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    auto ka = std::minmax(a.in, a.out);
    auto kb = std::minmax(b.in, b.out);
    return ka < kb;
  };

  std::vector<Vertex> members{v};
  auto in_set = [&](Vertex x) {
    return std::find(members.begin(), members.end(), x) != members.end();
  };

  std::span<const Vertex> root_nbrs = view.nbrs(v);
  long boundary = static_cast<long>(root_nbrs.size());
  std::vector<CutEdge> cut;
  cut.reserve(root_nbrs.size());
  for (Vertex z : root_nbrs) cut.push_back({weights.edge_weight(v, z), v, z});

  while (static_cast<int>(members.size()) != t && boundary >= j) {
    std::size_t keep = 0;
    int best = -1;
    for (std::size_t idx = 0; idx < cut.size(); ++idx) {
      if (in_set(cut[idx].out)) continue;  // absorbed since it was recorded
      cut[keep] = cut[idx];
      if (static_cast<int>(view.nbrs(cut[keep].out).size()) < t + j &&
          (best < 0 || precedes(cut[keep], cut[best])))
        best = static_cast<int>(keep);
      ++keep;
    }
    cut.resize(keep);
    if (best < 0) return SearchOutcome{false, std::move(members), static_cast<int>(boundary)};

    Vertex y = cut[best].out;
    std::span<const Vertex> ynb = view.nbrs(y);
    long into = 0;
    for (Vertex z : ynb)
      if (in_set(z)) ++into;
    members.push_back(y);
    boundary += static_cast<long>(ynb.size()) - 2 * into;
    for (Vertex z : ynb)
      if (!in_set(z)) cut.push_back({weights.edge_weight(y, z), y, z});
  }

  bool success = false;
  if (boundary == j - 1) {
    auto nbrs_fn = [&view](Vertex x) {
      std::span<const Vertex> s = view.nbrs(x);
      return std::vector<Vertex>(s.begin(), s.end());
    };
    success = verify_extreme(members, j - 1, nbrs_fn, cfg_.brute_force_limit);
  }
  return SearchOutcome{success, std::move(members), static_cast<int>(boundary)};
}

SearchOutcome KConnStack::search_once(int level, Vertex v, std::int64_t iter) {
  std::scoped_lock lock(mu_);
  if (level < 2 || level > cfg_.k) throw ParameterError("level out of range");
  if (iter < 1) throw ParameterError("repetition index is 1-based");
  modconn_.handle().graph().check_vertex(v);
  if (is_super(v)) throw ParameterError("searches start from non-super-nodes only");
  View view{*this, level - 1, staged_ ? &ensure_level(level - 1) : nullptr};
  return run_search(view, level, v, iter);
}

const std::vector<Vertex>& KConnStack::neighbors(int level, Vertex v) {
  std::scoped_lock lock(mu_);
  if (level < 1 || level > cfg_.k) throw ParameterError("level out of range");
  modconn_.handle().graph().check_vertex(v);
  return neighbors_unlocked(level, v);
}

int KConnStack::degree(int level, Vertex v) {
  return static_cast<int>(neighbors(level, v).size());
}

const std::vector<Vertex>& KConnStack::neighbors_unlocked(int level, Vertex v) {
  std::optional<std::vector<Vertex>>& slot = nbr_cache_[level][v];
  if (slot) return *slot;

  std::vector<Vertex> list;
  if (staged_) {
    std::span<const Vertex> base = modconn_.handle().graph().neighbors(v);
    list.assign(base.begin(), base.end());
  } else {
    OracleHandle& h = modconn_.handle();
    int deg = h.degree(v);
    list.reserve(deg + cfg_.k);
    for (int i = 1; i <= deg; ++i) list.push_back(h.neighbor(v, i));
  }
  std::size_t base_len = list.size();
  std::vector<Vertex> added;
  for (Vertex c : candidate_partners(v)) {
    if (std::binary_search(list.begin(), list.begin() + base_len, c)) continue;
    if (edge_unlocked(level, v, c)) added.push_back(c);
  }
  std::sort(added.begin(), added.end());
  list.insert(list.end(), added.begin(), added.end());
  slot.emplace(std::move(list));
  return *slot;
}

const SparseGraph& KConnStack::ensure_level(int level) {
  if (levels_[level]) return *levels_[level];
  const SparseGraph& base = modconn_.handle().graph();
  EdgeList edges;
  if (level == 1) {
    edges = base.edges();
    int n0 = derived_.super_count;
    for (Vertex u = 1; u <= n0; ++u)
      for (Vertex w : ring_neighbors(u, n0, derived_.ring_width))
        if (w > u && !base.has_edge(u, w)) edges.emplace_back(u, w);
    for (Vertex v = n0 + 1; v <= n_; ++v) {
      Vertex b = modconn_.bucket_super(v);
      if (!base.has_edge(v, b) && modconn_.edge(v, b))
        edges.emplace_back(std::min(b, v), std::max(b, v));
    }
  } else {
    const SparseGraph& below = ensure_level(level - 1);
    edges = below.edges();
    for (Vertex v = derived_.super_count + 1; v <= n_; ++v) {
      Vertex target = decide(level, v);
      if (target > 0) edges.emplace_back(std::min(target, v), std::max(target, v));
    }
  }
  levels_[level].emplace(
      SparseGraph::undirected(n_, base.edge_bound(), edges, /*allow_excess_edges=*/true));
  return *levels_[level];
}

namespace {

class SurfaceAdapter : public NeighborOracle {
 public:
  SurfaceAdapter(KConnStack& stack, int level) : stack_(stack), level_(level) {}
  int degree(Vertex v) override { return stack_.degree(level_, v); }
  Vertex neighbor(Vertex v, int i) override {
    const std::vector<Vertex>& list = stack_.neighbors(level_, v);
    if (i < 1 || static_cast<std::size_t>(i) > list.size())
      throw QueryViolation("neighbor index out of range");
    return list[i - 1];
  }

 private:
  KConnStack& stack_;
  int level_;
};

}  // namespace

const SparseGraph& KConnStack::materialize(int level) {
  std::scoped_lock lock(mu_);
  if (level < 1 || level > cfg_.k) throw ParameterError("level out of range");
  if (staged_) return ensure_level(level);
  if (!levels_[level]) {
    SurfaceAdapter adapter(*this, level);
    levels_[level].emplace(
        materialize_from_neighbors(adapter, n_, modconn_.handle().graph().edge_bound()));
  }
  return *levels_[level];
}

}  // namespace grepair
