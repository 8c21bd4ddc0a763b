#include "grepair/recon_diameter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

#include "grepair/error.hpp"

namespace grepair {

namespace {

constexpr double kCeilTolerance = 1e-9;

ConnConfig base_config(const DiamConfig& cfg) {
  ConnConfig out;
  out.epsilon = cfg.epsilon;
  out.alpha = cfg.alpha;
  out.delta = cfg.delta;
  out.super_fraction = cfg.super_fraction;
  out.seed = cfg.seed;
  out.rank_tag = 0;
  return out;
}

}  // namespace

DiamDerived derive_diam(const DiamConfig& cfg, int n, std::int64_t m_bound) {
  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0)) {
    throw ParameterError("epsilon must lie in (0, 1)");
  }
  if (!(cfg.alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (!(cfg.delta > 0.0) || !(cfg.delta < 1.0)) {
    throw ParameterError("delta must lie in (0, 1)");
  }
  if (cfg.diameter_target < 1) {
    throw ParameterError("diameter target must be at least 1");
  }
  if (cfg.mis_round_constant < 1) {
    throw ParameterError("round constant must be at least 1");
  }
  if (n < 2) throw ParameterError("graph must have at least two vertices");
  if (m_bound < n) throw ParameterError("edge bound must be at least n");

  DiamDerived d;
  const double m = static_cast<double>(m_bound);
  const double ratio = 2.0 * static_cast<double>(n) / (cfg.epsilon * m);
  const double lifted = std::ceil(ratio - kCeilTolerance);
  double radius = std::min(lifted, static_cast<double>(cfg.diameter_target));
  if (radius < 1.0) radius = 1.0;
  d.radius = static_cast<int>(radius);
  d.avg_degree = 2.0 * m / static_cast<double>(n);
  d.high_threshold = d.avg_degree / cfg.epsilon;
  const double effective = std::pow(d.high_threshold, d.radius);
  if (!std::isfinite(effective)) {
    throw ParameterError("effective sieve degree overflows");
  }
  const double lg = std::log2(effective + 2.0);
  d.rounds = static_cast<std::int64_t>(
      std::ceil(cfg.mis_round_constant * lg * lg - kCeilTolerance));
  if (d.rounds < 1) d.rounds = 1;
  return d;
}

SmallDiamOracle::SmallDiamOracle(const SparseGraph& g, const DiamConfig& cfg)
    : n_(g.vertex_count()),
      cfg_(cfg),
      derived_(derive_diam(cfg, g.vertex_count(), g.edge_bound())),
      modconn_(g, base_config(cfg)),
      corrected_(modconn_, g.vertex_count()),
      coins_(cfg.seed, Stream::MisCoin, 0),
      balls_(static_cast<std::size_t>(g.vertex_count()) + 1),
      status_(static_cast<std::size_t>(g.vertex_count()) + 1, 0) {}

bool SmallDiamOracle::high_degree_unlocked(Vertex v) {
  if (v == anchor()) return true;
  return static_cast<double>(corrected_.degree(v)) > derived_.high_threshold;
}

bool SmallDiamOracle::is_high_degree(Vertex v) {
  modconn_.handle().graph().check_vertex(v);
  std::scoped_lock lock(mu_);
  return high_degree_unlocked(v);
}

const SmallDiamOracle::Ball& SmallDiamOracle::ball_unlocked(Vertex v) {
  auto& slot = balls_[static_cast<std::size_t>(v)];
  if (slot) return *slot;

  Ball ball;
  ball.clean = true;
  std::vector<int> dist(static_cast<std::size_t>(n_) + 1, -1);
  std::queue<Vertex> queue;
  dist[static_cast<std::size_t>(v)] = 0;
  queue.push(v);
  ball.members.push_back(v);
  while (!queue.empty() && ball.clean) {
    const Vertex u = queue.front();
    queue.pop();
    const int du = dist[static_cast<std::size_t>(u)];
    if (du == derived_.radius) break;
    for (Vertex w : corrected_.corrected_list(u)) {
      if (dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = du + 1;
      if (high_degree_unlocked(w)) {
        ball.clean = false;
        break;
      }
      ball.members.push_back(w);
      queue.push(w);
    }
  }
  if (!ball.clean) {
    ball.members.clear();
  } else {
    std::sort(ball.members.begin(), ball.members.end());
  }
  slot = std::move(ball);
  return *slot;
}

const SmallDiamOracle::Ball& SmallDiamOracle::low_ball(Vertex v) {
  modconn_.handle().graph().check_vertex(v);
  std::scoped_lock lock(mu_);
  if (high_degree_unlocked(v)) {
    throw QueryViolation("ball query on a high-degree vertex");
  }
  return ball_unlocked(v);
}

bool SmallDiamOracle::clean_unlocked(Vertex v) {
  if (high_degree_unlocked(v)) return false;
  return ball_unlocked(v).clean;
}

void SmallDiamOracle::simulate_component(Vertex v) {
  // Collect the whole sieve component reachable from v: clean low-degree
  // vertices linked whenever they lie within distance K of each other in G'.
  std::vector<Vertex> comp;
  std::vector<int> local(static_cast<std::size_t>(n_) + 1, -1);
  comp.push_back(v);
  local[static_cast<std::size_t>(v)] = 0;
  std::vector<std::vector<int>> adj;
  for (std::size_t head = 0; head < comp.size(); ++head) {
    const Vertex u = comp[head];
    adj.emplace_back();
    for (Vertex w : ball_unlocked(u).members) {
      if (w == u || !clean_unlocked(w)) continue;
      int& id = local[static_cast<std::size_t>(w)];
      if (id < 0) {
        id = static_cast<int>(comp.size());
        comp.push_back(w);
      }
      adj[head].push_back(id);
    }
  }

  const std::size_t size = comp.size();
  std::vector<signed char> verdict(size, 0);
  std::vector<double> coin(size, 0.0);
  std::size_t remaining = size;
  for (std::int64_t round = 1; round <= derived_.rounds && remaining > 0;
       ++round) {
    for (std::size_t i = 0; i < size; ++i) {
      if (verdict[i] == 0) {
        coin[i] = coins_.unit(static_cast<std::uint64_t>(comp[i]),
                              static_cast<std::uint64_t>(round));
      }
    }
    std::vector<std::size_t> joiners;
    for (std::size_t i = 0; i < size; ++i) {
      if (verdict[i] != 0) continue;
      bool wins = true;
      for (int j : adj[i]) {
        if (verdict[static_cast<std::size_t>(j)] != 0) continue;
        if (coin[static_cast<std::size_t>(j)] <= coin[i]) {
          wins = false;
          break;
        }
      }
      if (wins) joiners.push_back(i);
    }
    for (std::size_t i : joiners) {
      verdict[i] = 1;
      --remaining;
    }
    for (std::size_t i : joiners) {
      for (int j : adj[i]) {
        auto& vj = verdict[static_cast<std::size_t>(j)];
        if (vj == 0) {
          vj = 2;
          --remaining;
        }
      }
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    // Fallback join: vertices still undecided after the round budget join,
    // which keeps domination unconditional at the price of independence.
    status_[static_cast<std::size_t>(comp[i])] =
        verdict[i] == 0 ? 3 : verdict[i];
  }
}

int SmallDiamOracle::mis_unlocked(Vertex v) {
  auto& state = status_[static_cast<std::size_t>(v)];
  if (state == 0) simulate_component(v);
  return state == 2 ? 0 : 1;
}

bool SmallDiamOracle::fallback_member(Vertex v) {
  modconn_.handle().graph().check_vertex(v);
  std::scoped_lock lock(mu_);
  if (!clean_unlocked(v)) {
    throw QueryViolation("sieve query on a vertex without a clean ball");
  }
  auto& state = status_[static_cast<std::size_t>(v)];
  if (state == 0) simulate_component(v);
  return state == 3;
}

int SmallDiamOracle::mis(Vertex v) {
  modconn_.handle().graph().check_vertex(v);
  std::scoped_lock lock(mu_);
  if (!clean_unlocked(v)) {
    throw QueryViolation("sieve query on a vertex without a clean ball");
  }
  return mis_unlocked(v);
}

int SmallDiamOracle::edge(Vertex v1, Vertex v2) {
  const SparseGraph& g = modconn_.handle().graph();
  g.check_vertex(v1);
  g.check_vertex(v2);
  if (v1 == v2) throw QueryViolation("degenerate query (u == v)");
  if (modconn_.edge(v1, v2)) return 1;
  if (v1 != anchor() && v2 != anchor()) return 0;
  const Vertex v = v1 == anchor() ? v2 : v1;
  std::scoped_lock lock(mu_);
  if (high_degree_unlocked(v)) return 1;
  if (!ball_unlocked(v).clean) return 0;
  return mis_unlocked(v);
}

SmallDiamNeighborOracle::SmallDiamNeighborOracle(SmallDiamOracle& oracle)
    : oracle_(oracle),
      n_(oracle.handle().graph().vertex_count()),
      lists_(static_cast<std::size_t>(n_) + 1) {}

const std::vector<Vertex>& SmallDiamNeighborOracle::corrected_list(Vertex v) {
  if (v < 1 || v > n_) throw QueryViolation("vertex out of range");
  std::scoped_lock lock(mu_);
  auto& slot = lists_[static_cast<std::size_t>(v)];
  if (slot) return *slot;

  std::vector<Vertex> list = oracle_.corrected().corrected_list(v);
  const Vertex v0 = oracle_.anchor();
  auto present = [&list](Vertex w) {
    return std::find(list.begin(), list.end(), w) != list.end();
  };
  if (v == v0) {
    for (Vertex w = 1; w <= n_; ++w) {
      if (w == v0 || present(w)) continue;
      if (oracle_.edge(v0, w)) list.push_back(w);
    }
  } else if (!present(v0) && oracle_.edge(v, v0)) {
    list.push_back(v0);
  }
  slot = std::move(list);
  return *slot;
}

int SmallDiamNeighborOracle::degree(Vertex v) {
  return static_cast<int>(corrected_list(v).size());
}

Vertex SmallDiamNeighborOracle::neighbor(Vertex v, int i) {
  const auto& list = corrected_list(v);
  if (i < 1 || static_cast<std::size_t>(i) > list.size())
    throw QueryViolation("neighbor index out of range");
  return list[i - 1];
}

}  // namespace grepair
