#include "grepair/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "grepair/corrupt.hpp"
#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/generate.hpp"
#include "grepair/graph.hpp"
#include "grepair/random.hpp"
#include "grepair/recon_connect.hpp"
#include "grepair/recon_diameter.hpp"
#include "grepair/recon_kconn.hpp"
#include "grepair/recon_strong.hpp"

namespace grepair {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& ch : out) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return out;
}

// Max per-call probe delta over a deterministic sample of oracle queries.
std::int64_t max_query_cost(OracleHandle& handle, int n, int samples, bool directed,
                            std::uint64_t seed,
                            const std::function<void(Vertex, Vertex)>& call) {
  Rng rng(seed);
  std::int64_t worst = 0;
  for (int i = 0; i < samples; ++i) {
    Vertex a = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n)));
    Vertex b = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    if (!directed && a > b) std::swap(a, b);
    const std::uint64_t before = handle.query_count();
    call(a, b);
    const std::int64_t spent =
        static_cast<std::int64_t>(handle.query_count() - before);
    worst = std::max(worst, spent);
  }
  return worst;
}

struct TrialPlan {
  ExperimentConfig cfg;
  int components = 0;
  int sources = 0;
  int sinks = 0;
  int downgrades = 0;
  int spokes = 0;
};

TrialPlan make_plan(const ExperimentConfig& cfg) {
  TrialPlan plan;
  plan.cfg = cfg;
  const double em = cfg.epsilon * static_cast<double>(cfg.m_bound);
  plan.components =
      cfg.components > 0 ? cfg.components : static_cast<int>(em) + 1;
  const int side = std::max(1, static_cast<int>(em / 4.0));
  plan.sources = cfg.sources > 0 ? cfg.sources : side;
  plan.sinks = cfg.sinks > 0 ? cfg.sinks : side;
  const double davg = 2.0 * static_cast<double>(cfg.m_bound) / cfg.n;
  const double per = std::max(1.0, davg - cfg.k + 1.0);
  plan.downgrades =
      cfg.downgrades > 0 ? cfg.downgrades : std::max(1, static_cast<int>(em / per));
  plan.spokes = cfg.spokes > 0 ? cfg.spokes : std::max(1, static_cast<int>(em / 2.0));
  return plan;
}

TrialRecord run_trial(const TrialPlan& plan, int trial) {
  const ExperimentConfig& cfg = plan.cfg;
  TrialRecord rec;
  rec.trial = trial;
  rec.property = cfg.property;
  rec.n = cfg.n;
  rec.m_bound = cfg.m_bound;
  rec.epsilon = cfg.epsilon;
  rec.alpha = cfg.alpha;
  rec.delta = cfg.delta;
  rec.gamma = cfg.gamma;
  rec.c = cfg.c;
  rec.k = cfg.k;
  rec.diameter = cfg.diameter;
  rec.seed = mix64(cfg.seed ^ (0x517cc1b727220a95ULL *
                               (static_cast<std::uint64_t>(trial) + 1)));
  const double em = cfg.epsilon * static_cast<double>(cfg.m_bound);

  const auto started = std::chrono::steady_clock::now();
  if (cfg.property == "connectivity" || cfg.property == "mod-connectivity") {
    GenSpec gen{GraphKind::Connected, cfg.n, cfg.m_bound, cfg.k, cfg.diameter,
                rec.seed};
    const SparseGraph base = generate(gen);
    const Corruption bad =
        corrupt_connectivity(base, plan.components, rec.seed + 1);
    ConnConfig oc;
    oc.epsilon = cfg.epsilon;
    oc.alpha = cfg.alpha;
    oc.delta = cfg.delta;
    oc.seed = rec.seed + 2;
    if (cfg.property == "connectivity") {
      ConnectedOracle oracle(bad.graph, oc);
      rec.max_queries_per_call = max_query_cost(
          oracle.handle(), cfg.n, cfg.query_samples, false, rec.seed + 3,
          [&oracle](Vertex a, Vertex b) { oracle.edge(a, b); });
      rec.bound = (1.0 + cfg.alpha) * em;
      if (cfg.materialize) {
        const SparseGraph fixed = materialize_all_pairs(
            [&oracle](Vertex a, Vertex b) { return oracle.edge(a, b); }, cfg.n,
            cfg.m_bound);
        rec.property_holds = is_connected(fixed);
        rec.edges_added = fixed.edge_count() - bad.graph.edge_count();
      }
    } else {
      oc.super_fraction = cfg.c;
      ModConnectedOracle oracle(bad.graph, oc);
      rec.max_queries_per_call = max_query_cost(
          oracle.handle(), cfg.n, cfg.query_samples, false, rec.seed + 3,
          [&oracle](Vertex a, Vertex b) { oracle.edge(a, b); });
      rec.bound = (1.0 + cfg.alpha) * em + (oracle.super_count() - 1);
      if (cfg.materialize) {
        const SparseGraph fixed = materialize_all_pairs(
            [&oracle](Vertex a, Vertex b) { return oracle.edge(a, b); }, cfg.n,
            cfg.m_bound);
        rec.property_holds = is_connected(fixed);
        rec.edges_added = fixed.edge_count() - bad.graph.edge_count();
      }
    }
  } else if (cfg.property == "strong-connectivity") {
    GenSpec gen{GraphKind::StronglyConnected, cfg.n, cfg.m_bound, cfg.k,
                cfg.diameter, rec.seed};
    const SparseGraph base = generate(gen);
    const Corruption bad =
        corrupt_strong(base, plan.sources, plan.sinks, rec.seed + 1);
    StrongConfig sc{cfg.epsilon, cfg.alpha, cfg.delta, rec.seed + 2};
    StronglyConnectedOracle oracle(bad.graph, sc);
    rec.max_queries_per_call = max_query_cost(
        oracle.handle(), cfg.n, cfg.query_samples, true, rec.seed + 3,
        [&oracle](Vertex a, Vertex b) { oracle.arc(a, b); });
    const int cap = derive_reach_cap(sc, cfg.m_bound);
    rec.bound = 2.0 * cfg.n / (cfg.delta * cap) + 4.0 * em + 2.0;
    if (cfg.materialize) {
      const SparseGraph fixed = materialize_strong(oracle);
      rec.property_holds = is_strongly_connected(fixed);
      rec.edges_added = fixed.edge_count() - bad.graph.edge_count();
    }
  } else if (cfg.property == "k-connectivity") {
    GenSpec gen{GraphKind::KConnected, cfg.n, cfg.m_bound, cfg.k, cfg.diameter,
                rec.seed};
    const SparseGraph base = generate(gen);
    const Corruption bad =
        corrupt_kconn(base, cfg.k, plan.downgrades, rec.seed + 1);
    KConnConfig kc;
    kc.epsilon = cfg.epsilon;
    kc.alpha = cfg.alpha;
    kc.delta = cfg.delta;
    kc.gamma = cfg.gamma;
    kc.super_fraction = cfg.c;
    kc.k = cfg.k;
    kc.seed = rec.seed + 2;
    // Staged mode front-loads the level construction, so per-call costs are
    // sampled warm there; query mode uses the pure stack for cold costs.
    KConnStack stack(bad.graph, kc, /*staged=*/cfg.materialize);
    const int k = cfg.k;
    rec.bound = (2.0 + cfg.alpha) * cfg.k * em +
                cfg.c * cfg.k * static_cast<double>(cfg.m_bound) / 2.0;
    if (cfg.materialize) {
      const SparseGraph& fixed = stack.materialize(cfg.k);
      rec.property_holds = edge_connectivity(fixed) >= cfg.k;
      rec.edges_added = fixed.edge_count() - bad.graph.edge_count();
    }
    rec.max_queries_per_call = max_query_cost(
        stack.handle(), cfg.n, cfg.query_samples, false, rec.seed + 3,
        [&stack, k](Vertex a, Vertex b) { stack.edge(k, a, b); });
  } else if (cfg.property == "bounded-diameter") {
    GenSpec gen{GraphKind::LowDiameter, cfg.n, cfg.m_bound, cfg.k, cfg.diameter,
                rec.seed};
    const SparseGraph base = generate(gen);
    const Corruption bad = corrupt_diameter(base, plan.spokes, rec.seed + 1);
    DiamConfig dc;
    dc.epsilon = cfg.epsilon;
    dc.alpha = cfg.alpha;
    dc.delta = cfg.delta;
    dc.super_fraction = cfg.c;
    dc.diameter_target = cfg.diameter;
    dc.seed = rec.seed + 2;
    SmallDiamOracle oracle(bad.graph, dc);
    rec.max_queries_per_call = max_query_cost(
        oracle.handle(), cfg.n, cfg.query_samples, false, rec.seed + 3,
        [&oracle](Vertex a, Vertex b) { oracle.edge(a, b); });
    rec.bound = 2.0 * em + 1.0;  // additions beyond the connectivity layer
    if (cfg.materialize) {
      const SparseGraph fixed = materialize_all_pairs(
          [&oracle](Vertex a, Vertex b) { return oracle.edge(a, b); }, cfg.n,
          cfg.m_bound);
      ModConnectedOracle& conn = oracle.base();
      const SparseGraph prime = materialize_all_pairs(
          [&conn](Vertex a, Vertex b) { return conn.edge(a, b); }, cfg.n,
          cfg.m_bound);
      const auto diam = exact_diameter(fixed);
      rec.property_holds =
          diam.has_value() && *diam <= 2 * oracle.derived().radius + 2;
      rec.edges_added = fixed.edge_count() - prime.edge_count();
    }
  } else {
    throw ParameterError("unknown property: " + cfg.property);
  }
  rec.within_bound = static_cast<double>(rec.edges_added) <= rec.bound;
  if (cfg.timing) {
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  }
  return rec;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ParseError("config line " + std::to_string(line_no) + ": empty value");
    try {
      if (key == "property") {
        cfg.property = value;
      } else if (key == "trials") {
        cfg.trials = std::stoi(value);
      } else if (key == "n") {
        cfg.n = std::stoi(value);
      } else if (key == "m" || key == "m_bound") {
        cfg.m_bound = std::stoll(value);
      } else if (key == "eps" || key == "epsilon") {
        cfg.epsilon = std::stod(value);
      } else if (key == "alpha") {
        cfg.alpha = std::stod(value);
      } else if (key == "delta") {
        cfg.delta = std::stod(value);
      } else if (key == "gamma") {
        cfg.gamma = std::stod(value);
      } else if (key == "c") {
        cfg.c = std::stod(value);
      } else if (key == "k") {
        cfg.k = std::stoi(value);
      } else if (key == "D" || key == "diameter") {
        cfg.diameter = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "mode") {
        if (value == "materialize") {
          cfg.materialize = true;
        } else if (value == "query") {
          cfg.materialize = false;
        } else {
          throw ParseError("mode must be materialize or query");
        }
      } else if (key == "query_samples") {
        cfg.query_samples = std::stoi(value);
      } else if (key == "timing") {
        if (value == "on") {
          cfg.timing = true;
        } else if (value == "off") {
          cfg.timing = false;
        } else {
          throw ParseError("timing must be on or off");
        }
      } else if (key == "components") {
        cfg.components = std::stoi(value);
      } else if (key == "sources") {
        cfg.sources = std::stoi(value);
      } else if (key == "sinks") {
        cfg.sinks = std::stoi(value);
      } else if (key == "downgrades") {
        cfg.downgrades = std::stoi(value);
      } else if (key == "spokes") {
        cfg.spokes = std::stoi(value);
      } else {
        throw ParseError("config line " + std::to_string(line_no) +
                         ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": value out of range for '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ParameterError("trials must be at least 1");
  if (cfg.query_samples < 1)
    throw ParameterError("query_samples must be at least 1");
  const TrialPlan plan = make_plan(cfg);

  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  auto worker = [&plan, &records, &next, &cfg]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= cfg.trials) return;
      try {
        records[static_cast<std::size_t>(i)] = run_trial(plan, i);
      } catch (const std::exception& e) {
        TrialRecord rec;
        rec.trial = i;
        rec.property = sanitize(cfg.property + "[error: " + e.what() + "]");
        rec.n = cfg.n;
        rec.m_bound = cfg.m_bound;
        rec.epsilon = cfg.epsilon;
        rec.alpha = cfg.alpha;
        rec.delta = cfg.delta;
        rec.gamma = cfg.gamma;
        rec.c = cfg.c;
        rec.k = cfg.k;
        rec.diameter = cfg.diameter;
        rec.seed = cfg.seed;
        rec.edges_added = -1;
        records[static_cast<std::size_t>(i)] = rec;
      }
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int pool = std::max(1, std::min<int>(cfg.trials, hw == 0 ? 1 : static_cast<int>(hw)));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return records;
}

WilsonInterval wilson_interval(int successes, int trials) {
  if (trials <= 0) throw ParameterError("interval needs at least one trial");
  const double z = 1.96;
  const double nt = trials;
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  WilsonInterval w;
  w.low = std::max(0.0, center - half);
  w.high = std::min(1.0, center + half);
  return w;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial,property,n,m_bound,epsilon,alpha,delta,gamma,c,k,D,seed,"
         "property_holds,edges_added,bound,within_bound,max_queries_per_call,"
         "wall_ms\n";
  std::int64_t added_max = 0;
  std::int64_t queries_max = 0;
  double wall_total = 0.0;
  int holds = 0;
  int within = 0;
  for (const TrialRecord& r : records) {
    out << r.trial << ',' << sanitize(r.property) << ',' << r.n << ','
        << r.m_bound << ',' << format_double(r.epsilon) << ','
        << format_double(r.alpha) << ',' << format_double(r.delta) << ','
        << format_double(r.gamma) << ',' << format_double(r.c) << ',' << r.k
        << ',' << r.diameter << ',' << r.seed << ',' << (r.property_holds ? 1 : 0)
        << ',' << r.edges_added << ',' << format_double(r.bound) << ','
        << (r.within_bound ? 1 : 0) << ',' << r.max_queries_per_call << ','
        << format_double(r.wall_ms) << '\n';
    added_max = std::max(added_max, r.edges_added);
    queries_max = std::max(queries_max, r.max_queries_per_call);
    wall_total += r.wall_ms;
    if (r.property_holds) ++holds;
    if (r.within_bound) ++within;
  }
  if (records.empty()) return;
  const int n_trials = static_cast<int>(records.size());
  const TrialRecord& first = records.front();
  const WilsonInterval wp = wilson_interval(holds, n_trials);
  const WilsonInterval wb = wilson_interval(within, n_trials);
  out << "summary," << sanitize(first.property) << ',' << first.n << ','
      << first.m_bound << ',' << format_double(first.epsilon) << ','
      << format_double(first.alpha) << ',' << format_double(first.delta) << ','
      << format_double(first.gamma) << ',' << format_double(first.c) << ','
      << first.k << ',' << first.diameter << ',' << first.seed << ',' << holds
      << ',' << added_max << ',' << format_double(first.bound) << ',' << within
      << ',' << queries_max << ',' << format_double(wall_total) << ','
      << format_double(static_cast<double>(holds) / n_trials) << ','
      << format_double(wp.low) << ',' << format_double(wp.high) << ','
      << format_double(static_cast<double>(within) / n_trials) << ','
      << format_double(wb.low) << ',' << format_double(wb.high) << '\n';
}

}  // namespace grepair
