// Command-line surface: generate, corrupt, reconstruct, test, bench.
// Exit codes: 0 success, 1 parameter error, 2 verification failure, 3 I/O.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grepair/corrupt.hpp"
#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/experiment.hpp"
#include "grepair/generate.hpp"
#include "grepair/graph.hpp"
#include "grepair/oracle.hpp"
#include "grepair/recon_connect.hpp"
#include "grepair/recon_diameter.hpp"
#include "grepair/recon_kconn.hpp"
#include "grepair/recon_strong.hpp"
#include "grepair/tolerant.hpp"

namespace {

using namespace grepair;

struct GenArgs {
  std::string kind;
  int n = 0;
  std::int64_t m = 0;
  int k = 2;
  int diameter = 3;
  std::uint64_t seed = 0;
  std::string out;
};

struct CorruptArgs {
  std::string property;
  double eps = 0.05;
  std::uint64_t seed = 0;
  std::string in;
  std::string out;
  int k = 2;
  int components = 0;
  int sources = 0;
  int sinks = 0;
  int downgrades = 0;
  int spokes = 0;
};

struct ReconArgs {
  std::string property;
  double eps = 0.05;
  double alpha = 1.0;
  double delta = 0.2;
  double gamma = 0.1;
  double c = 0.1;
  int k = 2;
  int diameter = 3;
  std::uint64_t seed = 0;
  std::string in;
  std::vector<int> query;
  std::string materialize_out;
};

struct TestArgs {
  std::string mode;
  std::string property;
  double eps = 0.05;
  double eps1 = 0.02;
  double eps2 = 0.0;  // 0 = derived as (1+alpha)*eps1
  double beta = 0.02;
  double alpha = 1.0;
  double delta = 0.1;
  double gamma = 0.1;
  double c = 0.1;
  int k = 2;
  int diameter = 3;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string in;
};

struct BenchArgs {
  std::string config;
  std::string out;
};

GraphKind parse_kind(const std::string& s) {
  if (s == "connected") return GraphKind::Connected;
  if (s == "kconn") return GraphKind::KConnected;
  if (s == "strong") return GraphKind::StronglyConnected;
  if (s == "lowdiam") return GraphKind::LowDiameter;
  throw ParameterError("unknown kind: " + s);
}

void run_gen(const GenArgs& a) {
  GenSpec spec{parse_kind(a.kind), a.n, a.m, a.k, a.diameter, a.seed};
  SparseGraph g = generate(spec);
  save_graph(g, a.out);
  std::printf("wrote %s: n=%d m_bound=%lld edges=%lld directed=%d\n", a.out.c_str(),
              g.vertex_count(), static_cast<long long>(g.edge_bound()),
              static_cast<long long>(g.edge_count()), g.is_directed() ? 1 : 0);
}

void run_corrupt(const CorruptArgs& a) {
  SparseGraph g = load_graph(a.in);
  const double em = a.eps * static_cast<double>(g.edge_bound());
  Corruption cut = [&]() {
    if (a.property == "connectivity") {
      int components = a.components > 0 ? a.components : static_cast<int>(em) + 1;
      return corrupt_connectivity(g, components, a.seed);
    }
    if (a.property == "strong") {
      int side = std::max(1, static_cast<int>(em / 4.0));
      return corrupt_strong(g, a.sources > 0 ? a.sources : side,
                            a.sinks > 0 ? a.sinks : side, a.seed);
    }
    if (a.property == "kconn") {
      double davg = 2.0 * static_cast<double>(g.edge_bound()) / g.vertex_count();
      double per = std::max(1.0, davg - a.k + 1.0);
      int downgrades =
          a.downgrades > 0 ? a.downgrades : std::max(1, static_cast<int>(em / per));
      return corrupt_kconn(g, a.k, downgrades, a.seed);
    }
    if (a.property == "diameter") {
      int spokes = a.spokes > 0 ? a.spokes : std::max(1, static_cast<int>(em / 2.0));
      return corrupt_diameter(g, spokes, a.seed);
    }
    throw ParameterError("unknown property: " + a.property);
  }();
  save_graph(cut.graph, a.out);
  std::ofstream cert(a.out + ".cert", std::ios::binary);
  if (!cert) throw ParseError("cannot open " + a.out + ".cert for writing");
  cert << cut.certificate << "\n";
  for (const auto& [u, v] : cut.removed) cert << "removed " << u << " " << v << "\n";
  if (!cert) throw ParseError("write failed for " + a.out + ".cert");
  std::printf("wrote %s (+.cert): %s\n", a.out.c_str(), cut.certificate.c_str());
}

// Answers one query or materializes the corrected graph, given the property's
// edge function and the bound on corrected edges for the materialized file.
void answer_or_materialize(const ReconArgs& a, const SparseGraph& g,
                           const std::function<int(Vertex, Vertex)>& edge,
                           const std::function<SparseGraph()>& materialize) {
  if (!a.query.empty()) {
    int bit = edge(a.query[0], a.query[1]);
    std::printf("edge %d %d = %d\n", a.query[0], a.query[1], bit);
    return;
  }
  SparseGraph fixed = materialize();
  save_graph(fixed, a.materialize_out);
  std::printf("wrote %s: edges=%lld added=%lld\n", a.materialize_out.c_str(),
              static_cast<long long>(fixed.edge_count()),
              static_cast<long long>(fixed.edge_count() - g.edge_count()));
}

void run_reconstruct(const ReconArgs& a) {
  if (a.query.empty() == a.materialize_out.empty())
    throw ParameterError("pass exactly one of --query and --materialize");
  SparseGraph g = load_graph(a.in);
  const int n = g.vertex_count();
  const std::int64_t m = g.edge_bound();

  if (a.property == "conn") {
    ConnConfig cfg{a.eps, a.alpha, a.delta, /*super_fraction=*/0.0, a.seed, 0};
    ConnectedOracle oracle(g, cfg);
    answer_or_materialize(
        a, g, [&](Vertex u, Vertex v) { return oracle.edge(u, v); },
        [&] {
          return materialize_all_pairs(
              [&](Vertex u, Vertex v) { return oracle.edge(u, v); }, n, m);
        });
  } else if (a.property == "strong") {
    StrongConfig cfg{a.eps, a.alpha, a.delta, a.seed};
    StronglyConnectedOracle oracle(g, cfg);
    answer_or_materialize(
        a, g, [&](Vertex u, Vertex v) { return oracle.arc(u, v); },
        [&] { return materialize_strong(oracle); });
  } else if (a.property == "kconn") {
    KConnConfig cfg;
    cfg.epsilon = a.eps;
    cfg.alpha = a.alpha;
    cfg.delta = a.delta;
    cfg.gamma = a.gamma;
    cfg.super_fraction = a.c;
    cfg.k = a.k;
    cfg.seed = a.seed;
    KConnStack stack(g, cfg, /*staged=*/!a.materialize_out.empty());
    answer_or_materialize(
        a, g, [&](Vertex u, Vertex v) { return stack.edge(a.k, u, v); },
        [&] { return stack.materialize(a.k); });
  } else if (a.property == "diam") {
    DiamConfig cfg;
    cfg.epsilon = a.eps;
    cfg.alpha = a.alpha;
    cfg.delta = a.delta;
    cfg.super_fraction = a.c;
    cfg.diameter_target = a.diameter;
    cfg.seed = a.seed;
    SmallDiamOracle oracle(g, cfg);
    answer_or_materialize(
        a, g, [&](Vertex u, Vertex v) { return oracle.edge(u, v); },
        [&] {
          return materialize_all_pairs(
              [&](Vertex u, Vertex v) { return oracle.edge(u, v); }, n, m);
        });
  } else {
    throw ParameterError("unknown property: " + a.property);
  }
}

void run_test(const TestArgs& a) {
  SparseGraph g = load_graph(a.in);
  const int n = g.vertex_count();
  const std::int64_t m = g.edge_bound();
  if (a.trials < 1) throw ParameterError("trials must be at least 1");

  if (a.mode == "tester") {
    if (a.property != "connectivity" && a.property != "conn")
      throw ParameterError("plain tester mode supports connectivity only");
    if (g.is_directed()) throw WrongGraphKind("undirected input required");
    OracleHandle handle(g);
    GraphNeighborOracle nbr(handle);
    int accepted = 0;
    for (int t = 0; t < a.trials; ++t)
      accepted += connectivity_tester(nbr, n, m, a.eps, a.seed + t).accept ? 1 : 0;
    std::printf("accepted %d/%d (frequency=%.4f)\n", accepted, a.trials,
                static_cast<double>(accepted) / a.trials);
    return;
  }
  if (a.mode != "tolerant") throw ParameterError("unknown mode: " + a.mode);

  const double eps2 = a.eps2 > 0.0 ? a.eps2 : (1.0 + a.alpha) * a.eps1;
  ToleranceParams params;
  params.epsilon1 = a.eps1;
  params.epsilon2 = eps2;
  params.beta = a.beta;

  int accepted = 0;
  int estimator_rejections = 0;
  double last_estimate = 0.0;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t seed_t = a.seed + static_cast<std::uint64_t>(t);
    TolerantVerdict verdict;
    if (a.property == "conn" || a.property == "connectivity") {
      ConnConfig cfg{a.eps1, a.alpha, a.delta, 0.0, seed_t, 0};
      ConnectedOracle oracle(g, cfg);
      ConnectedNeighborOracle corrected(oracle);
      TesterSpec tester = connectivity_tester_spec(corrected, n, m, seed_t);
      tester.epsilon_prime = a.eps;
      verdict = tolerant_tester(surface_for(oracle), tester, params, seed_t);
    } else if (a.property == "strong") {
      StrongConfig cfg{a.eps1, a.alpha, a.delta, seed_t};
      StronglyConnectedOracle oracle(g, cfg);
      TesterSpec tester =
          exact_strong_tester([&oracle] { return materialize_strong(oracle); });
      verdict = tolerant_tester(surface_for(oracle), tester, params, seed_t);
    } else if (a.property == "kconn") {
      KConnConfig cfg;
      cfg.epsilon = a.eps1;
      cfg.alpha = a.alpha;
      cfg.delta = a.delta;
      cfg.gamma = a.gamma;
      cfg.super_fraction = a.c;
      cfg.k = a.k;
      cfg.seed = seed_t;
      KConnStack stack(g, cfg);
      TesterSpec tester = exact_kconn_tester(
          [&stack, &a]() -> SparseGraph { return stack.materialize(a.k); }, a.k);
      verdict = tolerant_tester(surface_for(stack), tester, params, seed_t);
    } else if (a.property == "diam") {
      DiamConfig cfg;
      cfg.epsilon = a.eps1;
      cfg.alpha = a.alpha;
      cfg.delta = a.delta;
      cfg.super_fraction = a.c;
      cfg.diameter_target = a.diameter;
      cfg.seed = seed_t;
      SmallDiamOracle oracle(g, cfg);
      const int bound = 2 * oracle.derived().radius + 2;
      TesterSpec tester = exact_diameter_tester(
          [&oracle, n, m] {
            return materialize_all_pairs(
                [&oracle](Vertex u, Vertex v) { return oracle.edge(u, v); }, n, m);
          },
          bound);
      verdict = tolerant_tester(surface_for(oracle), tester, params, seed_t);
    } else {
      throw ParameterError("unknown property: " + a.property);
    }
    accepted += verdict.accept ? 1 : 0;
    estimator_rejections += verdict.estimator_rejected ? 1 : 0;
    last_estimate = verdict.estimate;
  }
  std::printf("accepted %d/%d (frequency=%.4f) estimator_rejections=%d\n", accepted,
              a.trials, static_cast<double>(accepted) / a.trials, estimator_rejections);
  if (a.trials == 1) std::printf("estimate=%.9g\n", last_estimate);
}

void run_bench(const BenchArgs& a) {
  ExperimentConfig cfg = load_experiment_config(a.config);
  std::vector<TrialRecord> records = run_experiment(cfg);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw ParseError("cannot open " + a.out + " for writing");
  write_csv(out, records);
  if (!out) throw ParseError("write failed for " + a.out);
  std::printf("wrote %s: trials=%d rows=%zu\n", a.out.c_str(), cfg.trials,
              records.size() + 2);  // header + summary
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sublinear graph repair toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cgen = app.add_subcommand("gen", "generate a verified instance");
  cgen->add_option("--kind", gen.kind, "connected|kconn|strong|lowdiam")->required();
  cgen->add_option("--n", gen.n, "vertex count")->required();
  cgen->add_option("--m", gen.m, "edge bound m_bound")->required();
  cgen->add_option("--k", gen.k, "connectivity target (kconn)");
  cgen->add_option("--D", gen.diameter, "diameter target (lowdiam)");
  cgen->add_option("--seed", gen.seed, "random seed");
  cgen->add_option("--out", gen.out, "output graph file")->required();

  CorruptArgs cut;
  CLI::App* ccut = app.add_subcommand("corrupt", "delete edges at a certified distance");
  ccut->add_option("--property", cut.property, "connectivity|strong|kconn|diameter")
      ->required();
  ccut->add_option("--eps", cut.eps, "distance scale for the default shape");
  ccut->add_option("--seed", cut.seed, "random seed");
  ccut->add_option("--in", cut.in, "input graph file")->required();
  ccut->add_option("--out", cut.out, "output graph file (certificate at <out>.cert)")
      ->required();
  ccut->add_option("--k", cut.k, "connectivity parameter (kconn)");
  ccut->add_option("--components", cut.components, "override: component count");
  ccut->add_option("--sources", cut.sources, "override: source components");
  ccut->add_option("--sinks", cut.sinks, "override: sink components");
  ccut->add_option("--downgrades", cut.downgrades, "override: degraded vertices");
  ccut->add_option("--spokes", cut.spokes, "override: removed hub spokes");

  ReconArgs rec;
  CLI::App* crec = app.add_subcommand("reconstruct", "query or materialize a correction");
  crec->add_option("--property", rec.property, "conn|strong|kconn|diam")->required();
  crec->add_option("--eps", rec.eps, "closeness promise epsilon");
  crec->add_option("--alpha", rec.alpha, "overshoot factor");
  crec->add_option("--delta", rec.delta, "failure probability");
  crec->add_option("--gamma", rec.gamma, "per-level failure probability (kconn)");
  crec->add_option("--c", rec.c, "super-node fraction");
  crec->add_option("--k", rec.k, "connectivity target (kconn)");
  crec->add_option("--D", rec.diameter, "diameter target (diam)");
  crec->add_option("--seed", rec.seed, "random seed");
  crec->add_option("--in", rec.in, "input graph file")->required();
  CLI::Option* oq =
      crec->add_option("--query", rec.query, "answer one edge query u v")->expected(2);
  crec->add_option("--materialize", rec.materialize_out, "write the corrected graph")
      ->excludes(oq);

  TestArgs tst;
  CLI::App* ctst = app.add_subcommand("test", "property tester / tolerant tester");
  ctst->add_option("--mode", tst.mode, "tester|tolerant")->required();
  ctst->add_option("--property", tst.property, "connectivity|conn|strong|kconn|diam")
      ->required();
  ctst->add_option("--eps", tst.eps, "tester epsilon (tester mode / tolerant eps')");
  ctst->add_option("--eps1", tst.eps1, "tolerant closeness epsilon1");
  ctst->add_option("--eps2", tst.eps2, "tolerant epsilon2 (default (1+alpha)*eps1)");
  ctst->add_option("--beta", tst.beta, "estimator slack beta");
  ctst->add_option("--alpha", tst.alpha, "reconstructor overshoot");
  ctst->add_option("--delta", tst.delta, "reconstructor failure probability");
  ctst->add_option("--gamma", tst.gamma, "per-level failure probability (kconn)");
  ctst->add_option("--c", tst.c, "super-node fraction");
  ctst->add_option("--k", tst.k, "connectivity target (kconn)");
  ctst->add_option("--D", tst.diameter, "diameter target (diam)");
  ctst->add_option("--trials", tst.trials, "independent repetitions");
  ctst->add_option("--seed", tst.seed, "random seed");
  ctst->add_option("--in", tst.in, "input graph file")->required();

  BenchArgs bench;
  CLI::App* cbench = app.add_subcommand("bench", "run an experiment config to CSV");
  cbench->add_option("--config", bench.config, "key=value config file")->required();
  cbench->add_option("--out", bench.out, "output CSV file")->required();

  cgen->callback([&gen] { run_gen(gen); });
  ccut->callback([&cut] { run_corrupt(cut); });
  crec->callback([&rec] { run_reconstruct(rec); });
  ctst->callback([&tst] { run_test(tst); });
  cbench->callback([&bench] { run_bench(bench); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
