#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "grepair/corrupt.hpp"
#include "grepair/error.hpp"
#include "grepair/exact.hpp"
#include "grepair/experiment.hpp"
#include "grepair/generate.hpp"
#include "grepair/graph.hpp"
#include "helpers.hpp"

using namespace grepair;
using namespace grepair::testutil;

namespace {

SparseGraph with_edges_restored(const Corruption& cut) {
  EdgeList edges(cut.graph.edges());
  edges.insert(edges.end(), cut.removed.begin(), cut.removed.end());
  if (cut.graph.is_directed()) {
    return SparseGraph::directed(cut.graph.vertex_count(), cut.graph.edge_bound(),
                                 edges);
  }
  return SparseGraph::undirected(cut.graph.vertex_count(), cut.graph.edge_bound(),
                                 edges);
}

int count_lines(const std::string& s) {
  int lines = 0;
  for (char ch : s) {
    if (ch == '\n') ++lines;
  }
  return lines;
}

}  // namespace

TEST_CASE("generated graphs carry their target property") {
  SparseGraph conn = generate({GraphKind::Connected, 100, 250, 2, 3, 7});
  CHECK(connected_components(conn).count == 1);
  CHECK(conn.edge_count() <= 250);

  SparseGraph kc = generate({GraphKind::KConnected, 60, 200, 3, 3, 7});
  CHECK(edge_connectivity(kc) >= 3);
  CHECK(kc.edge_count() <= 200);

  SparseGraph strong = generate({GraphKind::StronglyConnected, 60, 180, 2, 3, 7});
  CHECK(is_strongly_connected(strong));
  CHECK(strong.edge_count() <= 180);

  SparseGraph low = generate({GraphKind::LowDiameter, 80, 240, 2, 3, 7});
  auto diam = exact_diameter(low);
  REQUIRE(diam.has_value());
  CHECK(*diam <= 3);

  // deterministic per seed, and seeds actually matter
  SparseGraph again = generate({GraphKind::Connected, 100, 250, 2, 3, 7});
  CHECK(serialize_graph(again) == serialize_graph(conn));
  SparseGraph other = generate({GraphKind::Connected, 100, 250, 2, 3, 8});
  CHECK(serialize_graph(other) != serialize_graph(conn));
}

TEST_CASE("generator rejects infeasible shapes") {
  CHECK_THROWS_AS(generate({GraphKind::KConnected, 6, 40, 5, 3, 1}), ParameterError);
  CHECK_THROWS_AS(generate({GraphKind::KConnected, 20, 20, 3, 3, 1}), ParameterError);
  CHECK_THROWS_AS(generate({GraphKind::Connected, 1, 10, 2, 3, 1}), ParameterError);
  CHECK_THROWS_AS(generate({GraphKind::Connected, 30, 20, 2, 3, 1}), ParameterError);
  CHECK_THROWS_AS(generate({GraphKind::LowDiameter, 40, 41, 2, 0, 1}), ParameterError);
}

TEST_CASE("connectivity corruption certifies an exact distance") {
  SparseGraph g = generate({GraphKind::Connected, 1000, 2000, 2, 3, 19});
  Corruption cut = corrupt_connectivity(g, 101, 3);
  CHECK(connected_components(cut.graph).count == 101);
  CHECK(cut.property_distance == doctest::Approx(100.0 / 2000.0));
  CHECK(cut.distance_exact);
  CHECK(cut.certificate.find("components=101") != std::string::npos);
  CHECK(cut.removed.size() >= 100);
  CHECK(is_connected(with_edges_restored(cut)));

  // cross-check against the metric itself
  GraphDistance d = distance_to_connectivity(cut.graph);
  CHECK(d.value() == doctest::Approx(cut.property_distance));
}

TEST_CASE("strong corruption certifies the condensation distance") {
  SparseGraph g = generate({GraphKind::StronglyConnected, 300, 1200, 2, 3, 23});
  Corruption cut = corrupt_strong(g, 5, 5, 11);
  CHECK(cut.property_distance == doctest::Approx(5.0 / 1200.0));
  CHECK(cut.distance_exact);
  CHECK(cut.certificate.find("sources=5") != std::string::npos);
  CHECK(is_strongly_connected(with_edges_restored(cut)));
  GraphDistance d = distance_to_strong_connectivity(cut.graph);
  CHECK(d.value() == doctest::Approx(cut.property_distance));
}

TEST_CASE("degree downgrades leave edge connectivity exactly one short") {
  SparseGraph g = generate({GraphKind::KConnected, 60, 200, 2, 3, 31});
  REQUIRE(edge_connectivity(g) >= 2);
  Corruption cut = corrupt_kconn(g, 2, 1, 13);
  CHECK(edge_connectivity(cut.graph) == 1);
  CHECK(!cut.distance_exact);  // removed set is only an upper bound
  CHECK(edge_connectivity(with_edges_restored(cut)) >= 2);
}

TEST_CASE("spoke removal keeps a certificate that restores the diameter") {
  SparseGraph g = generate({GraphKind::LowDiameter, 80, 240, 2, 3, 37});
  Corruption cut = corrupt_diameter(g, 6, 17);
  CHECK(cut.removed.size() == 6);
  CHECK(!cut.distance_exact);
  for (Vertex v = 1; v <= 80; ++v) CHECK(cut.graph.neighbors(v).size() >= 1);
  auto diam = exact_diameter(with_edges_restored(cut));
  REQUIRE(diam.has_value());
  CHECK(*diam <= 3);
}

TEST_CASE("config parser reads keys, comments and aliases") {
  const std::string text =
      "# experiment sweep\n"
      "property = k-connectivity\n"
      "trials = 25\n"
      "n = 400\n"
      "m = 1200   # alias for m_bound\n"
      "eps = 0.05\n"
      "alpha = 2\n"
      "delta = 0.1\n"
      "gamma = 0.1\n"
      "c = 0.1\n"
      "k = 3\n"
      "D = 4\n"
      "seed = 99\n"
      "mode = query\n"
      "query_samples = 32\n"
      "timing = on\n"
      "downgrades = 7\n";
  ExperimentConfig cfg = parse_experiment_config(text);
  CHECK(cfg.property == "k-connectivity");
  CHECK(cfg.trials == 25);
  CHECK(cfg.n == 400);
  CHECK(cfg.m_bound == 1200);
  CHECK(cfg.epsilon == doctest::Approx(0.05));
  CHECK(cfg.alpha == doctest::Approx(2.0));
  CHECK(cfg.k == 3);
  CHECK(cfg.diameter == 4);
  CHECK(cfg.seed == 99);
  CHECK(!cfg.materialize);
  CHECK(cfg.query_samples == 32);
  CHECK(cfg.timing);
  CHECK(cfg.downgrades == 7);

  CHECK_THROWS_AS(parse_experiment_config("bandwidth = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("trials = soon\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("trials\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("trials =\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("mode = sideways\n"), ParseError);
  try {
    parse_experiment_config("n = 10\nwidgets = 4\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_experiment_config("/nonexistent/grepair.cfg"), ParseError);
}

TEST_CASE("experiment rows are complete, bounded and reproducible") {
  ExperimentConfig cfg;
  cfg.property = "connectivity";
  cfg.trials = 5;
  cfg.n = 120;
  cfg.m_bound = 240;
  cfg.epsilon = 0.05;
  cfg.alpha = 1.0;
  cfg.delta = 0.2;
  cfg.seed = 9;
  cfg.query_samples = 40;

  std::vector<TrialRecord> records = run_experiment(cfg);
  REQUIRE(records.size() == 5);
  for (const TrialRecord& r : records) {
    CHECK(r.property == "connectivity");
    CHECK(r.property_holds);
    CHECK(r.bound == doctest::Approx((1.0 + cfg.alpha) * cfg.epsilon * 240.0));
    CHECK(r.within_bound == (static_cast<double>(r.edges_added) <= r.bound));
    CHECK(r.max_queries_per_call >= 1);
    CHECK(r.wall_ms == 0.0);  // timing off by default
  }
  // trial seeds differ, so at least two trials should differ in work done
  CHECK(records[0].seed != records[1].seed);

  std::ostringstream csv1, csv2;
  write_csv(csv1, records);
  write_csv(csv2, run_experiment(cfg));
  CHECK(csv1.str() == csv2.str());
  CHECK(count_lines(csv1.str()) == 1 + 5 + 1);  // header, trials, summary

  std::istringstream lines(csv1.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("trial,property,n,m_bound", 0) == 0);
  std::string last;
  while (std::getline(lines, line)) last = line;
  CHECK(last.rfind("summary,connectivity,", 0) == 0);
}

TEST_CASE("every property branch of the runner emits records") {
  ExperimentConfig cfg;
  cfg.trials = 2;
  cfg.query_samples = 20;
  cfg.seed = 4;

  SUBCASE("mod-connectivity") {
    cfg.property = "mod-connectivity";
    cfg.n = 100;
    cfg.m_bound = 200;
    cfg.epsilon = 0.1;
    cfg.c = 0.1;
    for (const TrialRecord& r : run_experiment(cfg)) {
      CHECK(r.property_holds);
      CHECK(r.edges_added >= 0);
    }
  }
  SUBCASE("strong-connectivity") {
    cfg.property = "strong-connectivity";
    cfg.n = 80;
    cfg.m_bound = 280;
    cfg.epsilon = 0.1;
    cfg.delta = 0.3;
    cfg.sources = 2;
    cfg.sinks = 2;
    for (const TrialRecord& r : run_experiment(cfg)) {
      CHECK(r.property_holds);
      CHECK(r.edges_added >= 0);
    }
  }
  SUBCASE("k-connectivity") {
    cfg.property = "k-connectivity";
    cfg.n = 36;
    cfg.m_bound = 108;
    cfg.epsilon = 0.5;
    cfg.alpha = 3.0;
    cfg.delta = 0.4;
    cfg.gamma = 0.3;
    cfg.c = 0.3;
    cfg.k = 2;
    for (const TrialRecord& r : run_experiment(cfg)) {
      CHECK(r.property_holds);
      CHECK(r.edges_added >= 0);
    }
  }
  SUBCASE("bounded-diameter") {
    cfg.property = "bounded-diameter";
    cfg.n = 100;
    cfg.m_bound = 300;
    cfg.epsilon = 0.1;
    cfg.c = 0.05;
    cfg.diameter = 3;
    for (const TrialRecord& r : run_experiment(cfg)) {
      CHECK(r.property_holds);
      CHECK(r.edges_added >= 0);
    }
  }
  SUBCASE("failures become tagged rows, not crashes") {
    cfg.property = "k-connectivity";
    cfg.n = 400;
    cfg.m_bound = 1200;
    cfg.epsilon = 0.05;  // forces a brute-force budget overflow
    cfg.alpha = 1.0;
    cfg.delta = 0.1;
    cfg.gamma = 0.1;
    cfg.c = 0.1;
    cfg.k = 2;
    cfg.materialize = false;
    std::vector<TrialRecord> records = run_experiment(cfg);
    REQUIRE(records.size() == 2);
    for (const TrialRecord& r : records) {
      CHECK(r.property.find("[error:") != std::string::npos);
      CHECK(r.edges_added == -1);
    }
  }
  SUBCASE("unknown property") {
    cfg.property = "chromatic-number";
    cfg.materialize = false;
    std::vector<TrialRecord> records = run_experiment(cfg);
    for (const TrialRecord& r : records) {
      CHECK(r.property.find("unknown property") != std::string::npos);
    }
  }
}

TEST_CASE("wilson intervals bracket the observed frequency") {
  WilsonInterval w = wilson_interval(30, 100);
  CHECK(w.low > 0.0);
  CHECK(w.low < 0.3);
  CHECK(w.high > 0.3);
  CHECK(w.high < 1.0);

  CHECK(wilson_interval(0, 50).low == 0.0);
  CHECK(wilson_interval(50, 50).high == 1.0);
  CHECK(wilson_interval(40, 100).low < wilson_interval(60, 100).low);

  WilsonInterval wide = wilson_interval(30, 100);
  WilsonInterval tight = wilson_interval(300, 1000);
  CHECK(tight.high - tight.low < wide.high - wide.low);

  CHECK_THROWS_AS(wilson_interval(1, 0), ParameterError);
}

TEST_CASE("csv cells are sanitized and floats keep nine significant digits") {
  TrialRecord r;
  r.trial = 0;
  r.property = "weird,na\nme";
  r.n = 10;
  r.m_bound = 20;
  r.epsilon = 1.0 / 3.0;
  r.alpha = 1.0;
  r.delta = 0.25;
  r.gamma = 0.0;
  r.c = 0.0;
  r.k = 1;
  r.diameter = 2;
  r.seed = 5;
  r.property_holds = true;
  r.edges_added = 4;
  r.bound = 6.5;
  r.within_bound = true;
  r.max_queries_per_call = 12;
  r.wall_ms = 0.0;

  std::ostringstream out;
  write_csv(out, {r});
  const std::string text = out.str();
  CHECK(text.find("weird;na;me") != std::string::npos);
  CHECK(text.find("0.333333333") != std::string::npos);
  CHECK(text.find("6.5") != std::string::npos);
  CHECK(count_lines(text) == 3);
}
