#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace grepair {

struct TrialRecord {
  int trial = 0;
  std::string property;
  int n = 0;
  std::int64_t m_bound = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  int k = 0;
  int diameter = 0;
  std::uint64_t seed = 0;
  bool property_holds = false;
  std::int64_t edges_added = 0;
  double bound = 0.0;
  bool within_bound = false;
  std::int64_t max_queries_per_call = 0;
  double wall_ms = 0.0;
};

struct ExperimentConfig {
  // connectivity | mod-connectivity | strong-connectivity |
  // k-connectivity | bounded-diameter
  std::string property = "connectivity";
  int trials = 10;
  int n = 200;
  std::int64_t m_bound = 400;
  double epsilon = 0.05;
  double alpha = 1.0;
  double delta = 0.2;
  double gamma = 0.1;
  double c = 0.1;
  int k = 2;
  int diameter = 3;
  std::uint64_t seed = 1;
  bool materialize = true;   // false = query-budget mode, no verification
  int query_samples = 100;   // oracle calls measured per trial
  // timing=off pins wall_ms to zero so identical configs give identical CSV
  // bytes; timing=on records real wall time.
  bool timing = false;
  // Corruption shape; 0 = derived from epsilon.
  int components = 0;  // connectivity family: target component count
  int sources = 0;     // strong connectivity
  int sinks = 0;
  int downgrades = 0;  // k-connectivity
  int spokes = 0;      // bounded diameter
};

// Key = value lines, # comments. Unknown keys are rejected.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// One record per trial: generate, corrupt, build the oracle stack, measure
// per-call query maxima, and (in materialize mode) verify the corrected graph
// with the exact checkers. A trial whose verifier throws yields a failure row
// tagged in the property column, never a silent drop. Trials run in a small
// thread pool; records come back in trial order.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
// 95% score interval (z = 1.96).
WilsonInterval wilson_interval(int successes, int trials);

// Fixed header, one row per record, floats at 9 significant digits, then one
// trailing summary row (trial column says "summary") that aggregates counts
// and appends property/bound frequencies with their Wilson bounds.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);

}  // namespace grepair
