#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "d2dmm/channel_model.hpp"
#include "d2dmm/greedy_cluster.hpp"
#include "d2dmm/optimal_oracle.hpp"
#include "d2dmm/plan.hpp"

namespace d2dmm {

enum class Algorithm { channel_gain, cluster, optimal, bs_broadcast };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);  // accepts '-' or '_'

namespace experiments {

// One Monte Carlo campaign: for each (C, trial) a scenario is generated
// from a seed derived from (master_seed, C, trial) and every requested
// algorithm runs on that same gain matrix (paired comparison).
struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  int trials = 1000;
  std::vector<int> c_values;
  std::vector<Algorithm> algorithms;
  double r_min = 10.0;
  int h_max_cluster = 10;
  double radius_m = 500.0;
  ChannelParams channel;
  cluster::ThresholdSchedule threshold;
  int oracle_cap = oracle::kDefaultCap;
  int threads = 0;  // 0 = hardware concurrency; never affects results

  void validate() const;
};

// Per-(C, algorithm) trial series, indexed by trial number. Aggregates are
// computed from these after all workers finish, so scheduling cannot
// change any output.
struct CellData {
  std::vector<double> power_w;
  std::vector<int> hops;                     // hops to full coverage
  std::vector<std::vector<double>> coverage; // coverage_by_hop per trial

  double mean_power() const;
  double stderr_power() const;  // sample std dev of per-trial totals / sqrt(n)
  double mean_hops() const;
  // Mean coverage per hop; trials already complete at a hop count as 1.0.
  std::vector<double> mean_coverage() const;
};

struct AggregateResult {
  std::map<std::pair<int, Algorithm>, CellData> cells;

  const CellData& cell(int c, Algorithm a) const;
};

AggregateResult run(const ExperimentConfig& config);

// Derived tables. fig3 sweeps mean power over C for the two greedy
// algorithms against the broadcast benchmark; fig4 reports the coverage
// curves at C = 100; table2 compares the greedy algorithms to the
// exhaustive optimum on small instances, with ratio_to_optimal the mean
// over trials of the paired per-trial power ratio.
struct Fig3Row { int c; Algorithm algorithm; double mean_power_w; double stderr_w; int trials; };
struct Fig4Row { int hop; Algorithm algorithm; double mean_coverage; };
struct Table2Row { int c; Algorithm algorithm; double mean_power_w; double ratio_to_optimal; };

std::vector<Fig3Row> fig3_sweep(const ExperimentConfig& config);
std::vector<Fig4Row> fig4_coverage(const ExperimentConfig& config);
std::vector<Table2Row> table2(const ExperimentConfig& config);

void write_fig3_csv(std::ostream& os, const std::vector<Fig3Row>& rows);
void write_fig4_csv(std::ostream& os, const std::vector<Fig4Row>& rows);
void write_table2_csv(std::ostream& os, const std::vector<Table2Row>& rows);

}  // namespace experiments
}  // namespace d2dmm
