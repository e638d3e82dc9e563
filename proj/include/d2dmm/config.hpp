#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2dmm/channel_model.hpp"
#include "d2dmm/experiments.hpp"
#include "d2dmm/greedy_cluster.hpp"
#include "d2dmm/optimal_oracle.hpp"

namespace d2dmm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key=value run configuration. Unknown and duplicate keys are
// rejected. Defaults are the standard simulation setup: 500 m cell,
// -100 dBm noise, K = -31.54 dB, beta = 3, d0 = 1 m, r_min = 10 bit/s/Hz,
// 10-hop budget for the cluster algorithm.
struct RunConfig {
  double radius_m = 500.0;
  double n0_dbm = -100.0;
  double k_db = -31.54;
  double beta = 3.0;
  double d0_m = 1.0;
  double sigma_shadow_db = 8.0;
  double r_min = 10.0;
  int h_max_cluster = 10;
  int oracle_cap = oracle::kDefaultCap;
  std::optional<double> threshold_init_db;  // empty = auto (quarter-radius rule)
  double threshold_step_db = 1.0;
  int threshold_retry_budget = 16;
  std::uint64_t master_seed = 1;
  int trials = 1000;
  std::vector<int> c_values = {1, 2, 3, 4, 5, 6, 7};
  std::vector<Algorithm> algorithms = {Algorithm::channel_gain, Algorithm::cluster,
                                       Algorithm::optimal, Algorithm::bs_broadcast};
  std::string output_dir = "out";
  int threads = 0;

  ChannelParams channel_params() const;
  cluster::ThresholdSchedule threshold_schedule() const;
  experiments::ExperimentConfig experiment_config() const;

  // Canonical echo of every key, for manifests. Parsing this back yields
  // an identical config.
  std::map<std::string, std::string> to_key_values() const;

  static RunConfig from_string(const std::string& text);
  static RunConfig from_file(const std::filesystem::path& path);
};

}  // namespace d2dmm
