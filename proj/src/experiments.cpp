#include "d2dmm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "d2dmm/greedy_channel_gain.hpp"
#include "d2dmm/rng.hpp"
#include "d2dmm/scenario.hpp"

namespace d2dmm {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::channel_gain: return "channel_gain";
    case Algorithm::cluster: return "cluster";
    case Algorithm::optimal: return "optimal";
    case Algorithm::bs_broadcast: return "bs_broadcast";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "channel_gain") return Algorithm::channel_gain;
  if (key == "cluster") return Algorithm::cluster;
  if (key == "optimal") return Algorithm::optimal;
  if (key == "bs_broadcast") return Algorithm::bs_broadcast;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

namespace experiments {

namespace {

constexpr std::uint64_t kTrialStreamTag = 0x74726961;  // per-trial seed domain

int h_max_for(Algorithm a, int c, const ExperimentConfig& cfg) {
  switch (a) {
    case Algorithm::channel_gain: return std::max(c, 1);
    case Algorithm::cluster: return cfg.h_max_cluster;
    case Algorithm::optimal: return std::max(c, 1);
    case Algorithm::bs_broadcast: return 1;
  }
  return 1;
}

MulticastPlan run_algorithm(Algorithm a, const GainMatrix& gains,
                            const ExperimentConfig& cfg) {
  switch (a) {
    case Algorithm::channel_gain:
      return channel_gain::solve(gains);
    case Algorithm::cluster:
      return cluster::solve(gains, cfg.channel, cfg.radius_m, cfg.h_max_cluster,
                            cfg.threshold);
    case Algorithm::optimal:
      return oracle::solve_optimal(gains, cfg.r_min, cfg.channel,
                                   std::max(gains.md_count(), 1), cfg.oracle_cap);
    case Algorithm::bs_broadcast:
      return bs_broadcast_plan(gains.md_count());
  }
  throw std::logic_error("unreachable algorithm case");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (c_values.empty()) throw std::invalid_argument("config: c_values must be non-empty");
  for (int c : c_values)
    if (c < 0) throw std::invalid_argument("config: c_values entries must be >= 0");
  if (algorithms.empty())
    throw std::invalid_argument("config: algorithms must be non-empty");
  if (!(radius_m > 0.0)) throw std::invalid_argument("config: radius_m must be > 0");
  if (!(r_min > 0.0)) throw std::invalid_argument("config: r_min must be > 0");
  if (h_max_cluster < 1)
    throw std::invalid_argument("config: h_max_cluster must be >= 1");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  channel.validate();
  const bool wants_optimal =
      std::find(algorithms.begin(), algorithms.end(), Algorithm::optimal) !=
      algorithms.end();
  if (wants_optimal)
    for (int c : c_values)
      if (c > oracle_cap)
        throw std::invalid_argument(
            "config: optimal requested but c=" + std::to_string(c) +
            " exceeds the oracle cap " + std::to_string(oracle_cap));
}

double CellData::mean_power() const {
  double sum = 0.0;
  for (double p : power_w) sum += p;
  return power_w.empty() ? 0.0 : sum / static_cast<double>(power_w.size());
}

double CellData::stderr_power() const {
  const std::size_t n = power_w.size();
  if (n < 2) return 0.0;
  const double mean = mean_power();
  double ss = 0.0;
  for (double p : power_w) ss += (p - mean) * (p - mean);
  return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

double CellData::mean_hops() const {
  double sum = 0.0;
  for (int h : hops) sum += h;
  return hops.empty() ? 0.0 : sum / static_cast<double>(hops.size());
}

std::vector<double> CellData::mean_coverage() const {
  std::size_t max_len = 0;
  for (const auto& curve : coverage) max_len = std::max(max_len, curve.size());
  std::vector<double> mean(max_len, 0.0);
  if (coverage.empty()) return mean;
  for (const auto& curve : coverage)
    for (std::size_t h = 0; h < max_len; ++h)
      mean[h] += (h < curve.size()) ? curve[h] : 1.0;
  for (double& v : mean) v /= static_cast<double>(coverage.size());
  return mean;
}

const CellData& AggregateResult::cell(int c, Algorithm a) const {
  auto it = cells.find({c, a});
  if (it == cells.end())
    throw std::out_of_range("AggregateResult: no cell for c=" + std::to_string(c) +
                            ", algorithm " + to_string(a));
  return it->second;
}

AggregateResult run(const ExperimentConfig& config) {
  config.validate();

  AggregateResult result;
  for (int c : config.c_values)
    for (Algorithm a : config.algorithms) {
      auto& cell = result.cells[{c, a}];
      cell.power_w.resize(config.trials);
      cell.hops.resize(config.trials);
      cell.coverage.resize(config.trials);
    }

  struct Task { int c; int trial; };
  std::vector<Task> tasks;
  tasks.reserve(config.c_values.size() * config.trials);
  for (int c : config.c_values)
    for (int t = 0; t < config.trials; ++t) tasks.push_back({c, t});

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        const auto [c, trial] = tasks[i];
        const std::uint64_t seed =
            derive_seed(config.master_seed, kTrialStreamTag,
                        static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(trial));
        auto [scenario, gains] = generate(seed, c, config.radius_m, config.channel);
        for (Algorithm a : config.algorithms) {
          MulticastPlan plan = run_algorithm(a, gains, config);
          auto violations = validate(plan, gains, config.r_min,
                                     h_max_for(a, c, config), config.channel);
          if (!violations.empty())
            throw std::logic_error("internal: " + to_string(a) +
                                   " emitted an infeasible plan (trial " +
                                   std::to_string(trial) + ", c=" + std::to_string(c) +
                                   "): " + PlanInvalidError(violations).what());
          PlanMetrics m = metrics(plan, gains, config.r_min, config.channel);
          auto& cell = result.cells.at({c, a});
          cell.power_w[trial] = m.total_power_w;
          cell.hops[trial] = m.num_hops;
          cell.coverage[trial] = std::move(m.coverage_by_hop);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  unsigned n_threads = config.threads > 0
                           ? static_cast<unsigned>(config.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, std::max<std::size_t>(tasks.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  return result;
}

std::vector<Fig3Row> fig3_sweep(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.algorithms = {Algorithm::channel_gain, Algorithm::cluster, Algorithm::bs_broadcast};
  AggregateResult agg = run(cfg);

  std::vector<Fig3Row> rows;
  for (int c : cfg.c_values)
    for (Algorithm a : cfg.algorithms) {
      const auto& cell = agg.cell(c, a);
      rows.push_back({c, a, cell.mean_power(), cell.stderr_power(),
                      static_cast<int>(cell.power_w.size())});
    }
  return rows;
}

std::vector<Fig4Row> fig4_coverage(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.c_values = {100};
  cfg.algorithms = {Algorithm::channel_gain, Algorithm::cluster};
  AggregateResult agg = run(cfg);

  std::vector<std::vector<double>> curves;
  std::size_t max_len = 0;
  for (Algorithm a : cfg.algorithms) {
    curves.push_back(agg.cell(100, a).mean_coverage());
    max_len = std::max(max_len, curves.back().size());
  }

  std::vector<Fig4Row> rows;
  for (std::size_t h = 0; h < max_len; ++h)
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
      const double cov = h < curves[i].size() ? curves[i][h] : 1.0;
      rows.push_back({static_cast<int>(h + 1), cfg.algorithms[i], cov});
    }
  return rows;
}

std::vector<Table2Row> table2(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.algorithms = {Algorithm::channel_gain, Algorithm::cluster, Algorithm::optimal};
  AggregateResult agg = run(cfg);

  std::vector<Table2Row> rows;
  for (int c : cfg.c_values) {
    const auto& optimal = agg.cell(c, Algorithm::optimal);
    for (Algorithm a : cfg.algorithms) {
      const auto& cell = agg.cell(c, a);
      double ratio_sum = 0.0;
      int counted = 0;
      for (std::size_t t = 0; t < cell.power_w.size(); ++t) {
        if (optimal.power_w[t] > 0.0) {
          ratio_sum += cell.power_w[t] / optimal.power_w[t];
          ++counted;
        }
      }
      const double ratio = counted > 0 ? ratio_sum / counted : 1.0;
      rows.push_back({c, a, cell.mean_power(), ratio});
    }
  }
  return rows;
}

void write_fig3_csv(std::ostream& os, const std::vector<Fig3Row>& rows) {
  os << "c,algorithm,mean_power_w,stderr_w,trials\n";
  for (const auto& r : rows)
    os << r.c << ',' << to_string(r.algorithm) << ',' << format_double(r.mean_power_w)
       << ',' << format_double(r.stderr_w) << ',' << r.trials << '\n';
}

void write_fig4_csv(std::ostream& os, const std::vector<Fig4Row>& rows) {
  os << "hop,algorithm,mean_coverage\n";
  for (const auto& r : rows)
    os << r.hop << ',' << to_string(r.algorithm) << ','
       << format_double(r.mean_coverage) << '\n';
}

void write_table2_csv(std::ostream& os, const std::vector<Table2Row>& rows) {
  os << "c,algorithm,mean_power_w,ratio_to_optimal\n";
  for (const auto& r : rows)
    os << r.c << ',' << to_string(r.algorithm) << ',' << format_double(r.mean_power_w)
       << ',' << format_double(r.ratio_to_optimal) << '\n';
}

}  // namespace experiments
}  // namespace d2dmm
