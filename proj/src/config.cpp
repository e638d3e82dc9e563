#include "d2dmm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace d2dmm {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::string format_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ChannelParams RunConfig::channel_params() const {
  ChannelParams p;
  p.k_db = k_db;
  p.beta = beta;
  p.d0_m = d0_m;
  p.sigma_shadow_db = sigma_shadow_db;
  p.n0_w = dbm_to_watts(n0_dbm);
  p.validate();
  return p;
}

cluster::ThresholdSchedule RunConfig::threshold_schedule() const {
  cluster::ThresholdSchedule sched;
  if (threshold_init_db) sched.initial_per_n0 = db_to_linear(*threshold_init_db);
  sched.step_db = threshold_step_db;
  sched.retry_budget = threshold_retry_budget;
  return sched;
}

experiments::ExperimentConfig RunConfig::experiment_config() const {
  experiments::ExperimentConfig cfg;
  cfg.master_seed = master_seed;
  cfg.trials = trials;
  cfg.c_values = c_values;
  cfg.algorithms = algorithms;
  cfg.r_min = r_min;
  cfg.h_max_cluster = h_max_cluster;
  cfg.radius_m = radius_m;
  cfg.channel = channel_params();
  cfg.threshold = threshold_schedule();
  cfg.oracle_cap = oracle_cap;
  cfg.threads = threads;
  return cfg;
}

std::map<std::string, std::string> RunConfig::to_key_values() const {
  std::map<std::string, std::string> kv;
  kv["radius_m"] = format_num(radius_m);
  kv["n0_dbm"] = format_num(n0_dbm);
  kv["k_db"] = format_num(k_db);
  kv["beta"] = format_num(beta);
  kv["d0_m"] = format_num(d0_m);
  kv["sigma_shadow_db"] = format_num(sigma_shadow_db);
  kv["r_min"] = format_num(r_min);
  kv["h_max_cluster"] = std::to_string(h_max_cluster);
  kv["oracle_cap"] = std::to_string(oracle_cap);
  kv["threshold_init_db"] = threshold_init_db ? format_num(*threshold_init_db) : "auto";
  kv["threshold_step_db"] = format_num(threshold_step_db);
  kv["threshold_retry_budget"] = std::to_string(threshold_retry_budget);
  kv["master_seed"] = std::to_string(master_seed);
  kv["trials"] = std::to_string(trials);
  {
    std::string joined;
    for (int c : c_values) joined += (joined.empty() ? "" : ",") + std::to_string(c);
    kv["c_values"] = joined;
  }
  {
    std::string joined;
    for (Algorithm a : algorithms)
      joined += (joined.empty() ? "" : ",") + to_string(a);
    kv["algorithms"] = joined;
  }
  kv["output_dir"] = output_dir;
  kv["threads"] = std::to_string(threads);
  return kv;
}

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second)
      throw ConfigError("config key '" + key + "' appears more than once");

    if (key == "radius_m") cfg.radius_m = parse_double(key, value);
    else if (key == "n0_dbm") cfg.n0_dbm = parse_double(key, value);
    else if (key == "k_db") cfg.k_db = parse_double(key, value);
    else if (key == "beta") cfg.beta = parse_double(key, value);
    else if (key == "d0_m") cfg.d0_m = parse_double(key, value);
    else if (key == "sigma_shadow_db") cfg.sigma_shadow_db = parse_double(key, value);
    else if (key == "r_min") cfg.r_min = parse_double(key, value);
    else if (key == "h_max_cluster") cfg.h_max_cluster = static_cast<int>(parse_int(key, value));
    else if (key == "oracle_cap") cfg.oracle_cap = static_cast<int>(parse_int(key, value));
    else if (key == "threshold_init_db") {
      if (value == "auto") cfg.threshold_init_db.reset();
      else cfg.threshold_init_db = parse_double(key, value);
    }
    else if (key == "threshold_step_db") cfg.threshold_step_db = parse_double(key, value);
    else if (key == "threshold_retry_budget")
      cfg.threshold_retry_budget = static_cast<int>(parse_int(key, value));
    else if (key == "master_seed")
      cfg.master_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "trials") cfg.trials = static_cast<int>(parse_int(key, value));
    else if (key == "c_values") {
      cfg.c_values.clear();
      for (const auto& item : split_csv(value))
        cfg.c_values.push_back(static_cast<int>(parse_int(key, item)));
    }
    else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& item : split_csv(value)) {
        try {
          cfg.algorithms.push_back(algorithm_from_string(item));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("config key 'algorithms': ") + e.what());
        }
      }
    }
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "threads") cfg.threads = static_cast<int>(parse_int(key, value));
    else
      throw ConfigError("unknown config key '" + key + "' (line " +
                        std::to_string(line_no) + ")");
  }

  // Fail fast on out-of-range values so the CLI reports them as config
  // errors rather than deep inside a run.
  if (cfg.trials < 1) throw ConfigError("config key 'trials': must be >= 1");
  if (cfg.h_max_cluster < 1) throw ConfigError("config key 'h_max_cluster': must be >= 1");
  if (cfg.oracle_cap < 0) throw ConfigError("config key 'oracle_cap': must be >= 0");
  if (cfg.threads < 0) throw ConfigError("config key 'threads': must be >= 0");
  if (cfg.threshold_retry_budget < 0)
    throw ConfigError("config key 'threshold_retry_budget': must be >= 0");
  if (!(cfg.threshold_step_db > 0))
    throw ConfigError("config key 'threshold_step_db': must be > 0");
  if (!(cfg.radius_m > 0)) throw ConfigError("config key 'radius_m': must be > 0");
  if (!(cfg.r_min > 0)) throw ConfigError("config key 'r_min': must be > 0");
  if (cfg.c_values.empty()) throw ConfigError("config key 'c_values': must be non-empty");
  for (int c : cfg.c_values)
    if (c < 0) throw ConfigError("config key 'c_values': entries must be >= 0");
  try {
    cfg.channel_params();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: invalid channel parameters: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

}  // namespace d2dmm
