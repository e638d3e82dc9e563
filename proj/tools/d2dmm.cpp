// d2dmm: minimum-power multicast multihop D2D planning and simulation.
//
// Subcommands: generate (scenario JSON), solve (plan JSON + metrics),
// validate (constraint check with tagged violations), experiment
// (Monte Carlo CSV tables + run manifest).
//
// Exit codes: 0 success, 1 validation found violations, 2 user/config
// error, 3 resource refusal, 4 internal invariant violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2dmm/config.hpp"
#include "d2dmm/experiments.hpp"
#include "d2dmm/greedy_channel_gain.hpp"
#include "d2dmm/greedy_cluster.hpp"
#include "d2dmm/json_io.hpp"
#include "d2dmm/optimal_oracle.hpp"
#include "d2dmm/plan.hpp"
#include "d2dmm/scenario.hpp"
#include "d2dmm/version.hpp"

namespace fs = std::filesystem;
using namespace d2dmm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUserError = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
};

RunConfig load_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = RunConfig::from_file(opts.config_path);
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.trials) {
    if (*opts.trials < 1) throw ConfigError("--trials must be >= 1");
    cfg.trials = *opts.trials;
  }
  if (opts.threads) {
    if (*opts.threads < 0) throw ConfigError("--threads must be >= 0");
    cfg.threads = *opts.threads;
  }
  if (opts.out_dir) cfg.output_dir = *opts.out_dir;
  return cfg;
}

void write_text(const std::string& path_or_empty, const std::string& payload) {
  if (path_or_empty.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path_or_empty, std::ios::binary);
  if (!out) throw ConfigError("cannot write to '" + path_or_empty + "'");
  out << payload;
  if (!out) throw ConfigError("write failed for '" + path_or_empty + "'");
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
  return doc;
}

MulticastPlan dispatch_solve(Algorithm algorithm, const GainMatrix& gains,
                             const ChannelParams& params, double radius_m,
                             const RunConfig& cfg, int oracle_h_max) {
  switch (algorithm) {
    case Algorithm::channel_gain:
      return channel_gain::solve(gains);
    case Algorithm::cluster:
      return cluster::solve(gains, params, radius_m, cfg.h_max_cluster,
                            cfg.threshold_schedule());
    case Algorithm::optimal:
      return oracle::solve_optimal(gains, cfg.r_min, params, oracle_h_max,
                                   cfg.oracle_cap);
    case Algorithm::bs_broadcast:
      return bs_broadcast_plan(gains.md_count());
  }
  throw std::logic_error("unreachable algorithm case");
}

int h_max_for_algorithm(Algorithm a, int c, const RunConfig& cfg) {
  switch (a) {
    case Algorithm::channel_gain: return std::max(c, 1);
    case Algorithm::cluster: return cfg.h_max_cluster;
    case Algorithm::optimal: return std::max(c, 1);
    case Algorithm::bs_broadcast: return 1;
  }
  return 1;
}

int cmd_generate(const CommonOpts& common, int c, std::optional<double> radius,
                 const std::string& out_path) {
  RunConfig cfg = load_config(common);
  if (radius) cfg.radius_m = *radius;
  const ChannelParams params = cfg.channel_params();
  auto [scenario, gains] = generate(cfg.master_seed, c, cfg.radius_m, params);
  write_text(out_path, dump_json(scenario_to_json(scenario, params)));
  return kExitOk;
}

int cmd_solve(const CommonOpts& common, const std::string& scenario_path,
              const std::string& algorithm_name, const std::string& out_path) {
  RunConfig cfg = load_config(common);
  const Algorithm algorithm = algorithm_from_string(algorithm_name);

  auto [scenario, params] = scenario_from_json(load_json_file(scenario_path));
  const GainMatrix gains = realize_gains(scenario, params);
  const int c = scenario.md_count();

  MulticastPlan plan =
      dispatch_solve(algorithm, gains, params, scenario.radius_m, cfg, std::max(c, 1));

  const int h_max = h_max_for_algorithm(algorithm, c, cfg);
  auto violations = validate(plan, gains, cfg.r_min, h_max, params);
  if (!violations.empty())
    throw std::logic_error("internal: solver emitted an infeasible plan: " +
                           std::string(PlanInvalidError(violations).what()));

  write_text(out_path, dump_json(plan_to_json(plan, gains, cfg.r_min, params)));

  const PlanMetrics m = metrics(plan, gains, cfg.r_min, params);
  std::fprintf(stderr, "algorithm: %s\n", to_string(algorithm).c_str());
  if (m.total_power_w > 0.0)
    std::fprintf(stderr, "total power: %.6g W (%.2f dBm)\n", m.total_power_w,
                 watts_to_dbm(m.total_power_w));
  else
    std::fprintf(stderr, "total power: 0 W\n");
  std::fprintf(stderr, "hops: %d, groups: %d\n", m.num_hops, m.num_groups);
  std::string cov;
  for (double v : m.coverage_by_hop) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f ", v);
    cov += buf;
  }
  std::fprintf(stderr, "coverage by hop: %s\n", cov.c_str());
  return kExitOk;
}

int cmd_validate(const CommonOpts& common, const std::string& scenario_path,
                 const std::string& plan_path, std::optional<int> h_max_opt,
                 bool strict) {
  RunConfig cfg = load_config(common);
  auto [scenario, params] = scenario_from_json(load_json_file(scenario_path));
  const GainMatrix gains = realize_gains(scenario, params);
  MulticastPlan plan = plan_from_json(load_json_file(plan_path));

  const int h_max = h_max_opt ? *h_max_opt : std::max(scenario.md_count(), 1);
  auto violations = validate(plan, gains, cfg.r_min, h_max, params, strict);
  if (violations.empty()) {
    std::fprintf(stderr, "plan is feasible (%d groups, C=%d)\n",
                 static_cast<int>(plan.groups.size()), plan.c);
    return kExitOk;
  }
  for (const auto& v : violations)
    std::fprintf(stderr, "violation (%d) %s: %s\n", constraint_number(v.constraint),
                 constraint_name(v.constraint).c_str(), v.detail.c_str());
  return kExitViolations;
}

int cmd_experiment(const CommonOpts& common, const std::string& which) {
  RunConfig cfg = load_config(common);
  experiments::ExperimentConfig ecfg = cfg.experiment_config();

  fs::path out_dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw ConfigError("cannot create output directory '" + out_dir.string() +
                      "': " + ec.message());

  auto write_csv = [&](const std::string& name, const std::string& body) {
    const fs::path path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write to '" + path.string() + "'");
    out << body;
    if (!out) throw ConfigError("write failed for '" + path.string() + "'");
  };

  std::string csv_name;
  std::ostringstream csv;
  if (which == "fig3") {
    experiments::write_fig3_csv(csv, experiments::fig3_sweep(ecfg));
    csv_name = "fig3.csv";
  } else if (which == "fig4") {
    experiments::write_fig4_csv(csv, experiments::fig4_coverage(ecfg));
    csv_name = "fig4.csv";
  } else if (which == "table2") {
    experiments::write_table2_csv(csv, experiments::table2(ecfg));
    csv_name = "table2.csv";
  } else {
    throw ConfigError("unknown experiment '" + which +
                      "' (expected fig3, fig4 or table2)");
  }
  write_csv(csv_name, csv.str());

  nlohmann::json manifest = {
      {"schema_version", 1},
      {"tool", "d2dmm"},
      {"version", kVersion},
      {"command", "experiment " + which},
      {"outputs", {csv_name}},
      {"config", cfg.to_key_values()},
  };
  write_csv(which + ".manifest.json", dump_json(manifest));

  std::fprintf(stderr, "wrote %s and %s.manifest.json to %s\n", csv_name.c_str(),
               which.c_str(), out_dir.string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-power multicast multihop D2D planner"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--config", common.config_path, "run configuration file (key = value)")
      ->envname("D2DMM_CONFIG");

  std::uint64_t seed_val = 0;
  int trials_val = 0;
  int threads_val = 0;
  std::string out_dir_val;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_val, "master seed override");
    sub->add_option("--threads", threads_val, "worker thread cap (0 = all cores)");
  };

  // generate
  auto* gen = app.add_subcommand("generate", "generate a scenario JSON document");
  int gen_c = 0;
  double gen_radius = 0.0;
  std::string gen_out;
  gen->add_option("--c", gen_c, "number of MDs")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--radius", gen_radius, "cell radius in meters");
  gen->add_option("--out", gen_out, "output file (default stdout)");
  add_common(gen);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one scenario and emit the plan JSON");
  std::string solve_scenario, solve_algorithm, solve_out;
  solve->add_option("--scenario", solve_scenario, "scenario JSON file")->required();
  solve->add_option("--algorithm", solve_algorithm, "planning algorithm")
      ->required()
      ->check(CLI::IsMember({"channel-gain", "cluster", "optimal", "bs-broadcast",
                             "channel_gain", "bs_broadcast"}));
  solve->add_option("--out", solve_out, "output file (default stdout)");
  add_common(solve);

  // validate
  auto* val = app.add_subcommand("validate", "check a plan against a scenario");
  std::string val_scenario, val_plan;
  int val_h_max = 0;
  bool val_strict = false;
  val->add_option("--scenario", val_scenario, "scenario JSON file")->required();
  val->add_option("--plan", val_plan, "plan JSON file")->required();
  val->add_option("--h-max", val_h_max, "hop budget (default: C)");
  val->add_flag("--strict", val_strict,
                "also require relays to receive directly from the BS on hop 1");
  add_common(val);

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a Monte Carlo campaign");
  std::string exp_which;
  exp->add_option("name", exp_which, "which experiment to run")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "table2"}));
  exp->add_option("--trials", trials_val, "trials per point");
  exp->add_option("--out-dir", out_dir_val, "output directory");
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUserError;
  }

  // overrides only count once their flag was actually given
  auto given = [](CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  auto* active = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
  if (active) {
    if (given(active, "--seed")) common.seed = seed_val;
    if (given(active, "--threads")) common.threads = threads_val;
    if (given(active, "--trials")) common.trials = trials_val;
    if (given(active, "--out-dir")) common.out_dir = out_dir_val;
  }

  try {
    if (gen->parsed())
      return cmd_generate(common, gen_c,
                          gen->count("--radius") ? std::optional<double>(gen_radius)
                                                 : std::nullopt,
                          gen_out);
    if (solve->parsed()) return cmd_solve(common, solve_scenario, solve_algorithm, solve_out);
    if (val->parsed())
      return cmd_validate(common, val_scenario, val_plan,
                          val->count("--h-max") ? std::optional<int>(val_h_max)
                                                : std::nullopt,
                          val_strict);
    if (exp->parsed()) return cmd_experiment(common, exp_which);
    std::fprintf(stderr, "no subcommand given\n");
    return kExitUserError;
  } catch (const oracle::ResourceLimitError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitResource;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUserError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUserError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUserError;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUserError;
  }
}
