#include <doctest.h>

#include <sstream>

#include "d2dmm/config.hpp"
#include "d2dmm/json_io.hpp"
#include "d2dmm/scenario.hpp"

using namespace d2dmm;

TEST_CASE("defaults match the standard simulation setup") {
  const RunConfig cfg;
  CHECK(cfg.radius_m == 500.0);
  CHECK(cfg.n0_dbm == -100.0);
  CHECK(cfg.k_db == -31.54);
  CHECK(cfg.beta == 3.0);
  CHECK(cfg.d0_m == 1.0);
  CHECK(cfg.r_min == 10.0);
  CHECK(cfg.h_max_cluster == 10);
  CHECK(cfg.channel_params().n0_w == doctest::Approx(1e-13).epsilon(1e-12));
}

TEST_CASE("config parsing") {
  SUBCASE("comments, blanks and overrides") {
    const auto cfg = RunConfig::from_string(
        "# cell setup\n"
        "radius_m = 250\n"
        "\n"
        "trials = 42   # small run\n"
        "c_values = 3, 5, 9\n"
        "algorithms = channel-gain, cluster\n");
    CHECK(cfg.radius_m == 250.0);
    CHECK(cfg.trials == 42);
    CHECK(cfg.c_values == std::vector<int>{3, 5, 9});
    REQUIRE(cfg.algorithms.size() == 2);
    CHECK(cfg.algorithms[0] == Algorithm::channel_gain);
  }

  SUBCASE("unknown keys are named in the error") {
    try {
      RunConfig::from_string("radiu_m = 250\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("radiu_m") != std::string::npos);
    }
  }

  SUBCASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(RunConfig::from_string("trials = 2\ntrials = 3\n"), ConfigError);
  }

  SUBCASE("malformed numbers are rejected") {
    CHECK_THROWS_AS(RunConfig::from_string("radius_m = fast\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string("trials = 10.5\n"), ConfigError);
  }

  SUBCASE("out-of-range values are rejected") {
    CHECK_THROWS_AS(RunConfig::from_string("trials = 0\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string("beta = -1\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string("h_max_cluster = 0\n"), ConfigError);
  }

  SUBCASE("threshold knobs") {
    auto cfg = RunConfig::from_string("threshold_init_db = 35\n");
    REQUIRE(cfg.threshold_init_db.has_value());
    CHECK(*cfg.threshold_init_db == 35.0);
    CHECK(cfg.threshold_schedule().initial_per_n0.has_value());

    cfg = RunConfig::from_string("threshold_init_db = auto\n");
    CHECK(!cfg.threshold_init_db.has_value());
    CHECK(!cfg.threshold_schedule().initial_per_n0.has_value());
  }
}

TEST_CASE("key-value echo parses back to the same config") {
  RunConfig cfg;
  cfg.trials = 77;
  cfg.sigma_shadow_db = 6.5;
  cfg.c_values = {10, 20};
  cfg.algorithms = {Algorithm::cluster};
  cfg.threshold_init_db = 31.0;

  std::ostringstream os;
  for (const auto& [k, v] : cfg.to_key_values()) os << k << " = " << v << "\n";
  const RunConfig back = RunConfig::from_string(os.str());

  CHECK(back.trials == cfg.trials);
  CHECK(back.sigma_shadow_db == cfg.sigma_shadow_db);
  CHECK(back.c_values == cfg.c_values);
  CHECK(back.algorithms == cfg.algorithms);
  CHECK(back.threshold_init_db == cfg.threshold_init_db);
  CHECK(back.master_seed == cfg.master_seed);
}

TEST_CASE("scenario JSON round trip preserves the realized gains") {
  const ChannelParams params;
  auto [sc, gains] = generate(908, 7, 500.0, params);
  const auto doc = scenario_to_json(sc, params);
  auto [back, back_params] = scenario_from_json(doc);

  CHECK(back.seed == sc.seed);
  CHECK(back.radius_m == sc.radius_m);
  REQUIRE(back.positions.size() == sc.positions.size());
  const GainMatrix regained = realize_gains(back, back_params);
  for (NodeId m = 0; m <= 7; ++m)
    for (NodeId n = m + 1; n <= 7; ++n) CHECK(regained.at(m, n) == gains.at(m, n));
}

TEST_CASE("scenario JSON rejects malformed documents") {
  const ChannelParams params;
  auto [sc, gains] = generate(1, 2, 500.0, params);
  auto doc = scenario_to_json(sc, params);
  doc["c"] = 5;
  CHECK_THROWS_AS(scenario_from_json(doc), std::invalid_argument);

  auto doc2 = scenario_to_json(sc, params);
  doc2.erase("seed");
  CHECK_THROWS_AS(scenario_from_json(doc2), std::invalid_argument);

  auto doc3 = scenario_to_json(sc, params);
  doc3["schema_version"] = 99;
  CHECK_THROWS_AS(scenario_from_json(doc3), std::invalid_argument);
}

TEST_CASE("plan JSON round trip stays feasible with matching powers") {
  const ChannelParams params;
  auto [sc, gains] = generate(31, 5, 500.0, params);

  MulticastPlan plan;
  plan.c = 5;
  {
    MulticastGroup g1;
    g1.transmitter = 0;
    g1.receivers = {1, 2, 3};
    g1.hop = 1;
    MulticastGroup g2;
    g2.transmitter = 1;
    g2.receivers = {4, 5};
    g2.hop = 2;
    plan.groups = {g1, g2};
  }
  REQUIRE(validate(plan, gains, 10.0, 10, params).empty());

  const auto doc = plan_to_json(plan, gains, 10.0, params);
  CHECK(doc.at("total_power_w").get<double>() ==
        doctest::Approx(total_power(plan, gains, 10.0, params)));

  const MulticastPlan back = plan_from_json(doc);
  CHECK(back.c == plan.c);
  REQUIRE(back.groups.size() == plan.groups.size());
  CHECK(validate(back, gains, 10.0, 10, params).empty());
  CHECK(total_power(back, gains, 10.0, params) ==
        doctest::Approx(total_power(plan, gains, 10.0, params)));

  // declared fields are present after a load and checked by the validator
  for (const auto& g : back.groups) {
    CHECK(g.declared_power_w.has_value());
    CHECK(g.declared_worst_rx.has_value());
  }
}

TEST_CASE("plan JSON refuses infeasible plans at serialization time") {
  const ChannelParams params;
  auto [sc, gains] = generate(32, 3, 500.0, params);
  MulticastPlan broken;
  broken.c = 3;
  MulticastGroup g;
  g.transmitter = 0;
  g.receivers = {1, 2};  // MD 3 missing
  g.hop = 1;
  broken.groups = {g};
  CHECK_THROWS_AS(plan_to_json(broken, gains, 10.0, params), PlanInvalidError);
}

TEST_CASE("json dumps are stable") {
  const ChannelParams params;
  auto [sc, gains] = generate(2, 3, 500.0, params);
  CHECK(dump_json(scenario_to_json(sc, params)) ==
        dump_json(scenario_to_json(sc, params)));
}
