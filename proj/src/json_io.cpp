#include "d2dmm/json_io.hpp"

#include <map>
#include <stdexcept>

namespace d2dmm {

namespace {

constexpr int kScenarioSchema = 1;
constexpr int kPlanSchema = 1;

}  // namespace

nlohmann::json scenario_to_json(const Scenario& scenario, const ChannelParams& params) {
  nlohmann::json positions = nlohmann::json::array();
  for (const Point& p : scenario.positions) positions.push_back({p.x, p.y});
  return {
      {"schema_version", kScenarioSchema},
      {"seed", scenario.seed},
      {"radius_m", scenario.radius_m},
      {"c", scenario.md_count()},
      {"positions", std::move(positions)},
      {"params",
       {{"k_db", params.k_db},
        {"beta", params.beta},
        {"d0_m", params.d0_m},
        {"sigma_shadow_db", params.sigma_shadow_db},
        {"n0_w", params.n0_w}}},
  };
}

std::pair<Scenario, ChannelParams> scenario_from_json(const nlohmann::json& doc) {
  try {
    if (doc.value("schema_version", -1) != kScenarioSchema)
      throw std::invalid_argument("scenario: unsupported schema_version");
    Scenario sc;
    sc.seed = doc.at("seed").get<std::uint64_t>();
    sc.radius_m = doc.at("radius_m").get<double>();
    for (const auto& p : doc.at("positions"))
      sc.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (doc.at("c").get<int>() != sc.md_count())
      throw std::invalid_argument("scenario: c does not match the position list");

    const auto& pj = doc.at("params");
    ChannelParams params;
    params.k_db = pj.at("k_db").get<double>();
    params.beta = pj.at("beta").get<double>();
    params.d0_m = pj.at("d0_m").get<double>();
    params.sigma_shadow_db = pj.at("sigma_shadow_db").get<double>();
    params.n0_w = pj.at("n0_w").get<double>();
    params.validate();
    return {std::move(sc), params};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario document malformed: ") + e.what());
  }
}

nlohmann::json plan_to_json(const MulticastPlan& plan, const GainMatrix& gains,
                            double r_min, const ChannelParams& params) {
  // Rejects infeasible plans up front; emitted documents always validate.
  const double total = total_power(plan, gains, r_min, params);

  std::map<int, nlohmann::json> hops;
  for (const auto& g : plan.groups) {
    const GroupPower gp = group_power(g.transmitter, g.receivers, gains, r_min, params);
    auto& hop_entry = hops[g.hop];
    if (hop_entry.is_null()) hop_entry = {{"hop", g.hop}, {"groups", nlohmann::json::array()}};
    hop_entry["groups"].push_back({{"tx", g.transmitter},
                                   {"rx", g.receivers},
                                   {"power_w", gp.power_w},
                                   {"worst_rx", gp.worst_receiver}});
  }
  nlohmann::json hop_list = nlohmann::json::array();
  for (auto& [hop, entry] : hops) hop_list.push_back(std::move(entry));

  return {{"schema_version", kPlanSchema},
          {"c", plan.c},
          {"hops", std::move(hop_list)},
          {"total_power_w", total}};
}

MulticastPlan plan_from_json(const nlohmann::json& doc) {
  try {
    if (doc.value("schema_version", -1) != kPlanSchema)
      throw std::invalid_argument("plan: unsupported schema_version");
    MulticastPlan plan;
    plan.c = doc.at("c").get<int>();
    for (const auto& hop_entry : doc.at("hops")) {
      const int hop = hop_entry.at("hop").get<int>();
      for (const auto& gj : hop_entry.at("groups")) {
        MulticastGroup g;
        g.transmitter = gj.at("tx").get<NodeId>();
        g.receivers = gj.at("rx").get<std::vector<NodeId>>();
        g.hop = hop;
        g.declared_power_w = gj.at("power_w").get<double>();
        g.declared_worst_rx = gj.at("worst_rx").get<NodeId>();
        plan.groups.push_back(std::move(g));
      }
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("plan document malformed: ") + e.what());
  }
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace d2dmm
