#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "d2dmm/channel_model.hpp"
#include "d2dmm/plan.hpp"
#include "d2dmm/scenario.hpp"

namespace d2dmm {

// Scenario document (schema v1): seed, radius, MD positions and an echo of
// the channel parameters the gains were realized under. Gains themselves
// are not stored; realize_gains reproduces them from the seed.
nlohmann::json scenario_to_json(const Scenario& scenario, const ChannelParams& params);
std::pair<Scenario, ChannelParams> scenario_from_json(const nlohmann::json& doc);

// Plan document (schema v1): groups by hop with the derived per-group
// power and worst receiver, plus the plan total.
nlohmann::json plan_to_json(const MulticastPlan& plan, const GainMatrix& gains,
                            double r_min, const ChannelParams& params);
MulticastPlan plan_from_json(const nlohmann::json& doc);

std::string dump_json(const nlohmann::json& doc);  // canonical 2-space indent

}  // namespace d2dmm
