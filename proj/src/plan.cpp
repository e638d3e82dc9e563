#include "d2dmm/plan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace d2dmm {

namespace {

constexpr double kPowerRelTol = 1e-9;

std::string group_label(const MulticastGroup& g, std::size_t index) {
  std::ostringstream os;
  os << "group #" << index << " (tx " << g.transmitter << ", hop " << g.hop << ")";
  return os.str();
}

}  // namespace

int constraint_number(Constraint c) {
  switch (c) {
    case Constraint::worst_channel: return 5;
    case Constraint::bs_hop: return 6;
    case Constraint::causality: return 7;
    case Constraint::min_rate: return 8;
    case Constraint::coverage_once: return 9;
    case Constraint::hop_bound: return 10;
  }
  return 0;
}

std::string constraint_name(Constraint c) {
  switch (c) {
    case Constraint::worst_channel: return "worst-channel power";
    case Constraint::bs_hop: return "base-station hop structure";
    case Constraint::causality: return "relay causality";
    case Constraint::min_rate: return "minimum rate";
    case Constraint::coverage_once: return "exactly-once coverage";
    case Constraint::hop_bound: return "hop bound";
  }
  return "unknown";
}

PlanInvalidError::PlanInvalidError(std::vector<Violation> violations)
    : std::runtime_error([&violations] {
        std::ostringstream os;
        os << "plan failed validation:";
        for (const auto& v : violations)
          os << " (" << constraint_number(v.constraint) << ") " << v.detail << ";";
        return os.str();
      }()),
      violations_(std::move(violations)) {}

std::vector<Violation> validate(const MulticastPlan& plan, const GainMatrix& gains,
                                double r_min, int h_max, const ChannelParams& params,
                                bool strict_bs_hop1) {
  const int c = plan.c;
  if (c != gains.md_count())
    throw std::invalid_argument("validate: plan and gain matrix disagree on MD count");
  for (const auto& g : plan.groups) {
    if (g.transmitter < 0 || g.transmitter > c)
      throw std::invalid_argument("validate: transmitter id out of range");
    for (NodeId r : g.receivers)
      if (r < 0 || r > c) throw std::invalid_argument("validate: receiver id out of range");
  }

  std::vector<Violation> out;
  auto flag = [&out](Constraint con, std::string detail) {
    out.push_back({con, std::move(detail)});
  };

  // Earliest hop at which each MD receives; needed for causality checks.
  std::vector<int> receive_count(c + 1, 0);
  std::vector<int> first_receive_hop(c + 1, 0);
  for (const auto& g : plan.groups) {
    for (NodeId r : g.receivers) {
      if (r == kBaseStation) continue;
      if (receive_count[r] == 0 || g.hop < first_receive_hop[r]) first_receive_hop[r] = g.hop;
      ++receive_count[r];
    }
  }
  std::set<NodeId> bs_hop1_receivers;
  for (const auto& g : plan.groups)
    if (g.transmitter == kBaseStation && g.hop == 1)
      bs_hop1_receivers.insert(g.receivers.begin(), g.receivers.end());

  for (std::size_t i = 0; i < plan.groups.size(); ++i) {
    const auto& g = plan.groups[i];
    const std::string label = group_label(g, i);

    bool structurally_sound = true;
    if (g.receivers.empty()) {
      flag(Constraint::worst_channel, label + ": empty receiver set, group rate undefined");
      structurally_sound = false;
    }
    {
      std::set<NodeId> uniq(g.receivers.begin(), g.receivers.end());
      if (uniq.size() != g.receivers.size())
        flag(Constraint::coverage_once, label + ": duplicate receiver within group");
      if (uniq.count(kBaseStation))
        flag(Constraint::coverage_once, label + ": base station listed as receiver");
      if (uniq.count(g.transmitter)) {
        flag(Constraint::causality, label + ": transmitter relays to itself");
        structurally_sound = false;
      }
    }

    if (g.hop < 1) flag(Constraint::hop_bound, label + ": hop index below 1");
    if (g.hop > h_max) flag(Constraint::hop_bound, label + ": hop exceeds h_max");

    if (g.hop == 1 && g.transmitter != kBaseStation)
      flag(Constraint::bs_hop, label + ": hop 1 must be transmitted by the base station");
    if (g.transmitter == kBaseStation && g.hop != 1)
      flag(Constraint::bs_hop, label + ": base station may transmit only on hop 1");

    if (g.transmitter != kBaseStation && g.hop >= 2) {
      const bool received_earlier = receive_count[g.transmitter] > 0 &&
                                    first_receive_hop[g.transmitter] < g.hop;
      if (!received_earlier)
        flag(Constraint::causality,
             label + ": transmitter has not received the content on an earlier hop");
      if (strict_bs_hop1 && g.hop >= 2 && !bs_hop1_receivers.count(g.transmitter))
        flag(Constraint::bs_hop,
             label + ": strict mode requires the transmitter to receive from the base "
                     "station on hop 1");
    }

    if (structurally_sound && g.transmitter >= 0) {
      const GroupPower gp = group_power(g.transmitter, g.receivers, gains, r_min, params);
      // sanity tripwire: at the derived power the worst member sits at r_min
      const double worst_gain = gains.at(g.transmitter, gp.worst_receiver);
      if (link_rate(LinkGain{worst_gain}, gp.power_w, params) < r_min * (1.0 - 1e-9))
        flag(Constraint::min_rate, label + ": derived power misses r_min");

      if (g.declared_power_w) {
        const double declared = *g.declared_power_w;
        if (declared < gp.power_w * (1.0 - kPowerRelTol))
          flag(Constraint::min_rate,
               label + ": declared power leaves the worst member below r_min");
        else if (declared > gp.power_w * (1.0 + kPowerRelTol))
          flag(Constraint::worst_channel,
               label + ": declared power is not the worst-channel minimum");
      }
      if (g.declared_worst_rx && *g.declared_worst_rx != gp.worst_receiver)
        flag(Constraint::worst_channel,
             label + ": declared worst receiver is not the gain argmin");
    }
  }

  // Exactly-once coverage over the whole plan (the partition constraint).
  for (NodeId md = 1; md <= c; ++md) {
    if (receive_count[md] == 0)
      flag(Constraint::coverage_once,
           "MD " + std::to_string(md) + " is never covered");
    else if (receive_count[md] > 1)
      flag(Constraint::coverage_once,
           "MD " + std::to_string(md) + " is covered " +
               std::to_string(receive_count[md]) + " times");
  }

  return out;
}

namespace {

// Power/metrics accessors validate structure first but place no bound on
// hop indices; the hop budget is a property of the config the plan was
// built under, not of the objective.
void require_valid(const MulticastPlan& plan, const GainMatrix& gains, double r_min,
                   const ChannelParams& params) {
  int max_hop = 1;
  for (const auto& g : plan.groups) max_hop = std::max(max_hop, g.hop);
  auto violations = validate(plan, gains, r_min, max_hop, params);
  if (!violations.empty()) throw PlanInvalidError(std::move(violations));
}

}  // namespace

double total_power(const MulticastPlan& plan, const GainMatrix& gains,
                   double r_min, const ChannelParams& params) {
  require_valid(plan, gains, r_min, params);
  double total = 0.0;
  for (const auto& g : plan.groups)
    total += group_power(g.transmitter, g.receivers, gains, r_min, params).power_w;
  return total;
}

PlanMetrics metrics(const MulticastPlan& plan, const GainMatrix& gains,
                    double r_min, const ChannelParams& params) {
  require_valid(plan, gains, r_min, params);
  PlanMetrics m;
  m.num_groups = static_cast<int>(plan.groups.size());
  for (const auto& g : plan.groups) {
    m.total_power_w += group_power(g.transmitter, g.receivers, gains, r_min, params).power_w;
    m.num_hops = std::max(m.num_hops, g.hop);
  }
  if (plan.c > 0) {
    std::vector<int> covered_at(m.num_hops + 1, 0);
    for (const auto& g : plan.groups)
      covered_at[g.hop] += static_cast<int>(g.receivers.size());
    m.coverage_by_hop.resize(m.num_hops);
    int cumulative = 0;
    for (int h = 1; h <= m.num_hops; ++h) {
      cumulative += covered_at[h];
      m.coverage_by_hop[h - 1] = static_cast<double>(cumulative) / plan.c;
    }
  }
  return m;
}

MulticastPlan bs_broadcast_plan(int c) {
  if (c < 0) throw std::invalid_argument("bs_broadcast_plan: negative MD count");
  MulticastPlan plan;
  plan.c = c;
  if (c > 0) {
    MulticastGroup g;
    g.transmitter = kBaseStation;
    g.hop = 1;
    g.receivers.resize(c);
    std::iota(g.receivers.begin(), g.receivers.end(), 1);
    plan.groups.push_back(std::move(g));
  }
  return plan;
}

}  // namespace d2dmm
