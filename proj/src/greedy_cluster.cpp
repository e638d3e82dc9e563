#include "d2dmm/greedy_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace d2dmm {
namespace cluster {

double default_initial_per_n0(double radius_m, const ChannelParams& params) {
  if (!(radius_m > 0.0))
    throw std::invalid_argument("default_initial_per_n0: radius must be > 0");
  const double gain_db = path_gain_db(radius_m / 4.0, params, 0.0);
  return db_to_linear(gain_db) / params.n0_w;
}

CandidateFamily build_candidates(const std::vector<NodeId>& transmitters,
                                 const std::vector<NodeId>& uncovered,
                                 const GainMatrix& gains, double threshold_per_n0,
                                 const ChannelParams& params) {
  CandidateFamily family;
  for (NodeId s : transmitters) {
    auto& set = family.sets[s];
    for (NodeId r : uncovered)
      if (gains.at(s, r) / params.n0_w >= threshold_per_n0) set.push_back(r);
  }
  return family;
}

std::vector<MulticastGroup> greedy_set_cover(const std::vector<NodeId>& uncovered,
                                             const CandidateFamily& family,
                                             const GainMatrix* gains, int hop) {
  std::vector<NodeId> pool = uncovered;
  std::sort(pool.begin(), pool.end());
  std::vector<MulticastGroup> groups;

  while (!pool.empty()) {
    NodeId best_tx = -1;
    std::vector<NodeId> best_members;
    double best_worst_gain = 0.0;

    for (const auto& [tx, candidates] : family.sets) {
      std::vector<NodeId> members;
      for (NodeId r : candidates)
        if (std::binary_search(pool.begin(), pool.end(), r)) members.push_back(r);
      if (members.empty()) continue;

      double worst_gain = std::numeric_limits<double>::infinity();
      if (gains)
        for (NodeId r : members) worst_gain = std::min(worst_gain, gains->at(tx, r));

      const bool larger = members.size() > best_members.size();
      const bool tie_better = members.size() == best_members.size() && gains &&
                              worst_gain > best_worst_gain;
      if (best_tx < 0 || larger || tie_better) {
        best_tx = tx;
        best_members = std::move(members);
        best_worst_gain = worst_gain;
      }
    }
    if (best_tx < 0) break;  // nothing left is reachable

    MulticastGroup g;
    g.transmitter = best_tx;
    g.receivers = best_members;
    g.hop = hop;
    groups.push_back(std::move(g));

    std::vector<NodeId> remaining;
    remaining.reserve(pool.size() - best_members.size());
    std::set_difference(pool.begin(), pool.end(), best_members.begin(),
                        best_members.end(), std::back_inserter(remaining));
    pool = std::move(remaining);
  }
  return groups;
}

namespace {

struct PassOutcome {
  bool complete = false;
  std::vector<MulticastGroup> groups;
  std::vector<GroupRecord> records;
};

// One multihop grouping attempt. Each hop admits the uncovered MDs within
// band_db of the best frontier link (capped above by cap_per_n0), so
// captures happen in roughly decreasing gain order and the best pair is
// always admitted. A transmitter's group accumulates across hops (the
// objective pays one multicast power per transmitter): later additions
// just raise that transmission's power, and anything the base station
// serves is hop-1 coverage by definition. The backstop mode instead fixes
// the threshold at the weakest base-station link, which covers every MD
// on hop 1.
PassOutcome run_pass(const GainMatrix& gains, const ChannelParams& params, int h_max,
                     double band_db, double cap_per_n0, bool backstop,
                     double floor_per_n0) {
  const int c = gains.md_count();
  PassOutcome pass;
  std::vector<bool> covered(c + 1, false);
  covered[kBaseStation] = true;
  std::vector<NodeId> uncovered(c);
  for (int i = 0; i < c; ++i) uncovered[i] = i + 1;

  const double band_factor = db_to_linear(-band_db);
  std::map<NodeId, std::size_t> group_of_tx;

  for (int hop = 1; hop <= h_max && !uncovered.empty(); ++hop) {
    std::vector<NodeId> transmitters{kBaseStation};
    for (NodeId md = 1; md <= c; ++md)
      if (covered[md]) transmitters.push_back(md);

    double threshold = floor_per_n0;
    if (!backstop) {
      double best = 0.0;
      for (NodeId s : transmitters)
        for (NodeId r : uncovered) best = std::max(best, gains.at(s, r) / params.n0_w);
      threshold = std::min(cap_per_n0, best * band_factor);
    }

    auto family = build_candidates(transmitters, uncovered, gains, threshold, params);
    auto batch = greedy_set_cover(uncovered, family, &gains, hop);
    if (batch.empty()) break;

    for (auto& g : batch) {
      for (NodeId r : g.receivers) covered[r] = true;
      if (g.transmitter == kBaseStation) g.hop = 1;
      if (auto it = group_of_tx.find(g.transmitter); it != group_of_tx.end()) {
        auto& existing = pass.groups[it->second];
        existing.receivers.insert(existing.receivers.end(), g.receivers.begin(),
                                  g.receivers.end());
        std::sort(existing.receivers.begin(), existing.receivers.end());
        auto& rec = pass.records[it->second];
        rec.threshold_per_n0 = std::min(rec.threshold_per_n0, threshold);
      } else {
        group_of_tx.emplace(g.transmitter, pass.groups.size());
        pass.groups.push_back(std::move(g));
        pass.records.push_back({threshold});
      }
    }
    std::erase_if(uncovered, [&covered](NodeId r) { return covered[r]; });
  }
  pass.complete = uncovered.empty();
  return pass;
}

}  // namespace

Result solve_with_records(const GainMatrix& gains, const ChannelParams& params,
                          double radius_m, int h_max,
                          const ThresholdSchedule& schedule) {
  if (h_max < 1) throw std::invalid_argument("cluster::solve: h_max must be >= 1");
  if (!(schedule.step_db > 0.0))
    throw std::invalid_argument("cluster::solve: step_db must be > 0");
  if (schedule.retry_budget < 0)
    throw std::invalid_argument("cluster::solve: retry_budget must be >= 0");

  const int c = gains.md_count();
  Result res;
  res.plan.c = c;
  if (c == 0) return res;

  const double cap = schedule.initial_per_n0 ? *schedule.initial_per_n0
                                             : default_initial_per_n0(radius_m, params);
  double floor = std::numeric_limits<double>::infinity();
  for (NodeId md = 1; md <= c; ++md)
    floor = std::min(floor, gains.at(kBaseStation, md) / params.n0_w);

  // The band below the frontier's best link widens (doubling) every time
  // h_max hops fail to reach everyone, so that more MDs can join on each
  // hop; after the retry budget the backstop pass covers outright.
  double band_db = schedule.step_db;
  PassOutcome pass;
  for (int attempt = 0;; ++attempt) {
    const bool backstop = attempt > schedule.retry_budget;
    pass = run_pass(gains, params, h_max, band_db, cap, backstop, floor);
    if (pass.complete) break;
    band_db *= 2.0;
  }

  // groups come out in formation order; the plan contract is (hop, tx)
  std::vector<std::size_t> order(pass.groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pass.groups[a].hop != pass.groups[b].hop)
      return pass.groups[a].hop < pass.groups[b].hop;
    return pass.groups[a].transmitter < pass.groups[b].transmitter;
  });
  for (std::size_t i : order) {
    res.plan.groups.push_back(std::move(pass.groups[i]));
    res.records.push_back(pass.records[i]);
  }
  return res;
}

MulticastPlan solve(const GainMatrix& gains, const ChannelParams& params,
                    double radius_m, int h_max, const ThresholdSchedule& schedule) {
  return solve_with_records(gains, params, radius_m, h_max, schedule).plan;
}

}  // namespace cluster
}  // namespace d2dmm
