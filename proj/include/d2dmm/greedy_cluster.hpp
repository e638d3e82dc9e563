#pragma once

#include <map>
#include <optional>
#include <vector>

#include "d2dmm/channel_model.hpp"
#include "d2dmm/gain_matrix.hpp"
#include "d2dmm/plan.hpp"

namespace d2dmm {
namespace cluster {

// Candidate receiver sets per eligible transmitter: A[s] holds the
// uncovered MDs whose gain-over-noise to s clears the current threshold.
// An MD may appear under several transmitters; this is not a grouping yet.
struct CandidateFamily {
  std::map<NodeId, std::vector<NodeId>> sets;
};

// Threshold policy for candidate-set formation. Each hop's threshold sits
// step_db below the best gain between the covered frontier and the
// uncovered pool, capped above by initial_per_n0, so MDs join in roughly
// decreasing gain order. If h_max hops cannot reach everyone the band
// doubles and the whole grouping restarts; after retry_budget restarts a
// backstop pass pins the threshold at the weakest base-station link,
// which covers every MD on hop 1 and guarantees termination.
struct ThresholdSchedule {
  std::optional<double> initial_per_n0;  // 1/W cap; empty = derive from geometry
  double step_db = 1.0;
  int retry_budget = 16;
};

// Default initial threshold: the zero-shadow gain at a quarter of the cell
// radius, over noise.
double default_initial_per_n0(double radius_m, const ChannelParams& params);

CandidateFamily build_candidates(const std::vector<NodeId>& transmitters,
                                 const std::vector<NodeId>& uncovered,
                                 const GainMatrix& gains, double threshold_per_n0,
                                 const ChannelParams& params);

// Greedy set cover over the family: repeatedly emit the set with the
// largest intersection with the remaining pool. Equal sizes prefer the
// transmitter whose prospective group has the best worst-member gain
// (pass gains = nullptr to skip that and fall back to smallest id).
// MDs no set can reach stay uncovered; the caller deals with them.
std::vector<MulticastGroup> greedy_set_cover(const std::vector<NodeId>& uncovered,
                                             const CandidateFamily& family,
                                             const GainMatrix* gains, int hop);

// Per-group bookkeeping for the power-bound property: every member of a
// group cleared this threshold, so the group power is at most
// (2^r_min - 1) / threshold_per_n0.
struct GroupRecord {
  double threshold_per_n0 = 0.0;
};

struct Result {
  MulticastPlan plan;
  std::vector<GroupRecord> records;  // parallel to plan.groups
};

// Cluster-oriented grouping over at most h_max hops: per hop, covered
// nodes multicast to the uncovered MDs that clear the hop threshold,
// largest candidate set first. Every multicast group accumulates per
// transmitter (one transmission, one power term, rate set by its worst
// member) and base-station coverage is always hop 1.
Result solve_with_records(const GainMatrix& gains, const ChannelParams& params,
                          double radius_m, int h_max, const ThresholdSchedule& schedule);
MulticastPlan solve(const GainMatrix& gains, const ChannelParams& params,
                    double radius_m, int h_max, const ThresholdSchedule& schedule);

}  // namespace cluster
}  // namespace d2dmm
