#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2dmm/channel_model.hpp"
#include "d2dmm/gain_matrix.hpp"

namespace d2dmm {

// One multicast transmission: a transmitter serving a receiver set at a
// common rate on a given hop. Hop 1 is reserved for the base station.
// declared_power_w / declared_worst_rx are present only on plans loaded
// from disk; in-memory plans derive both from the gain matrix.
struct MulticastGroup {
  NodeId transmitter = kBaseStation;
  std::vector<NodeId> receivers;  // emitters keep this sorted ascending
  int hop = 1;
  std::optional<double> declared_power_w;
  std::optional<NodeId> declared_worst_rx;
};

// Materialized grouping decision for one scenario: which node relays to
// whom and on which hop. Emitters order groups by (hop, transmitter).
struct MulticastPlan {
  int c = 0;  // total MD count the plan covers
  std::vector<MulticastGroup> groups;
};

struct PlanMetrics {
  double total_power_w = 0.0;
  int num_hops = 0;
  int num_groups = 0;
  std::vector<double> coverage_by_hop;  // fraction of MDs covered by hop h
};

// Feasibility constraint families, numbered as reported by the validator:
//   worst_channel  (5): group power/worst-member bookkeeping inconsistent
//   bs_hop         (6): hop-1/base-station transmitter structure broken
//   causality      (7): a relay transmits before it has the content
//   min_rate       (8): some member's rate falls below r_min
//   coverage_once  (9): an MD is covered zero or multiple times
//   hop_bound     (10): a hop index outside [1, h_max]
enum class Constraint { worst_channel, bs_hop, causality, min_rate, coverage_once, hop_bound };

int constraint_number(Constraint c);       // 5..10
std::string constraint_name(Constraint c);

struct Violation {
  Constraint constraint;
  std::string detail;
};

class PlanInvalidError : public std::runtime_error {
 public:
  explicit PlanInvalidError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Checks a plan against the full constraint set and returns every violation
// found (empty list == feasible). Plans must reference the same MD count as
// the gain matrix; a mismatch is an input error, not a violation. With
// strict_bs_hop1 set, relays must additionally have received directly from
// the base station on hop 1.
std::vector<Violation> validate(const MulticastPlan& plan, const GainMatrix& gains,
                                double r_min, int h_max, const ChannelParams& params,
                                bool strict_bs_hop1 = false);

// Objective: sum of per-group multicast powers, base station included.
// Throws PlanInvalidError when the plan does not validate.
double total_power(const MulticastPlan& plan, const GainMatrix& gains,
                   double r_min, const ChannelParams& params);

PlanMetrics metrics(const MulticastPlan& plan, const GainMatrix& gains,
                    double r_min, const ChannelParams& params);

// The single-hop benchmark: base station multicasts to every MD at once.
MulticastPlan bs_broadcast_plan(int c);

}  // namespace d2dmm
