#pragma once

#include "d2dmm/gain_matrix.hpp"
#include "d2dmm/plan.hpp"

namespace d2dmm {
namespace channel_gain {

struct AttachStep {
  NodeId transmitter;
  NodeId receiver;
};

struct Result {
  MulticastPlan plan;
  std::vector<AttachStep> attach_order;  // the C argmax selections, in order
};

// Greedy channel-gain-oriented grouping: starting from the base station,
// repeatedly attach the uncovered MD with the globally best gain to any
// covered node, then group receivers by common transmitter. A group's hop
// is one past the hop at which its transmitter was covered (BS = hop 0).
// Ties on the argmax break toward the smaller transmitter id, then the
// smaller receiver id. The implied hop budget is C.
Result solve_with_trace(const GainMatrix& gains);
MulticastPlan solve(const GainMatrix& gains);

}  // namespace channel_gain
}  // namespace d2dmm
