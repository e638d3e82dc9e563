#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "d2dmm/channel_model.hpp"
#include "d2dmm/gain_matrix.hpp"
#include "d2dmm/plan.hpp"

namespace d2dmm {
namespace oracle {

inline constexpr int kDefaultCap = 8;

// Thrown when a request exceeds a deliberate size limit (the exhaustive
// search scales as C^C).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A candidate relaying structure: parent[i] is the transmitter serving
// MD i+1. Any minimum-power grouping corresponds to such a forest rooted
// at the base station, since every MD receives exactly once.
using ParentAssignment = std::vector<NodeId>;

// Calls fn for every acyclic, depth-bounded parent assignment, in
// lexicographic order of the parent array. depths[i] is the hop at which
// MD i+1 receives.
void for_each_valid_assignment(
    int c, int h_max,
    const std::function<void(const ParentAssignment& parents,
                             const std::vector<int>& depths)>& fn);

// Converts a valid assignment into a plan: children of a common parent
// form one multicast group at hop depth(parent) + 1.
MulticastPlan assignment_to_plan(const ParentAssignment& parents,
                                 const std::vector<int>& depths);

// Exhaustive minimum-power search over all feasible relaying structures.
// Equal-power optima resolve to the lexicographically smallest parent
// array. Refuses instances with more than cap MDs.
MulticastPlan solve_optimal(const GainMatrix& gains, double r_min,
                            const ChannelParams& params, int h_max,
                            int cap = kDefaultCap);

}  // namespace oracle
}  // namespace d2dmm
