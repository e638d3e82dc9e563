#include "d2dmm/greedy_channel_gain.hpp"

#include <algorithm>
#include <map>

namespace d2dmm {
namespace channel_gain {

Result solve_with_trace(const GainMatrix& gains) {
  const int c = gains.md_count();
  Result res;
  res.plan.c = c;
  res.attach_order.reserve(c);

  std::vector<bool> covered(c + 1, false);
  std::vector<int> cover_hop(c + 1, 0);
  std::vector<NodeId> parent(c + 1, -1);
  covered[kBaseStation] = true;

  for (int step = 0; step < c; ++step) {
    NodeId best_tx = -1;
    NodeId best_rx = -1;
    double best_gain = 0.0;
    // Ascending scan plus strict comparison implements the tie rule.
    for (NodeId s = 0; s <= c; ++s) {
      if (!covered[s]) continue;
      for (NodeId r = 1; r <= c; ++r) {
        if (covered[r]) continue;
        const double g = gains.at(s, r);
        if (best_tx < 0 || g > best_gain) {
          best_gain = g;
          best_tx = s;
          best_rx = r;
        }
      }
    }
    covered[best_rx] = true;
    parent[best_rx] = best_tx;
    cover_hop[best_rx] = cover_hop[best_tx] + 1;
    res.attach_order.push_back({best_tx, best_rx});
  }

  std::map<NodeId, std::vector<NodeId>> children;
  for (NodeId md = 1; md <= c; ++md) children[parent[md]].push_back(md);
  for (auto& [tx, rxs] : children) {
    MulticastGroup g;
    g.transmitter = tx;
    g.receivers = rxs;  // ascending by construction of the md loop
    g.hop = cover_hop[tx] + 1;
    res.plan.groups.push_back(std::move(g));
  }
  std::stable_sort(res.plan.groups.begin(), res.plan.groups.end(),
                   [](const MulticastGroup& a, const MulticastGroup& b) {
                     if (a.hop != b.hop) return a.hop < b.hop;
                     return a.transmitter < b.transmitter;
                   });
  return res;
}

MulticastPlan solve(const GainMatrix& gains) {
  return solve_with_trace(gains).plan;
}

}  // namespace channel_gain
}  // namespace d2dmm
