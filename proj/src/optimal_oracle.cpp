#include "d2dmm/optimal_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace d2dmm {
namespace oracle {

namespace {

// Resolves depths for a parent assignment by walking parent chains.
// Returns false on a cycle or a depth above h_max. depth[] is indexed by
// node id; -1 marks unresolved.
bool resolve_depths(const ParentAssignment& parents, int h_max,
                    std::vector<int>& depth, std::vector<NodeId>& chain) {
  const int c = static_cast<int>(parents.size());
  std::fill(depth.begin(), depth.end(), -1);
  depth[kBaseStation] = 0;
  for (NodeId start = 1; start <= c; ++start) {
    if (depth[start] >= 0) continue;
    // Walk up until a resolved node; more than c steps means a cycle.
    NodeId node = start;
    int steps = 0;
    while (depth[node] < 0) {
      if (++steps > c) return false;
      node = parents[node - 1];
    }
    // Second pass assigns depths along the walked chain.
    int base = depth[node];
    node = start;
    chain.clear();
    while (depth[node] < 0) {
      chain.push_back(node);
      node = parents[node - 1];
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++base;
  }
  for (NodeId md = 1; md <= c; ++md)
    if (depth[md] > h_max) return false;
  return true;
}

}  // namespace

void for_each_valid_assignment(
    int c, int h_max,
    const std::function<void(const ParentAssignment&, const std::vector<int>&)>& fn) {
  if (c < 0) throw std::invalid_argument("for_each_valid_assignment: negative C");
  if (c == 0) {
    ParentAssignment empty;
    std::vector<int> depth{0};
    fn(empty, depth);
    return;
  }

  // Odometer over parent choices {0..C}\{self}, lexicographic; the
  // all-zeros start is the base-station broadcast structure.
  ParentAssignment parents(c, kBaseStation);
  std::vector<int> depth(c + 1, -1);
  std::vector<NodeId> chain;
  chain.reserve(c);

  while (true) {
    if (resolve_depths(parents, h_max, depth, chain)) fn(parents, depth);

    int pos = c - 1;
    while (pos >= 0) {
      NodeId next = parents[pos] + 1;
      if (next == pos + 1) ++next;  // skip self
      if (next <= c) {
        parents[pos] = next;
        break;
      }
      parents[pos] = kBaseStation;
      --pos;
    }
    if (pos < 0) break;
  }
}

MulticastPlan assignment_to_plan(const ParentAssignment& parents,
                                 const std::vector<int>& depths) {
  MulticastPlan plan;
  plan.c = static_cast<int>(parents.size());
  std::map<NodeId, std::vector<NodeId>> children;
  for (NodeId md = 1; md <= plan.c; ++md) children[parents[md - 1]].push_back(md);
  for (auto& [tx, rxs] : children) {
    MulticastGroup g;
    g.transmitter = tx;
    g.receivers = rxs;
    g.hop = depths[tx] + 1;
    plan.groups.push_back(std::move(g));
  }
  std::stable_sort(plan.groups.begin(), plan.groups.end(),
                   [](const MulticastGroup& a, const MulticastGroup& b) {
                     if (a.hop != b.hop) return a.hop < b.hop;
                     return a.transmitter < b.transmitter;
                   });
  return plan;
}

MulticastPlan solve_optimal(const GainMatrix& gains, double r_min,
                            const ChannelParams& params, int h_max, int cap) {
  const int c = gains.md_count();
  if (c > cap)
    throw ResourceLimitError("optimal oracle refuses C=" + std::to_string(c) +
                             " (cap " + std::to_string(cap) +
                             "); the search space grows as C^C");
  if (!(r_min > 0.0)) throw std::invalid_argument("solve_optimal: r_min must be > 0");
  if (h_max < 1 && c > 0) throw std::invalid_argument("solve_optimal: h_max must be >= 1");
  params.validate();

  if (c == 0) {
    MulticastPlan empty;
    return empty;
  }

  const double rate_factor = (std::pow(2.0, r_min) - 1.0) * params.n0_w;

  double best_cost = std::numeric_limits<double>::infinity();
  ParentAssignment best_parents;
  std::vector<int> best_depths;

  std::vector<double> min_gain(c + 1);
  for_each_valid_assignment(
      c, h_max,
      [&](const ParentAssignment& parents, const std::vector<int>& depths) {
        // Group cost per transmitter is set by its worst child.
        std::fill(min_gain.begin(), min_gain.end(),
                  std::numeric_limits<double>::infinity());
        for (NodeId md = 1; md <= c; ++md) {
          const NodeId p = parents[md - 1];
          min_gain[p] = std::min(min_gain[p], gains.at(p, md));
        }
        double cost = 0.0;
        for (NodeId node = 0; node <= c; ++node)
          if (min_gain[node] < std::numeric_limits<double>::infinity())
            cost += rate_factor / min_gain[node];
        // Strict improvement keeps the lexicographically smallest optimum,
        // since assignments arrive in lex order.
        if (cost < best_cost) {
          best_cost = cost;
          best_parents = parents;
          best_depths = depths;
        }
      });

  return assignment_to_plan(best_parents, best_depths);
}

}  // namespace oracle
}  // namespace d2dmm
