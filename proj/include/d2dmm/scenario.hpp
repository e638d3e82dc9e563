#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "d2dmm/channel_model.hpp"
#include "d2dmm/gain_matrix.hpp"

namespace d2dmm {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// One Monte Carlo trial: MD positions in a disk of radius radius_m with the
// base station at the origin. The seed pins both the placement and the
// shadow-fading draws, so the trial can be replayed exactly.
struct Scenario {
  double radius_m = 0.0;
  std::uint64_t seed = 0;
  std::vector<Point> positions;  // MDs 1..C; positions[i-1] is MD i

  int md_count() const { return static_cast<int>(positions.size()); }
};

// Draws c area-uniform positions in the disk and realizes the symmetric
// gain matrix (one zero-mean Gaussian shadow draw per unordered pair).
// Fully deterministic given the seed.
std::pair<Scenario, GainMatrix> generate(std::uint64_t seed, int c,
                                         double radius_m,
                                         const ChannelParams& params);

// Rebuilds the gain matrix for an existing scenario. Position draws and
// shadow draws come from separate substreams of the seed, so a scenario
// loaded from disk realizes the same gains as the original generate call.
GainMatrix realize_gains(const Scenario& scenario, const ChannelParams& params);

}  // namespace d2dmm
