#include "d2dmm/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "d2dmm/rng.hpp"

namespace d2dmm {

namespace {

constexpr std::uint64_t kPositionStream = 1;
constexpr std::uint64_t kShadowStream = 2;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double node_distance(const Scenario& sc, NodeId m, NodeId n) {
  const Point pm = (m == kBaseStation) ? Point{0.0, 0.0} : sc.positions[m - 1];
  const Point pn = (n == kBaseStation) ? Point{0.0, 0.0} : sc.positions[n - 1];
  return std::hypot(pm.x - pn.x, pm.y - pn.y);
}

}  // namespace

std::pair<Scenario, GainMatrix> generate(std::uint64_t seed, int c,
                                         double radius_m,
                                         const ChannelParams& params) {
  if (c < 0) throw std::invalid_argument("generate: MD count must be >= 0");
  if (!(radius_m > 0.0)) throw std::invalid_argument("generate: radius must be > 0");
  params.validate();

  Scenario sc;
  sc.radius_m = radius_m;
  sc.seed = seed;
  sc.positions.reserve(c);

  Xoshiro256pp pos_rng(derive_seed(seed, kPositionStream));
  for (int i = 0; i < c; ++i) {
    // radius = R*sqrt(u) gives area uniformity over the disk
    const double r = radius_m * std::sqrt(pos_rng.uniform01());
    const double theta = kTwoPi * pos_rng.uniform01();
    sc.positions.push_back({r * std::cos(theta), r * std::sin(theta)});
  }

  return {sc, realize_gains(sc, params)};
}

GainMatrix realize_gains(const Scenario& scenario, const ChannelParams& params) {
  params.validate();
  const int c = scenario.md_count();
  GainMatrix gains(c);

  // Fixed pair order (m < n) keeps the shadow stream stable; sigma = 0
  // still consumes draws so only the magnitudes change, not the alignment.
  Xoshiro256pp shadow_rng(derive_seed(scenario.seed, kShadowStream));
  for (NodeId m = 0; m <= c; ++m) {
    for (NodeId n = m + 1; n <= c; ++n) {
      const double shadow = params.sigma_shadow_db * shadow_rng.standard_normal();
      const double d = std::max(node_distance(scenario, m, n), params.d0_m);
      gains.set_pair(m, n, db_to_linear(path_gain_db(d, params, shadow)));
    }
  }
  return gains;
}

}  // namespace d2dmm
