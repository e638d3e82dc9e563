#include "d2dmm/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d2dmm {

void ChannelParams::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("ChannelParams: beta must be > 0");
  if (!(d0_m > 0.0)) throw std::invalid_argument("ChannelParams: d0_m must be > 0");
  if (!(sigma_shadow_db >= 0.0))
    throw std::invalid_argument("ChannelParams: sigma_shadow_db must be >= 0");
  if (!(n0_w > 0.0)) throw std::invalid_argument("ChannelParams: n0_w must be > 0");
  if (!std::isfinite(k_db)) throw std::invalid_argument("ChannelParams: k_db must be finite");
}

double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

double linear_to_db(double ratio) {
  if (!(ratio > 0.0))
    throw std::invalid_argument("linear_to_db: ratio must be positive");
  return 10.0 * std::log10(ratio);
}

double dbm_to_watts(double value_dbm) { return std::pow(10.0, (value_dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw std::invalid_argument("watts_to_dbm: power must be positive");
  return 10.0 * std::log10(watts) + 30.0;
}

double path_gain_db(double distance_m, const ChannelParams& params, double shadow_db) {
  if (!(distance_m > 0.0))
    throw std::invalid_argument("path_gain_db: distance must be positive");
  const double d = std::max(distance_m, params.d0_m);
  return params.k_db - 10.0 * params.beta * std::log10(d / params.d0_m) - shadow_db;
}

double link_rate(LinkGain gain, double tx_power_w, const ChannelParams& params) {
  if (!(gain.linear > 0.0)) throw std::invalid_argument("link_rate: gain must be positive");
  if (tx_power_w < 0.0) throw std::invalid_argument("link_rate: negative power");
  return std::log2(1.0 + gain.linear * tx_power_w / params.n0_w);
}

double required_power(LinkGain gain, double r_min, const ChannelParams& params) {
  if (!(gain.linear > 0.0))
    throw std::invalid_argument("required_power: gain must be positive");
  if (!(r_min > 0.0)) throw std::invalid_argument("required_power: r_min must be > 0");
  return (std::pow(2.0, r_min) - 1.0) * params.n0_w / gain.linear;
}

GroupPower group_power(NodeId transmitter, std::span<const NodeId> receivers,
                       const GainMatrix& gains, double r_min,
                       const ChannelParams& params) {
  if (receivers.empty())
    throw std::invalid_argument("group_power: empty receiver set");
  double worst_gain = 0.0;
  NodeId worst = -1;
  for (NodeId r : receivers) {
    const double g = gains.at(transmitter, r);
    if (worst < 0 || g < worst_gain || (g == worst_gain && r < worst)) {
      worst_gain = g;
      worst = r;
    }
  }
  return {required_power(LinkGain{worst_gain}, r_min, params), worst};
}

}  // namespace d2dmm
