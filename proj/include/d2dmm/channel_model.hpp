#pragma once

#include <span>

#include "d2dmm/gain_matrix.hpp"

namespace d2dmm {

// Physical-layer constants. All power math is carried in Watts (linear
// scale); dB and dBm appear only at interfaces.
struct ChannelParams {
  double k_db = -31.54;         // antenna/attenuation constant, already in dB
  double beta = 3.0;            // path loss exponent
  double d0_m = 1.0;            // far-field reference distance
  double sigma_shadow_db = 8.0; // shadow fading std dev (outdoor macro cell)
  double n0_w = 1e-13;          // noise power, Watts (-100 dBm)

  void validate() const;
};

// Dimensionless received/transmit power ratio, linear scale.
struct LinkGain {
  double linear = 0.0;
};

double db_to_linear(double value_db);
double linear_to_db(double ratio);   // throws on non-positive ratio
double dbm_to_watts(double value_dbm);
double watts_to_dbm(double watts);

// Path gain in dB at the given distance: k_db - 10*beta*log10(d/d0) minus
// the shadow term. Distances below d0 are clamped to d0 (the far-field
// model does not hold closer in).
double path_gain_db(double distance_m, const ChannelParams& params,
                    double shadow_db);

// Spectral efficiency log2(1 + gain*P/N0), in bit/s/Hz.
double link_rate(LinkGain gain, double tx_power_w, const ChannelParams& params);

// Minimum transmit power achieving rate r_min over the link:
// (2^r_min - 1) * N0 / gain. link_rate at this power equals r_min.
double required_power(LinkGain gain, double r_min, const ChannelParams& params);

struct GroupPower {
  double power_w = 0.0;
  NodeId worst_receiver = 0;
};

// Multicast power for one group: the rate is set by the worst member, so
// the power is required_power of the minimum gain among receivers. Ties on
// the minimum break toward the smallest node id.
GroupPower group_power(NodeId transmitter, std::span<const NodeId> receivers,
                       const GainMatrix& gains, double r_min,
                       const ChannelParams& params);

}  // namespace d2dmm
