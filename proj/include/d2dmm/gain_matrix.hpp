#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

namespace d2dmm {

// Node 0 is the base station; MDs are 1..C.
using NodeId = int;
inline constexpr NodeId kBaseStation = 0;

// Symmetric matrix of realized linear power gains over all node pairs.
// One shadow draw per unordered pair (channel reciprocity); the diagonal
// is unused and stays zero.
class GainMatrix {
 public:
  GainMatrix() = default;
  explicit GainMatrix(int md_count)
      : c_(md_count), gains_((md_count + 1) * (md_count + 1), 0.0) {
    if (md_count < 0) throw std::invalid_argument("GainMatrix: negative MD count");
  }

  int md_count() const { return c_; }
  int node_count() const { return c_ + 1; }

  double at(NodeId m, NodeId n) const {
    assert(m >= 0 && m <= c_ && n >= 0 && n <= c_ && m != n);
    return gains_[static_cast<std::size_t>(m) * (c_ + 1) + n];
  }

  void set_pair(NodeId m, NodeId n, double gain_linear) {
    if (m < 0 || m > c_ || n < 0 || n > c_ || m == n)
      throw std::invalid_argument("GainMatrix::set_pair: bad node pair");
    if (!(gain_linear > 0.0))
      throw std::invalid_argument("GainMatrix::set_pair: gain must be positive");
    gains_[static_cast<std::size_t>(m) * (c_ + 1) + n] = gain_linear;
    gains_[static_cast<std::size_t>(n) * (c_ + 1) + m] = gain_linear;
  }

 private:
  int c_ = 0;
  std::vector<double> gains_;
};

}  // namespace d2dmm
