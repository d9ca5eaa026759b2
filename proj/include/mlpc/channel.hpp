#pragma once

#include <stdexcept>

#include "mlpc/networks.hpp"
#include "mlpc/rng.hpp"
#include "mlpc/spin.hpp"

namespace mlpc {

// Binary asymmetric channel. The transition law follows the conditional
// probability P(y|y0) = 1/2 + (y/2)[(1-r-p) y0 + (r-p)]: a +1 input flips
// with probability p, a -1 input with probability r.
struct ChannelParams {
  double p = 0.0;
  double r = 0.0;

  void validate() const {
    if (!(p >= 0.0 && p < 0.5) || !(r >= 0.0 && r < 0.5))
      throw std::invalid_argument("ChannelParams: p, r must lie in [0, 0.5)");
    if (!(p + r < 1.0)) throw std::invalid_argument("ChannelParams: p + r must be < 1");
  }
};

struct SourceModel {
  double bias = 0.5;  // P(y = +1)

  void validate() const {
    if (!(bias > 0.0 && bias < 1.0))
      throw std::invalid_argument("SourceModel: bias must lie in (0, 1)");
  }
};

inline double likelihood(int y, int y0, const ChannelParams& ch) {
  return 0.5 + 0.5 * y * ((1.0 - ch.r - ch.p) * y0 + (ch.r - ch.p));
}

SpinVector transmit(const SpinVector& y0, const ChannelParams& ch, RandomStream& rs);

SpinVector sample_source(int M, const SourceModel& src, RandomStream& rs);

double binary_entropy(double q);

struct CapacityPoint {
  double capacity = 0.0;
  double input_bias = 0.5;  // argmax P(codeword bit = +1)
};

// Maximizes mutual information of the BAC over the input bias
// (golden-section search; the mutual information is concave in the bias).
CapacityPoint bac_capacity(const ChannelParams& ch);

// Smallest distortion achievable at rate R for a biased binary source:
// the D solving H2(bias) - H2(D) = R.
double shannon_distortion(const SourceModel& src, double R);

// Smallest threshold k whose closed-form output bias matches target_bias.
// PTH/CTH: bracketed bisection on the monotone pieces, |bias-target| <= 1e-9.
// CTO: the bias law is a step function of k, so only its atoms are attainable;
// the smallest grid point (step 0.01) hitting the target atom is returned.
double tune_threshold(const NetworkSpec& spec, double target_bias);

}  // namespace mlpc
