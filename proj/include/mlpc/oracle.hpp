#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlpc/engine.hpp"

namespace mlpc {

struct EnumerationBudget {
  int max_bits = 20;
};

// Exact posterior means m_{il} by summing the Boltzmann weight over all 2^N
// coupling states. ECC uses the channel factor (beta fixed at 1); LC uses the
// step-function factor at the given beta.
std::vector<double> exact_marginals(const Problem& problem, double beta,
                                    EnumerationBudget budget = {});

// Brute-force optimal lossy encoder: the coupling vector minimizing the
// Hamming distortion of the decoded message. Ties break toward the
// lexicographically smallest vector (+1 ordered before -1).
SpinVector exhaustive_lc_encode(const Problem& problem, EnumerationBudget budget = {});

// Unreduced BP reference carrying the full M x N message plane.
struct DenseBpState {
  std::vector<double> msg;       // m_{mu i}, row mu
  std::vector<double> mhat;      // scratch: factor-to-variable means
  std::vector<double> marginal;  // N
  int t = 0;
};

DenseBpState full_bp_init(const Problem& problem, std::span<const double> m0);
void full_bp_step(DenseBpState& state, const Problem& problem, const BPConfig& cfg);

struct McKernelEstimate {
  double U = 0.0;
  double V = 0.0;
  double U_stderr = 0.0;
  double V_stderr = 0.0;
};

// Monte Carlo reference for the factor kernels: V as the sampled mean of the
// factor integrand and U as the central finite difference of it at lambda = 0
// (step h, common random numbers across +-h). The target branch's Gaussian is
// integrated in closed form per sample; the other branches are sampled.
McKernelEstimate mc_kernel_oracle(const NetworkSpec& spec, Task task, int y, int target,
                                  std::span<const CavityField> fields,
                                  const ChannelParams& ch, double beta, std::size_t samples,
                                  RandomStream& rs, double h = 1e-3);

}  // namespace mlpc
