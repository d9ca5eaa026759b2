#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "mlpc/channel.hpp"
#include "mlpc/networks.hpp"

namespace mlpc {

// Upper Gaussian tail H(u) = P(Z > u), Z ~ N(0,1).
inline double gauss_H(double u) { return 0.5 * std::erfc(u * 0.7071067811865475244); }

// Raised when a factor weight V collapses below the configured floor and the
// message ratio U/V can no longer be trusted.
struct NumericalBreakdown : std::runtime_error {
  explicit NumericalBreakdown(const std::string& what, int step_index = -1)
      : std::runtime_error(what), step(step_index) {}
  int step;
};

// Per-block cavity statistics feeding one factor: mean = lambda_bar - lambda_hat
// and the block overlap parameter q (must be < 1; callers clamp).
struct CavityField {
  double mean = 0.0;
  double q = 0.0;
};

struct WPair {
  double plus = 0.0;
  double minus = 0.0;
};

// w+- = (k +- (lambda_bar - lambda_hat)) / sqrt(1 - q)
inline WPair cavity_w(double k, double lam_bar, double lam_hat, double q) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("cavity_w: q must be in [0,1)");
  const double inv = 1.0 / std::sqrt(1.0 - q);
  const double a = lam_bar - lam_hat;
  return WPair{(k + a) * inv, (k - a) * inv};
}

// CTO variant: single standardized cavity field.
inline double cavity_w_cto(double lam_bar, double lam_hat, double q) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("cavity_w_cto: q must be in [0,1)");
  return (lam_bar - lam_hat) / std::sqrt(1.0 - q);
}

// Derived per-branch quantities shared by the K factor kernels of one pattern.
struct BranchTerms {
  double q = 0.0;
  double sigma = 1.0;    // sqrt(1 - q)
  double w_plus = 0.0;   // PTH/CTH
  double w_minus = 0.0;
  double w = 0.0;        // CTO
  double e_plus = 0.0;   // exp(-w+^2/2)
  double e_minus = 0.0;
  double inside = 0.0;   // 1 - 2H(w+) - 2H(w-), mean of the f_k unit
  double p_plus = 0.0;   // P(unit = +1): (1+inside)/2, or H(-w) for CTO
};

BranchTerms prepare_branch(const NetworkSpec& spec, const CavityField& cav);

struct KernelOutput {
  double U = 0.0;
  double V = 0.0;
  double U_tilde = 0.0;
  double V_tilde = 0.0;  // always exactly -U
};

// Closed-form factor kernels at beta = 1 for the error-correction posterior.
KernelOutput kernel_ecc(const NetworkSpec& spec, int y, int target,
                        std::span<const BranchTerms> branches, const ChannelParams& ch);

// Lossy-compression kernels at inverse temperature beta.
KernelOutput kernel_lc(const NetworkSpec& spec, int y, int target,
                       std::span<const BranchTerms> branches, double beta);

// Convenience entry points that derive the branch terms from cavity fields.
KernelOutput kernel_ecc(const NetworkSpec& spec, int y, int target,
                        std::span<const CavityField> fields, const ChannelParams& ch);
KernelOutput kernel_lc(const NetworkSpec& spec, int y, int target,
                       std::span<const CavityField> fields, double beta);

struct PhiGain {
  double phi = 0.0;   // U / V
  double gain = 0.0;  // (U~ V - V~ U) / V^2, one summand of the gain sum
};

inline PhiGain phi_and_gain(const KernelOutput& out, double v_floor) {
  if (!(out.V >= v_floor))
    throw NumericalBreakdown("kernel V fell below floor");
  const double phi = out.U / out.V;
  const double gain = (out.U_tilde * out.V - out.V_tilde * out.U) / (out.V * out.V);
  return PhiGain{phi, gain};
}

}  // namespace mlpc
