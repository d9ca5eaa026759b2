#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mlpc/rng.hpp"
#include "mlpc/spin.hpp"

namespace mlpc {

enum class NetworkKind { PTH, CTH, CTO };

std::string to_string(NetworkKind kind);
NetworkKind network_kind_from_string(const std::string& s);

// sign convention: sgn(0) = +1
inline int sgn(double x) { return x >= 0.0 ? 1 : -1; }

// Non-monotonic transfer: +1 inside [-k, k], -1 outside. Even in x.
inline int transfer_fk(double x, double k) { return std::fabs(x) <= k ? 1 : -1; }

struct NetworkSpec {
  NetworkKind kind = NetworkKind::PTH;
  int K = 1;
  double k = 0.0;  // threshold of the transfer function

  void validate() const;
};

// M random +-1 input patterns of length N, blocked into K slices. Patterns are
// stored as doubles so hot loops can run plain dot products over them.
class Codebook {
 public:
  Codebook(int M, int N, int K, RandomStream& rs);
  Codebook(int M, int N, int K, std::vector<double> patterns);  // entries must be +-1

  int rows() const { return m_; }
  int cols() const { return n_; }
  int blocks() const { return k_; }
  int block_len() const { return n_ / k_; }

  std::span<const double> row(int mu) const {
    return std::span<const double>(x_.data() + static_cast<std::size_t>(mu) * n_, n_);
  }
  double at(int mu, int i) const { return x_[static_cast<std::size_t>(mu) * n_ + i]; }

  void negate_block(int l);  // flips block l of every pattern

 private:
  int m_ = 0, n_ = 0, k_ = 1;
  std::vector<double> x_;
};

// field_l = sqrt(K/N) * (s_l . x_l) for each block l
std::vector<double> local_fields(std::span<const double> s, std::span<const double> x, int K);

int forward(const NetworkSpec& spec, std::span<const double> s, std::span<const double> x);
Spin forward(const NetworkSpec& spec, const SpinVector& s, const SpinVector& x);

SpinVector encode(const NetworkSpec& spec, const SpinVector& s, const Codebook& codebook);

// P(single hidden unit fires +1) for a standard-normal field: 1 - 2H(k).
double branch_prob_inside(double k);

// P(network output = +1) when each hidden unit is independently +1 with
// probability `unit_prob` (f_k units for PTH/CTH, sgn units for CTO).
double bias_given_unit_prob(const NetworkSpec& spec, double unit_prob);

// Closed-form output bias under iid standard-normal local fields.
double output_bias(const NetworkSpec& spec);

// The set of output biases a CTO reaches as k varies (its bias law is a step
// function of k). Sorted ascending.
std::vector<double> cto_bias_atoms(int K);

}  // namespace mlpc
