#pragma once

#include <vector>

#include "mlpc/channel.hpp"
#include "mlpc/kernels.hpp"
#include "mlpc/networks.hpp"
#include "mlpc/rng.hpp"
#include "mlpc/spin.hpp"

namespace mlpc {

enum class Task { Ecc, Lc };

// One decoding (ECC) or encoding (LC) instance. `observed` is the corrupted
// codeword for ECC and the source message for LC; both have length M.
struct Problem {
  Task task = Task::Ecc;
  NetworkSpec spec;
  const Codebook* codebook = nullptr;
  SpinVector observed;
  ChannelParams channel{};  // ECC only

  void validate() const;
};

struct BPConfig {
  int iterations = 100;       // the LC protocol uses 35
  double gamma = 0.0;         // inertia amplitude, in [0, 1)
  double beta = 1.0;          // LC inverse temperature
  double init_scale = 0.1;    // magnetizations start Uniform(-delta, delta)
  // Cap on q_l. Keeps sqrt(1-q) large enough that the kernel exponentials
  // stay representable once the magnetizations saturate; at q = 1 - 1e-9 the
  // factors underflow to zero and the all-zero state absorbs the iteration.
  double q_clamp = 0.98;
  double v_floor = 1e-12;
  double damping = 0.0;           // off by default
  double early_stop_tol = 0.0;    // off by default; stops when max|dm| < tol
  bool lc_best_over_trace = false;

  void validate() const;
};

struct StepStats {
  double mean_abs_m = 0.0;
  double max_abs_dm = 0.0;
  std::vector<double> q;  // per-block overlap parameter, clamped
};

struct BPState {
  std::vector<double> m;         // N pseudo-posterior means
  std::vector<double> phi_prev;  // M x K kernel ratios from the previous step
  int t = 0;
  std::vector<StepStats> trace;
};

BPState init_state(const Problem& problem, const BPConfig& cfg, RandomStream& rs);

// One reduced BP update in place. Throws NumericalBreakdown (annotated with
// the step index) when a kernel weight collapses.
void bp_step(BPState& state, const Problem& problem, const BPConfig& cfg);

SpinVector mpm_estimate(const BPState& state);

struct RunResult {
  SpinVector estimate;
  std::vector<StepStats> trace;
};

RunResult run(const Problem& problem, const BPConfig& cfg, RandomStream& rs);

}  // namespace mlpc
