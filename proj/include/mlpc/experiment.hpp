#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mlpc/channel.hpp"
#include "mlpc/engine.hpp"

namespace mlpc {

enum class ExperimentTask { EccSweep, EccHist, LcSweep, LcHist, Bounds };

std::string to_string(ExperimentTask task);

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  ExperimentTask task = ExperimentTask::EccSweep;
  NetworkKind network = NetworkKind::PTH;
  int K = 1;
  int N = 1000;
  std::vector<double> rates;  // sweep grid; histogram tasks use rates[0]
  double p = 0.1, r = 0.2;    // BAC parameters (ECC)
  double bias = 0.5;          // source bias (LC)
  double gamma = 0.0;
  double beta = 1.0;
  std::vector<double> beta_grid;  // non-empty: pick the best beta per point
  int runs = 20;                  // desk scale; --paper-scale restores 100/30/50
  int restarts = 10;
  int messages = 10;
  int iters = 0;  // 0 means the task default (100 for ECC, 35 for LC)
  std::uint64_t seed = 0;
  std::string out;
  bool paper_scale = false;
  double k_override = std::numeric_limits<double>::quiet_NaN();
  double init_scale = 0.1;
  double max_abort_frac = 0.5;

  int effective_iters() const;
  void apply_paper_scale();
  void validate() const;  // throws ConfigError
};

// One aggregate metric at one sweep point, echoing the resolved configuration.
struct ResultRow {
  std::string task;
  std::string network;
  int K = 0, N = 0, M = 0;
  double R = 0.0;
  double p = 0.0, r = 0.0, bias = 0.0, gamma = 0.0;
  double beta = 0.0, k = 0.0;
  int runs = 0, restarts = 0, messages = 0, iters = 0;
  std::uint64_t seed = 0;
  std::string metric;
  double mean = 0.0, stddev = 0.0;
  int count = 0, aborted = 0;
  double wall_ms = 0.0;
};

struct SweepOutcome {
  std::vector<ResultRow> rows;
  double abort_fraction = 0.0;
};

struct HistOutcome {
  std::vector<double> samples;          // pooled pairwise overlaps
  std::vector<double> message_metric;   // per message: blockwise |overlap| (ECC) or distortion (LC)
  double pooled_metric = 0.0;
  ResultRow row;                        // echo + pooled metric
  double abort_fraction = 0.0;
};

struct BoundsRow {
  std::string kind;  // "bac_capacity" or "rate_distortion"
  double p = 0.0, r = 0.0, bias = 0.0;
  double R = 0.0, D = 0.0;
  double capacity = 0.0, input_bias = 0.0;
};

SweepOutcome sweep_ecc(const ExperimentConfig& cfg);
SweepOutcome sweep_lc(const ExperimentConfig& cfg);
HistOutcome hist_ecc(const ExperimentConfig& cfg);
HistOutcome hist_lc(const ExperimentConfig& cfg);
std::vector<BoundsRow> bounds(const ExperimentConfig& cfg);

// Threshold used by the harness: ECC targets the capacity-achieving input
// bias, LC targets the source bias. CTO targets snap to the nearest
// attainable bias atom (within 0.05) before tuning.
struct ResolvedThreshold {
  double k = 0.0;
  double target_bias = 0.0;
};
ResolvedThreshold resolve_threshold(const ExperimentConfig& cfg);

void write_sweep_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_samples(const std::string& path, const std::vector<double>& samples);
void write_bounds_csv(const std::string& path, const std::vector<BoundsRow>& rows);
std::string summary_json(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows,
                         double abort_fraction);

}  // namespace mlpc
