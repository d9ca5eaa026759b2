#include "mlpc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace mlpc {

namespace {

// Stream purposes; combined with the sweep-point index so every draw has a
// unique, order-independent identity.
enum StreamPurpose : std::uint64_t { kMsg = 1, kBook = 2, kNoise = 3, kInit = 4 };

SeededStream stream_id(const ExperimentConfig& cfg, StreamPurpose purpose, int point, int run,
                       int restart) {
  return SeededStream{cfg.seed,
                      purpose * 1000003ull + static_cast<std::uint64_t>(point),
                      static_cast<std::uint64_t>(run), static_cast<std::uint64_t>(restart)};
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct Moments {
  double mean = 0.0, stddev = 0.0;
  int count = 0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  m.count = static_cast<int>(v.size());
  if (v.empty()) return m;
  double s = 0.0;
  for (double x : v) s += x;
  m.mean = s / m.count;
  if (m.count > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / (m.count - 1));
  }
  return m;
}

int rate_to_m(int N, double R) { return static_cast<int>(std::llround(N / R)); }

ResultRow echo_row(const ExperimentConfig& cfg, int M, double R, double beta_used, double k_used) {
  ResultRow row;
  row.task = to_string(cfg.task);
  row.network = to_string(cfg.network);
  row.K = cfg.K;
  row.N = cfg.N;
  row.M = M;
  row.R = R;
  row.p = cfg.p;
  row.r = cfg.r;
  row.bias = cfg.bias;
  row.gamma = cfg.gamma;
  row.beta = beta_used;
  row.k = k_used;
  row.runs = cfg.runs;
  row.restarts = cfg.restarts;
  row.messages = cfg.messages;
  row.iters = cfg.effective_iters();
  row.seed = cfg.seed;
  return row;
}

}  // namespace

std::string to_string(ExperimentTask task) {
  switch (task) {
    case ExperimentTask::EccSweep: return "ecc-sweep";
    case ExperimentTask::EccHist: return "ecc-hist";
    case ExperimentTask::LcSweep: return "lc-sweep";
    case ExperimentTask::LcHist: return "lc-hist";
    case ExperimentTask::Bounds: return "bounds";
  }
  return "?";
}

int ExperimentConfig::effective_iters() const {
  if (iters > 0) return iters;
  const bool ecc = task == ExperimentTask::EccSweep || task == ExperimentTask::EccHist;
  return ecc ? 100 : 35;
}

void ExperimentConfig::apply_paper_scale() {
  runs = 100;
  restarts = 30;
  messages = 50;
}

void ExperimentConfig::validate() const {
  try {
    NetworkSpec probe{network, K, 0.0};
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (N <= 0 || N % K != 0) throw ConfigError("N must be positive and divisible by K");
  if (task != ExperimentTask::Bounds) {
    if (rates.empty()) throw ConfigError("at least one rate is required");
    for (double R : rates)
      if (!(R > 0.0 && R <= 1.0)) throw ConfigError("rates must lie in (0, 1]");
  }
  const bool ecc = task == ExperimentTask::EccSweep || task == ExperimentTask::EccHist;
  if (ecc) {
    try {
      ChannelParams{p, r}.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (task != ExperimentTask::Bounds) {
    if (!(bias > 0.0 && bias < 1.0)) throw ConfigError("source bias must lie in (0,1)");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in [0,1)");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  for (double b : beta_grid)
    if (!(b > 0.0)) throw ConfigError("beta grid values must be positive");
  if (runs <= 0 || restarts <= 0 || messages <= 0) throw ConfigError("counts must be positive");
  if (iters < 0) throw ConfigError("iters must be >= 0");
  if (!(init_scale >= 0.0 && init_scale < 1.0)) throw ConfigError("init-scale outside [0,1)");
  if (!(max_abort_frac >= 0.0 && max_abort_frac <= 1.0))
    throw ConfigError("max-abort-frac outside [0,1]");
}

ResolvedThreshold resolve_threshold(const ExperimentConfig& cfg) {
  const bool ecc = cfg.task == ExperimentTask::EccSweep || cfg.task == ExperimentTask::EccHist;
  double target = ecc ? bac_capacity(ChannelParams{cfg.p, cfg.r}).input_bias : cfg.bias;
  if (cfg.network == NetworkKind::CTO) {
    const std::vector<double> atoms = cto_bias_atoms(cfg.K);
    double best = atoms.front();
    for (double a : atoms)
      if (std::fabs(a - target) < std::fabs(best - target)) best = a;
    if (std::fabs(best - target) > 0.05)
      throw ConfigError("CTO cannot reach the requested output bias within 0.05; pass --k");
    target = best;
  }
  if (!std::isnan(cfg.k_override)) return ResolvedThreshold{cfg.k_override, target};
  NetworkSpec spec{cfg.network, cfg.K, 0.0};
  ResolvedThreshold rt;
  rt.target_bias = target;
  try {
    rt.k = tune_threshold(spec, target);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return rt;
}

namespace {

struct EccRun {
  double blockwise = 0.0;
  double signed_overlap = 0.0;
  bool aborted = false;
};

EccRun one_ecc_run(const ExperimentConfig& cfg, const NetworkSpec& spec, int M, int point,
                   int run, int restart) {
  const ChannelParams ch{cfg.p, cfg.r};
  RandomStream msg_rs(stream_id(cfg, kMsg, point, run, 0));
  const SpinVector s0 = draw_uniform_spins(cfg.N, msg_rs);
  RandomStream book_rs(stream_id(cfg, kBook, point, run, 0));
  const Codebook X(M, cfg.N, cfg.K, book_rs);
  const SpinVector y0 = encode(spec, s0, X);
  RandomStream noise_rs(stream_id(cfg, kNoise, point, run, 0));
  const SpinVector y = transmit(y0, ch, noise_rs);

  Problem pb{Task::Ecc, spec, &X, y, ch};
  BPConfig bp;
  bp.iterations = cfg.effective_iters();
  bp.gamma = cfg.gamma;
  bp.init_scale = cfg.init_scale;

  RandomStream init_rs(stream_id(cfg, kInit, point, run, restart));
  EccRun out;
  try {
    const RunResult rr = mlpc::run(pb, bp, init_rs);
    out.blockwise = blockwise_abs_overlap(rr.estimate, s0, cfg.K);
    out.signed_overlap = overlap(rr.estimate, s0);
  } catch (const NumericalBreakdown&) {
    out.aborted = true;
  }
  return out;
}

struct LcRun {
  double distortion = 0.0;
  SpinVector codeword = SpinVector::filled(1, 1);
  bool aborted = false;
};

LcRun one_lc_run(const ExperimentConfig& cfg, const NetworkSpec& spec, int M, double beta,
                 int point, int run, int restart) {
  RandomStream msg_rs(stream_id(cfg, kMsg, point, run, 0));
  const SpinVector y = sample_source(M, SourceModel{cfg.bias}, msg_rs);
  RandomStream book_rs(stream_id(cfg, kBook, point, run, 0));
  const Codebook X(M, cfg.N, cfg.K, book_rs);

  Problem pb{Task::Lc, spec, &X, y, ChannelParams{}};
  BPConfig bp;
  bp.iterations = cfg.effective_iters();
  bp.gamma = cfg.gamma;
  bp.beta = beta;
  bp.init_scale = cfg.init_scale;

  RandomStream init_rs(stream_id(cfg, kInit, point, run, restart));
  LcRun out;
  try {
    const RunResult rr = mlpc::run(pb, bp, init_rs);
    const SpinVector decoded = encode(spec, rr.estimate, X);
    out.distortion = hamming_distortion(y, decoded);
    out.codeword = rr.estimate;
  } catch (const NumericalBreakdown&) {
    out.aborted = true;
  }
  return out;
}

}  // namespace

SweepOutcome sweep_ecc(const ExperimentConfig& cfg) {
  cfg.validate();
  const ResolvedThreshold rt = resolve_threshold(cfg);
  const NetworkSpec spec{cfg.network, cfg.K, rt.k};
  spec.validate();

  SweepOutcome out;
  int total = 0, aborted = 0;
  for (int point = 0; point < static_cast<int>(cfg.rates.size()); ++point) {
    const double t0 = now_ms();
    const int M = rate_to_m(cfg.N, cfg.rates[point]);
    const double R = static_cast<double>(cfg.N) / M;
    std::vector<double> block_vals, signed_vals;
    int point_aborts = 0;
    for (int run = 0; run < cfg.runs; ++run) {
      const EccRun r = one_ecc_run(cfg, spec, M, point, run, 0);
      ++total;
      if (r.aborted) {
        ++point_aborts;
        ++aborted;
        continue;
      }
      block_vals.push_back(r.blockwise);
      signed_vals.push_back(r.signed_overlap);
    }
    const double wall = now_ms() - t0;
    const Moments mb = moments(block_vals);
    const Moments ms = moments(signed_vals);
    ResultRow row = echo_row(cfg, M, R, 0.0, rt.k);
    row.bias = rt.target_bias;
    row.metric = "blockwise_abs_overlap";
    row.mean = mb.mean;
    row.stddev = mb.stddev;
    row.count = mb.count;
    row.aborted = point_aborts;
    row.wall_ms = wall;
    out.rows.push_back(row);
    row.metric = "overlap";
    row.mean = ms.mean;
    row.stddev = ms.stddev;
    out.rows.push_back(row);
  }
  out.abort_fraction = total > 0 ? static_cast<double>(aborted) / total : 0.0;
  return out;
}

SweepOutcome sweep_lc(const ExperimentConfig& cfg) {
  cfg.validate();
  const ResolvedThreshold rt = resolve_threshold(cfg);
  const NetworkSpec spec{cfg.network, cfg.K, rt.k};
  spec.validate();
  const std::vector<double> grid = cfg.beta_grid.empty() ? std::vector<double>{cfg.beta}
                                                         : cfg.beta_grid;

  SweepOutcome out;
  int total = 0, aborted = 0;
  for (int point = 0; point < static_cast<int>(cfg.rates.size()); ++point) {
    const double t0 = now_ms();
    const int M = rate_to_m(cfg.N, cfg.rates[point]);
    const double R = static_cast<double>(cfg.N) / M;

    double best_mean = 2.0, best_beta = grid.front(), best_std = 0.0;
    int best_count = 0, best_aborts = 0;
    for (double beta : grid) {
      std::vector<double> vals;
      int beta_aborts = 0;
      for (int run = 0; run < cfg.runs; ++run) {
        const LcRun r = one_lc_run(cfg, spec, M, beta, point, run, 0);
        ++total;
        if (r.aborted) {
          ++beta_aborts;
          ++aborted;
          continue;
        }
        vals.push_back(r.distortion);
      }
      const Moments m = moments(vals);
      if (m.count > 0 && m.mean < best_mean) {
        best_mean = m.mean;
        best_std = m.stddev;
        best_beta = beta;
        best_count = m.count;
        best_aborts = beta_aborts;
      }
    }
    const double wall = now_ms() - t0;
    ResultRow row = echo_row(cfg, M, R, best_beta, rt.k);
    row.metric = "distortion";
    row.mean = best_count > 0 ? best_mean : std::numeric_limits<double>::quiet_NaN();
    row.stddev = best_std;
    row.count = best_count;
    row.aborted = best_aborts;
    row.wall_ms = wall;
    out.rows.push_back(row);
  }
  out.abort_fraction = total > 0 ? static_cast<double>(aborted) / total : 0.0;
  return out;
}

HistOutcome hist_ecc(const ExperimentConfig& cfg) {
  cfg.validate();
  const ResolvedThreshold rt = resolve_threshold(cfg);
  const NetworkSpec spec{cfg.network, cfg.K, rt.k};
  spec.validate();
  const int M = rate_to_m(cfg.N, cfg.rates.front());
  const ChannelParams ch{cfg.p, cfg.r};

  HistOutcome out;
  const double t0 = now_ms();
  int total = 0, aborted = 0;
  for (int msg = 0; msg < cfg.messages; ++msg) {
    RandomStream msg_rs(stream_id(cfg, kMsg, 0, msg, 0));
    const SpinVector s0 = draw_uniform_spins(cfg.N, msg_rs);
    RandomStream book_rs(stream_id(cfg, kBook, 0, msg, 0));
    const Codebook X(M, cfg.N, cfg.K, book_rs);
    const SpinVector y0 = encode(spec, s0, X);
    RandomStream noise_rs(stream_id(cfg, kNoise, 0, msg, 0));
    const SpinVector y = transmit(y0, ch, noise_rs);
    Problem pb{Task::Ecc, spec, &X, y, ch};
    BPConfig bp;
    bp.iterations = cfg.effective_iters();
    bp.gamma = cfg.gamma;
    bp.init_scale = cfg.init_scale;

    std::vector<SpinVector> estimates;
    double msg_overlap = 0.0;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
      ++total;
      RandomStream init_rs(stream_id(cfg, kInit, 0, msg, restart));
      try {
        const RunResult rr = mlpc::run(pb, bp, init_rs);
        msg_overlap += blockwise_abs_overlap(rr.estimate, s0, cfg.K);
        estimates.push_back(rr.estimate);
      } catch (const NumericalBreakdown&) {
        ++aborted;
      }
    }
    if (!estimates.empty()) {
      out.message_metric.push_back(msg_overlap / estimates.size());
      for (std::size_t a = 0; a < estimates.size(); ++a)
        for (std::size_t b = a + 1; b < estimates.size(); ++b)
          out.samples.push_back(overlap(estimates[a], estimates[b]));
    }
  }
  double pooled = 0.0;
  for (double v : out.message_metric) pooled += v;
  out.pooled_metric = out.message_metric.empty() ? 0.0 : pooled / out.message_metric.size();
  out.abort_fraction = total > 0 ? static_cast<double>(aborted) / total : 0.0;

  out.row = echo_row(cfg, M, static_cast<double>(cfg.N) / M, 0.0, rt.k);
  out.row.bias = rt.target_bias;
  out.row.metric = "blockwise_abs_overlap";
  const Moments mm = moments(out.message_metric);
  out.row.mean = mm.mean;
  out.row.stddev = mm.stddev;
  out.row.count = mm.count;
  out.row.aborted = aborted;
  out.row.wall_ms = now_ms() - t0;
  return out;
}

HistOutcome hist_lc(const ExperimentConfig& cfg) {
  cfg.validate();
  const ResolvedThreshold rt = resolve_threshold(cfg);
  const NetworkSpec spec{cfg.network, cfg.K, rt.k};
  spec.validate();
  const int M = rate_to_m(cfg.N, cfg.rates.front());

  HistOutcome out;
  const double t0 = now_ms();
  int total = 0, aborted = 0;
  for (int msg = 0; msg < cfg.messages; ++msg) {
    RandomStream msg_rs(stream_id(cfg, kMsg, 0, msg, 0));
    const SpinVector y = sample_source(M, SourceModel{cfg.bias}, msg_rs);
    RandomStream book_rs(stream_id(cfg, kBook, 0, msg, 0));
    const Codebook X(M, cfg.N, cfg.K, book_rs);
    Problem pb{Task::Lc, spec, &X, y, ChannelParams{}};
    BPConfig bp;
    bp.iterations = cfg.effective_iters();
    bp.gamma = cfg.gamma;
    bp.beta = cfg.beta;
    bp.init_scale = cfg.init_scale;

    std::vector<SpinVector> codewords;
    double msg_dist = 0.0;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
      ++total;
      RandomStream init_rs(stream_id(cfg, kInit, 0, msg, restart));
      try {
        const RunResult rr = mlpc::run(pb, bp, init_rs);
        const SpinVector decoded = encode(spec, rr.estimate, X);
        msg_dist += hamming_distortion(y, decoded);
        codewords.push_back(rr.estimate);
      } catch (const NumericalBreakdown&) {
        ++aborted;
      }
    }
    if (!codewords.empty()) {
      out.message_metric.push_back(msg_dist / codewords.size());
      for (std::size_t a = 0; a < codewords.size(); ++a)
        for (std::size_t b = a + 1; b < codewords.size(); ++b)
          out.samples.push_back(overlap(codewords[a], codewords[b]));
    }
  }
  double pooled = 0.0;
  for (double v : out.message_metric) pooled += v;
  out.pooled_metric = out.message_metric.empty() ? 0.0 : pooled / out.message_metric.size();
  out.abort_fraction = total > 0 ? static_cast<double>(aborted) / total : 0.0;

  out.row = echo_row(cfg, M, static_cast<double>(cfg.N) / M, cfg.beta, rt.k);
  out.row.metric = "distortion";
  const Moments mm = moments(out.message_metric);
  out.row.mean = mm.mean;
  out.row.stddev = mm.stddev;
  out.row.count = mm.count;
  out.row.aborted = aborted;
  out.row.wall_ms = now_ms() - t0;
  return out;
}

std::vector<BoundsRow> bounds(const ExperimentConfig& cfg) {
  std::vector<BoundsRow> rows;
  const ChannelParams ch{cfg.p, cfg.r};
  ch.validate();
  const CapacityPoint cap = bac_capacity(ch);
  BoundsRow c;
  c.kind = "bac_capacity";
  c.p = cfg.p;
  c.r = cfg.r;
  c.capacity = cap.capacity;
  c.input_bias = cap.input_bias;
  rows.push_back(c);

  const SourceModel src{cfg.bias};
  src.validate();
  const double h = binary_entropy(cfg.bias);
  for (double R = 0.02; R < h - 1e-9; R += 0.02) {
    BoundsRow d;
    d.kind = "rate_distortion";
    d.bias = cfg.bias;
    d.R = R;
    d.D = shannon_distortion(src, R);
    rows.push_back(d);
  }
  BoundsRow last;
  last.kind = "rate_distortion";
  last.bias = cfg.bias;
  last.R = h;
  last.D = 0.0;
  rows.push_back(last);
  return rows;
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}
}  // namespace

void write_sweep_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "task,network,K,N,M,R,p,r,bias,gamma,beta,k,runs,restarts,messages,iters,seed,"
       "metric,mean,stddev,count,aborted,wall_ms\n";
  for (const ResultRow& w : rows) {
    f << w.task << ',' << w.network << ',' << w.K << ',' << w.N << ',' << w.M << ','
      << fmt(w.R) << ',' << fmt(w.p) << ',' << fmt(w.r) << ',' << fmt(w.bias) << ','
      << fmt(w.gamma) << ',' << fmt(w.beta) << ',' << fmt(w.k) << ',' << w.runs << ','
      << w.restarts << ',' << w.messages << ',' << w.iters << ',' << w.seed << ','
      << w.metric << ',' << fmt(w.mean) << ',' << fmt(w.stddev) << ',' << w.count << ','
      << w.aborted << ',' << fmt(w.wall_ms) << '\n';
  }
}

void write_samples(const std::string& path, const std::vector<double>& samples) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  for (double v : samples) f << fmt(v) << '\n';
}

void write_bounds_csv(const std::string& path, const std::vector<BoundsRow>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "kind,p,r,bias,R,D,capacity,input_bias\n";
  for (const BoundsRow& w : rows) {
    f << w.kind << ',' << fmt(w.p) << ',' << fmt(w.r) << ',' << fmt(w.bias) << ','
      << fmt(w.R) << ',' << fmt(w.D) << ',' << fmt(w.capacity) << ',' << fmt(w.input_bias)
      << '\n';
  }
}

std::string summary_json(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows,
                         double abort_fraction) {
  nlohmann::json j;
  j["version"] = "mlpcodes 0.1.0";
  nlohmann::json c;
  c["task"] = to_string(cfg.task);
  c["network"] = to_string(cfg.network);
  c["K"] = cfg.K;
  c["N"] = cfg.N;
  c["rates"] = cfg.rates;
  c["p"] = cfg.p;
  c["r"] = cfg.r;
  c["bias"] = cfg.bias;
  c["gamma"] = cfg.gamma;
  c["beta"] = cfg.beta;
  c["beta_grid"] = cfg.beta_grid;
  c["runs"] = cfg.runs;
  c["restarts"] = cfg.restarts;
  c["messages"] = cfg.messages;
  c["iters"] = cfg.effective_iters();
  c["seed"] = cfg.seed;
  c["init_scale"] = cfg.init_scale;
  c["paper_scale"] = cfg.paper_scale;
  j["config"] = c;
  j["abort_fraction"] = abort_fraction;
  nlohmann::json rs = nlohmann::json::array();
  for (const ResultRow& w : rows) {
    nlohmann::json r;
    r["metric"] = w.metric;
    r["M"] = w.M;
    r["R"] = w.R;
    r["k"] = w.k;
    r["beta"] = w.beta;
    r["mean"] = w.mean;
    r["stddev"] = w.stddev;
    r["count"] = w.count;
    r["aborted"] = w.aborted;
    rs.push_back(r);
  }
  j["rows"] = rs;
  return j.dump(2);
}

}  // namespace mlpc
