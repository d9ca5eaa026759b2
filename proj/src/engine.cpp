#include "mlpc/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace mlpc {

void Problem::validate() const {
  spec.validate();
  if (codebook == nullptr) throw std::invalid_argument("Problem: missing codebook");
  if (codebook->blocks() != spec.K) throw std::invalid_argument("Problem: codebook/spec K mismatch");
  if (observed.size() != static_cast<std::size_t>(codebook->rows()))
    throw std::invalid_argument("Problem: observed length != M");
  if (task == Task::Ecc) channel.validate();
}

void BPConfig::validate() const {
  if (iterations < 0) throw std::invalid_argument("BPConfig: iterations must be >= 0");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("BPConfig: gamma outside [0,1)");
  if (!(beta > 0.0)) throw std::invalid_argument("BPConfig: beta must be positive");
  if (!(init_scale >= 0.0 && init_scale < 1.0))
    throw std::invalid_argument("BPConfig: init_scale outside [0,1)");
  if (!(q_clamp > 0.0 && q_clamp < 1.0)) throw std::invalid_argument("BPConfig: q_clamp outside (0,1)");
  if (!(v_floor > 0.0)) throw std::invalid_argument("BPConfig: v_floor must be positive");
  if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("BPConfig: damping outside [0,1)");
}

BPState init_state(const Problem& problem, const BPConfig& cfg, RandomStream& rs) {
  problem.validate();
  cfg.validate();
  const int n = problem.codebook->cols();
  const int m = problem.codebook->rows();
  BPState st;
  st.m.resize(n);
  for (double& v : st.m) v = cfg.init_scale * (2.0 * rs.next_double() - 1.0);
  st.phi_prev.assign(static_cast<std::size_t>(m) * problem.spec.K, 0.0);
  return st;
}

namespace {
constexpr double kMagCap = 1.0 - 1e-12;

inline double clamp_mag(double v) { return v > kMagCap ? kMagCap : (v < -kMagCap ? -kMagCap : v); }
}  // namespace

void bp_step(BPState& st, const Problem& pb, const BPConfig& cfg) {
  const Codebook& X = *pb.codebook;
  const int N = X.cols(), M = X.rows(), K = pb.spec.K;
  const int blk = N / K;
  const double sqKN = std::sqrt(static_cast<double>(K) / N);
  const double KN = static_cast<double>(K) / N;

  // block overlap parameters from the current magnetizations
  std::vector<double> q(K);
  for (int l = 0; l < K; ++l) {
    double acc = 0.0;
    const double* mp = st.m.data() + static_cast<std::size_t>(l) * blk;
    for (int i = 0; i < blk; ++i) acc += mp[i] * mp[i];
    const double ql = KN * acc;
    q[l] = ql < cfg.q_clamp ? ql : cfg.q_clamp;
  }

  std::vector<double> phi(static_cast<std::size_t>(M) * K);
  std::vector<double> gain_sum(K, 0.0);
  std::vector<BranchTerms> bt(K);

  try {
    for (int mu = 0; mu < M; ++mu) {
      const auto xr = X.row(mu);
      for (int l = 0; l < K; ++l) {
        const double* mp = st.m.data() + static_cast<std::size_t>(l) * blk;
        const double* xp = xr.data() + static_cast<std::size_t>(l) * blk;
        double dot = 0.0;
        for (int i = 0; i < blk; ++i) dot += mp[i] * xp[i];
        const double lam_bar = sqKN * dot;
        const double lam_hat = st.phi_prev[static_cast<std::size_t>(mu) * K + l] * (1.0 - q[l]);
        bt[l] = prepare_branch(pb.spec, CavityField{lam_bar - lam_hat, q[l]});
      }
      const int y = pb.observed[mu];
      for (int l = 0; l < K; ++l) {
        const KernelOutput ko =
            pb.task == Task::Ecc
                ? kernel_ecc(pb.spec, y, l, std::span<const BranchTerms>(bt), pb.channel)
                : kernel_lc(pb.spec, y, l, std::span<const BranchTerms>(bt), cfg.beta);
        const PhiGain pg = phi_and_gain(ko, cfg.v_floor);
        phi[static_cast<std::size_t>(mu) * K + l] = pg.phi;
        gain_sum[l] += pg.gain;
      }
    }
  } catch (NumericalBreakdown& nb) {
    throw NumericalBreakdown(std::string(nb.what()) + " at step " + std::to_string(st.t), st.t);
  }

  std::vector<double> gain(K);
  for (int l = 0; l < K; ++l) gain[l] = KN * gain_sum[l];

  // h_i = sum_mu x_{mu i} Phi_{mu, l(i)}
  std::vector<double> h(N, 0.0);
  for (int mu = 0; mu < M; ++mu) {
    const auto xr = X.row(mu);
    const double* ph = phi.data() + static_cast<std::size_t>(mu) * K;
    for (int l = 0; l < K; ++l) {
      const double p = ph[l];
      double* hp = h.data() + static_cast<std::size_t>(l) * blk;
      const double* xp = xr.data() + static_cast<std::size_t>(l) * blk;
      for (int i = 0; i < blk; ++i) hp[i] += xp[i] * p;
    }
  }

  StepStats stats;
  stats.q = q;
  double sum_abs = 0.0, max_dm = 0.0;
  for (int i = 0; i < N; ++i) {
    const int l = i / blk;
    const double m_old = st.m[i];
    double arg = sqKN * h[i] + m_old * gain[l];
    if (cfg.gamma > 0.0) arg += std::atanh(cfg.gamma * m_old);
    double m_new = std::tanh(arg);
    if (cfg.damping > 0.0) m_new = (1.0 - cfg.damping) * m_new + cfg.damping * m_old;
    m_new = clamp_mag(m_new);
    const double dm = std::fabs(m_new - m_old);
    if (dm > max_dm) max_dm = dm;
    sum_abs += std::fabs(m_new);
    st.m[i] = m_new;
  }
  stats.mean_abs_m = sum_abs / N;
  stats.max_abs_dm = max_dm;
  st.trace.push_back(std::move(stats));
  st.phi_prev.swap(phi);
  ++st.t;
}

SpinVector mpm_estimate(const BPState& state) {
  std::vector<Spin> s(state.m.size());
  for (std::size_t i = 0; i < state.m.size(); ++i) s[i] = state.m[i] >= 0.0 ? Spin{1} : Spin{-1};
  return SpinVector(std::move(s));
}

RunResult run(const Problem& problem, const BPConfig& cfg, RandomStream& rs) {
  BPState st = init_state(problem, cfg, rs);

  const bool track_best = cfg.lc_best_over_trace && problem.task == Task::Lc;
  double best_dist = 2.0;
  SpinVector best = mpm_estimate(st);

  for (int t = 0; t < cfg.iterations; ++t) {
    bp_step(st, problem, cfg);
    if (track_best) {
      const SpinVector cand = mpm_estimate(st);
      const SpinVector decoded = encode(problem.spec, cand, *problem.codebook);
      const double d = hamming_distortion(problem.observed, decoded);
      if (d < best_dist) {
        best_dist = d;
        best = cand;
      }
    }
    if (cfg.early_stop_tol > 0.0 && st.trace.back().max_abs_dm < cfg.early_stop_tol) break;
  }

  RunResult res{track_best ? best : mpm_estimate(st), st.trace};
  return res;
}

}  // namespace mlpc
