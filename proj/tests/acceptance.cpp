// Acceptance suite: every check prints one PASS/FAIL line. The fast tier
// covers kernel identities, oracles and small instances; the reproduction
// tier reruns the desk-scale rate sweeps and histograms.
//
// Usage: acceptance [--fast|--repro]   (default: both tiers)

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "mlpc/experiment.hpp"
#include "mlpc/oracle.hpp"

using namespace mlpc;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& detail) {
  std::printf("[%s] C%02d %s: %s\n", pass ? "PASS" : "FAIL", id, label.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

constexpr std::uint64_t kSeed = 20260810;

std::vector<CavityField> random_fields(RandomStream& rs, int K) {
  std::vector<CavityField> f(K);
  for (auto& c : f) {
    const double sign = rs.next_spin();
    c.mean = sign * (0.25 + 0.75 * rs.next_double());
    c.q = 0.5 * rs.next_double();
  }
  return f;
}

// Inputs for the oracle comparison: the target branch is displaced (large
// kernel derivative) while the others sit near the symmetric point (large
// branch weights), keeping |U| bounded away from zero so relative error is
// well defined.
std::vector<CavityField> oracle_fields(RandomStream& rs, int K, int target) {
  std::vector<CavityField> f(K);
  for (int l = 0; l < K; ++l) {
    const double sign = rs.next_spin();
    if (l == target)
      f[l].mean = sign * (0.35 + 0.65 * rs.next_double());
    else
      f[l].mean = sign * 0.35 * rs.next_double();
    f[l].q = 0.4 * rs.next_double();
  }
  return f;
}

struct KernelCase {
  NetworkSpec spec;
  Task task;
  const char* name;
};

const std::vector<KernelCase>& kernel_cases() {
  static const std::vector<KernelCase> cases = {
      {{NetworkKind::PTH, 3, 1.0}, Task::Ecc, "pth-ecc"},
      {{NetworkKind::CTH, 3, 1.0}, Task::Ecc, "cth-ecc"},
      {{NetworkKind::CTO, 3, 1.0}, Task::Ecc, "cto-ecc"},
      {{NetworkKind::PTH, 3, 1.0}, Task::Lc, "pth-lc"},
      {{NetworkKind::CTH, 3, 1.0}, Task::Lc, "cth-lc"},
      {{NetworkKind::CTO, 3, 1.0}, Task::Lc, "cto-lc"},
  };
  return cases;
}

KernelOutput eval_kernel(const KernelCase& kc, int y, int target,
                         const std::vector<CavityField>& f, const ChannelParams& ch,
                         double beta) {
  return kc.task == Task::Ecc
             ? kernel_ecc(kc.spec, y, target, std::span<const CavityField>(f), ch)
             : kernel_lc(kc.spec, y, target, std::span<const CavityField>(f), beta);
}

// ---------------------------------------------------------------- fast tier

void c01_kernel_identity() {
  const ChannelParams ch{0.1, 0.2};
  bool ok = true;
  RandomStream rs(SeededStream{kSeed, 101, 0, 0});
  for (const auto& kc : kernel_cases()) {
    for (int rep = 0; rep < 1000 && ok; ++rep) {
      const auto f = random_fields(rs, kc.spec.K);
      const int y = rs.next_spin();
      const int target = static_cast<int>(rs.next_u64() % kc.spec.K);
      const KernelOutput out = eval_kernel(kc, y, target, f, ch, 2.0);
      ok = out.V_tilde == -out.U;
    }
  }
  report(1, "kernel identity V~ = -U", ok, ok ? "exact on 1000 inputs x 6 kernels" : "mismatch");
}

void c02_kernel_vs_oracle() {
  const ChannelParams ch{0.1, 0.2};
  const double betas[4] = {1.0, 2.0, 4.0, 8.0};
  double worst_u = 0.0, worst_v = 0.0;
  bool ok = true;
  RandomStream rs(SeededStream{kSeed, 102, 0, 0});
  for (const auto& kc : kernel_cases()) {
    int accepted = 0, attempts = 0;
    while (accepted < 20 && attempts < 400) {
      ++attempts;
      const int y = rs.next_spin();
      const int target = static_cast<int>(rs.next_u64() % kc.spec.K);
      const auto f = oracle_fields(rs, kc.spec.K, target);
      const double beta = betas[accepted % 4];
      const KernelOutput closed = eval_kernel(kc, y, target, f, ch, beta);
      if (std::fabs(closed.U) < 0.05) continue;
      ++accepted;
      RandomStream ors(SeededStream{kSeed, 103, static_cast<std::uint64_t>(attempts), 0});
      const McKernelEstimate est = mc_kernel_oracle(kc.spec, kc.task, y, target, f, ch, beta,
                                                    1000000, ors);
      const double eu = std::fabs(closed.U - est.U) / std::fabs(est.U);
      const double ev = std::fabs(closed.V - est.V) / std::fabs(est.V);
      worst_u = std::max(worst_u, eu);
      worst_v = std::max(worst_v, ev);
      if (eu > 0.02 || ev > 0.02) ok = false;
    }
    if (accepted < 20) ok = false;
  }
  report(2, "kernel vs Monte Carlo oracle", ok,
         fmt("max rel err U=%.4f V=%.4f (tol 0.02, 20 inputs/kernel, 1e6 samples)", worst_u,
             worst_v));
}

void c03_zero_fixed_point() {
  bool ok = true;
  for (const auto& kc : kernel_cases()) {
    RandomStream brs(SeededStream{kSeed, 104, 0, 0});
    const int N = 24, M = 16;
    Codebook X(M, N, kc.spec.K, brs);
    RandomStream yrs(SeededStream{kSeed, 105, 0, 0});
    const SpinVector y = draw_uniform_spins(M, yrs);
    Problem pb{kc.task, kc.spec, &X, y, ChannelParams{0.1, 0.2}};
    for (double gamma : {0.0, 0.45}) {
      BPConfig cfg;
      cfg.gamma = gamma;
      cfg.beta = 2.0;
      BPState st;
      st.m.assign(N, 0.0);
      st.phi_prev.assign(static_cast<std::size_t>(M) * kc.spec.K, 0.0);
      bp_step(st, pb, cfg);
      for (double v : st.m) ok = ok && v == 0.0;
    }
  }
  report(3, "all-zero state is an exact fixed point", ok,
         ok ? "m' = 0 exactly for 6 kernels x gamma in {0, 0.45}" : "drift detected");
}

void c04_mirror_symmetry() {
  RandomStream rs(SeededStream{kSeed, 106, 0, 0});
  const int M = 8;
  bool ok = true;
  int done = 0;
  const NetworkKind kinds[3] = {NetworkKind::PTH, NetworkKind::CTH, NetworkKind::CTO};
  const int ks[3] = {3, 3, 2};
  // CTO instances use odd block lengths so no inner field is exactly zero
  const int ns[3] = {24, 24, 26};
  for (int rep = 0; rep < 1000; ++rep) {
    const int c = rep % 3;
    const int N = ns[c];
    NetworkSpec spec{kinds[c], ks[c], 0.5 + rs.next_double()};
    const SpinVector s = draw_uniform_spins(N, rs);
    Codebook X(M, N, spec.K, rs);
    const SpinVector y = encode(spec, s, X);
    if (!(encode(spec, s.negated(), X) == y)) ok = false;
    if (spec.kind != NetworkKind::CTO) {
      for (int l = 0; l < spec.K; ++l) {
        SpinVector sf = s;
        sf.negate_block(spec.K, l);
        if (!(encode(spec, sf, X) == y)) ok = false;
      }
    }
    ++done;
  }
  report(4, "encode mirror symmetry", ok,
         fmt("%d random instances, per-block (PTH/CTH) and global flips", done));
}

void c05_bounds() {
  bool ok = true;
  std::string detail;
  for (double p : {0.05, 0.1, 0.2}) {
    const CapacityPoint c = bac_capacity(ChannelParams{p, p});
    if (std::fabs(c.capacity - (1.0 - binary_entropy(p))) > 1e-6) ok = false;
  }
  const double d = shannon_distortion(SourceModel{0.5}, 0.4);
  if (std::fabs(d - 0.1461) > 0.0005) ok = false;
  report(5, "Shannon bounds", ok,
         fmt("BSC capacity matches 1-H2(p) to 1e-6; D(0.5, R=0.4)=%.4f (expect 0.1461+-0.0005)",
             d));
}

void c06_cth_pth_collapse() {
  RandomStream rs(SeededStream{kSeed, 107, 0, 0});
  const ChannelParams ch{0.1, 0.2};
  NetworkSpec pth{NetworkKind::PTH, 1, 0.85};
  NetworkSpec cth{NetworkKind::CTH, 1, 0.85};
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto f = random_fields(rs, 1);
    const int y = rs.next_spin();
    const KernelOutput a = kernel_ecc(pth, y, 0, std::span<const CavityField>(f), ch);
    const KernelOutput b = kernel_ecc(cth, y, 0, std::span<const CavityField>(f), ch);
    worst = std::max({worst, std::fabs(a.U - b.U), std::fabs(a.V - b.V),
                      std::fabs(a.U_tilde - b.U_tilde), std::fabs(a.V_tilde - b.V_tilde)});
    const KernelOutput c = kernel_lc(pth, y, 0, std::span<const CavityField>(f), 1.5);
    const KernelOutput d = kernel_lc(cth, y, 0, std::span<const CavityField>(f), 1.5);
    worst = std::max({worst, std::fabs(c.U - d.U), std::fabs(c.V - d.V),
                      std::fabs(c.U_tilde - d.U_tilde)});
  }
  report(6, "CTH(K=1) equals PTH(K=1)", worst <= 1e-12,
         fmt("max |diff| = %.2e over 50 inputs, both tasks (tol 1e-12)", worst));
}

void c07_small_n_oracle() {
  // (a) exact marginals vanish for a noiseless planted instance
  bool sym_ok = true;
  for (NetworkKind kind : {NetworkKind::PTH, NetworkKind::CTH}) {
    RandomStream mrs(SeededStream{kSeed, 108, 0, 0});
    const SpinVector s0 = draw_uniform_spins(12, mrs);
    RandomStream brs(SeededStream{kSeed, 109, 0, 0});
    Codebook X(24, 12, 3, brs);
    NetworkSpec spec{kind, 3, 0.9};
    const SpinVector y = encode(spec, s0, X);
    Problem pb{Task::Ecc, spec, &X, y, ChannelParams{0.0, 0.0}};
    for (double v : exact_marginals(pb, 1.0)) sym_ok = sym_ok && v == 0.0;
  }

  // (b) low-noise recovery within 100 iterations
  NetworkSpec spec{NetworkKind::PTH, 1, tune_threshold(NetworkSpec{NetworkKind::PTH, 1, 0.0}, 0.5)};
  int good = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream mrs(SeededStream{kSeed, 110, seed, 0});
    const SpinVector s0 = draw_uniform_spins(64, mrs);
    RandomStream brs(SeededStream{kSeed, 111, seed, 0});
    Codebook X(512, 64, 1, brs);
    const SpinVector y0 = encode(spec, s0, X);
    RandomStream nrs(SeededStream{kSeed, 112, seed, 0});
    const ChannelParams ch{0.01, 0.01};
    const SpinVector y = transmit(y0, ch, nrs);
    Problem pb{Task::Ecc, spec, &X, y, ch};
    BPConfig cfg;
    RandomStream irs(SeededStream{kSeed, 113, seed, 0});
    const RunResult rr = run(pb, cfg, irs);
    good += blockwise_abs_overlap(rr.estimate, s0, 1) == 1.0;
  }
  report(7, "small-N oracle and easy recovery", sym_ok && good >= 8,
         fmt("block symmetry %s; planted recovery %d/10 (need >= 8)", sym_ok ? "exact" : "BROKEN",
             good));
}

void c08_full_vs_reduced() {
  const int N = 64, M = 512;
  NetworkSpec spec{NetworkKind::PTH, 1, tune_threshold(NetworkSpec{NetworkKind::PTH, 1, 0.0}, 0.5)};
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream mrs(SeededStream{kSeed, 114, seed, 0});
    const SpinVector s0 = draw_uniform_spins(N, mrs);
    RandomStream brs(SeededStream{kSeed, 115, seed, 0});
    Codebook X(M, N, 1, brs);
    const SpinVector y0 = encode(spec, s0, X);
    RandomStream nrs(SeededStream{kSeed, 116, seed, 0});
    const ChannelParams ch{0.01, 0.01};
    const SpinVector y = transmit(y0, ch, nrs);
    Problem pb{Task::Ecc, spec, &X, y, ch};
    BPConfig cfg;
    RandomStream irs(SeededStream{kSeed, 117, seed, 0});
    BPState red = init_state(pb, cfg, irs);
    DenseBpState full = full_bp_init(pb, red.m);
    for (int t = 0; t < 5; ++t) {
      bp_step(red, pb, cfg);
      full_bp_step(full, pb, cfg);
    }
    for (int i = 0; i < N; ++i) worst = std::max(worst, std::fabs(red.m[i] - full.marginal[i]));
  }
  const double tol = 5.0 / std::sqrt(static_cast<double>(N));
  report(8, "full vs reduced BP", worst <= tol,
         fmt("max marginal diff %.4f after 5 steps, 10 seeds (tol %.4f)", worst, tol));
}

// ---------------------------------------------------------- reproduction tier

ExperimentConfig base_cfg(ExperimentTask task) {
  ExperimentConfig cfg;
  cfg.task = task;
  cfg.seed = kSeed;
  cfg.runs = 20;
  cfg.restarts = 8;
  cfg.messages = 8;
  return cfg;
}

double sweep_mean(const SweepOutcome& out, double R, const std::string& metric) {
  for (const ResultRow& row : out.rows)
    if (row.metric == metric && std::fabs(row.R - R) < 5e-3) return row.mean;
  return std::nan("");
}

double peak_mass(const std::vector<double>& samples, const std::vector<double>& peaks,
                 double window) {
  if (samples.empty()) return 0.0;
  int near = 0;
  for (double v : samples) {
    double best = 1e9;
    for (double p : peaks) best = std::min(best, std::fabs(v - p));
    near += best <= window;
  }
  return static_cast<double>(near) / samples.size();
}

void c09_ecc_pth_k1() {
  ExperimentConfig cfg = base_cfg(ExperimentTask::EccSweep);
  cfg.network = NetworkKind::PTH;
  cfg.K = 1;
  cfg.N = 1000;
  cfg.rates = {0.25, 0.40};
  cfg.p = 0.1;
  cfg.r = 0.2;
  cfg.gamma = 0.0;
  const SweepOutcome out = sweep_ecc(cfg);
  const double lo = sweep_mean(out, 0.25, "blockwise_abs_overlap");
  const double hi = sweep_mean(out, 0.40, "blockwise_abs_overlap");
  report(9, "ECC PTH K=1 rate sweep", lo >= 0.90 && hi <= 0.60,
         fmt("R=0.25: %.3f (need >= 0.90); R=0.40: %.3f (need <= 0.60)", lo, hi));
}

void c10_ecc_pth_k3() {
  ExperimentConfig cfg = base_cfg(ExperimentTask::EccSweep);
  cfg.network = NetworkKind::PTH;
  cfg.K = 3;
  cfg.N = 999;
  cfg.rates = {0.25};
  cfg.p = 0.1;
  cfg.r = 0.2;
  cfg.gamma = 0.0;
  const SweepOutcome out = sweep_ecc(cfg);
  const double m = sweep_mean(out, 0.25, "blockwise_abs_overlap");
  report(10, "ECC PTH K=3 failure mode", m <= 0.15, fmt("overlap %.3f (need <= 0.15)", m));
}

void c11_ecc_cth_k3() {
  ExperimentConfig cfg = base_cfg(ExperimentTask::EccSweep);
  cfg.network = NetworkKind::CTH;
  cfg.K = 3;
  cfg.N = 999;
  cfg.rates = {0.15};
  cfg.p = 0.1;
  cfg.r = 0.2;
  cfg.gamma = 0.0;
  const SweepOutcome plain = sweep_ecc(cfg);
  const double no_inertia = sweep_mean(plain, 0.15, "blockwise_abs_overlap");

  ExperimentConfig hist_cfg = base_cfg(ExperimentTask::EccHist);
  hist_cfg.network = NetworkKind::CTH;
  hist_cfg.K = 3;
  hist_cfg.N = 999;
  hist_cfg.rates = {0.15};
  hist_cfg.p = 0.1;
  hist_cfg.r = 0.2;
  hist_cfg.gamma = 0.45;
  const HistOutcome hist = hist_ecc(hist_cfg);
  const double with_inertia = hist.pooled_metric;
  const double mass = peak_mass(hist.samples, {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0}, 0.05);

  const bool pass_inertia = with_inertia >= 0.92;
  const bool pass_plain = no_inertia >= 0.60 && no_inertia <= 0.88;
  const bool pass_mass = mass >= 0.90;
  report(11, "ECC CTH K=3 inertia study", pass_inertia && pass_plain && pass_mass,
         fmt("gamma=0.45: %.3f (need >= 0.92); gamma=0: %.3f (need in [0.60, 0.88]); "
             "peak mass %.1f%% (need >= 90%%)",
             with_inertia, no_inertia, mass * 100.0));
}

void c12_ecc_cto_k2() {
  ExperimentConfig cfg = base_cfg(ExperimentTask::EccSweep);
  cfg.network = NetworkKind::CTO;
  cfg.K = 2;
  cfg.N = 1000;
  cfg.rates = {0.15, 0.25};
  cfg.p = 0.1;
  cfg.r = 0.2;
  cfg.gamma = 0.0;
  const SweepOutcome out = sweep_ecc(cfg);
  const double lo = sweep_mean(out, 0.15, "blockwise_abs_overlap");
  const double hi = sweep_mean(out, 0.25, "blockwise_abs_overlap");

  ExperimentConfig hist_cfg = base_cfg(ExperimentTask::EccHist);
  hist_cfg.network = NetworkKind::CTO;
  hist_cfg.K = 2;
  hist_cfg.N = 1000;
  hist_cfg.rates = {0.25};
  hist_cfg.p = 0.1;
  hist_cfg.r = 0.2;
  hist_cfg.gamma = 0.0;
  const HistOutcome hist = hist_ecc(hist_cfg);
  const double mass = peak_mass(hist.samples, {-1.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, 1.0}, 0.1);

  report(12, "ECC CTO K=2 rate sweep", lo >= 0.92 && hi <= 0.85 && mass >= 0.60,
         fmt("R=0.15: %.3f (>= 0.92); R=0.25: %.3f (<= 0.85); peak mass %.1f%% (>= 60%%)", lo,
             hi, mass * 100.0));
}

void c13_lc_pth_k1() {
  ExperimentConfig cfg = base_cfg(ExperimentTask::LcSweep);
  cfg.network = NetworkKind::PTH;
  cfg.K = 1;
  cfg.N = 1000;
  cfg.rates = {0.4};
  cfg.bias = 0.5;
  cfg.gamma = 0.45;
  cfg.beta_grid = {1.0, 2.0, 4.0, 8.0};
  const SweepOutcome out = sweep_lc(cfg);
  const double d = sweep_mean(out, 0.4, "distortion");
  report(13, "LC PTH K=1 distortion", d >= 0.15 && d <= 0.24,
         fmt("distortion %.3f at best beta %.1f (need in [0.15, 0.24])", d, out.rows[0].beta));
}

void c14_lc_pth_k3() {
  ExperimentConfig a = base_cfg(ExperimentTask::LcSweep);
  a.network = NetworkKind::PTH;
  a.K = 3;
  a.N = 102;
  a.rates = {0.4};
  a.bias = 0.5;
  a.gamma = 0.45;
  a.beta_grid = {1.0, 2.0, 4.0, 8.0};
  const double unbiased = sweep_mean(sweep_lc(a), 0.4, "distortion");

  ExperimentConfig b = a;
  b.N = 999;
  b.bias = 0.8;
  const double biased = sweep_mean(sweep_lc(b), 999.0 / 2498.0, "distortion");

  report(14, "LC PTH K=3", unbiased >= 0.38 && biased <= 0.13,
         fmt("p=0.5: %.3f (need >= 0.38, failure mode); p=0.8: %.3f (need <= 0.13)", unbiased,
             biased));
}

void c15_lc_cth_k3() {
  ExperimentConfig cfg = base_cfg(ExperimentTask::LcSweep);
  cfg.network = NetworkKind::CTH;
  cfg.K = 3;
  cfg.N = 1002;
  cfg.rates = {0.4};
  cfg.bias = 0.8;
  cfg.gamma = 0.4;
  cfg.beta_grid = {1.0, 2.0, 4.0, 8.0};
  const SweepOutcome out = sweep_lc(cfg);
  const double d = sweep_mean(out, 0.4, "distortion");
  report(15, "LC CTH K=3 distortion", d >= 0.17 && d <= 0.27,
         fmt("distortion %.3f at best beta %.1f (need in [0.17, 0.27])", d, out.rows[0].beta));
}

void c16_lc_cto_k2() {
  ExperimentConfig cfg = base_cfg(ExperimentTask::LcSweep);
  cfg.network = NetworkKind::CTO;
  cfg.K = 2;
  cfg.N = 1000;
  cfg.rates = {0.4};
  cfg.bias = 0.5;
  cfg.gamma = 0.4;
  cfg.beta_grid = {1.0, 2.0, 4.0, 8.0};
  const SweepOutcome out = sweep_lc(cfg);
  const double d = sweep_mean(out, 0.4, "distortion");
  report(16, "LC CTO K=2 distortion", d >= 0.16 && d <= 0.26,
         fmt("distortion %.3f at best beta %.1f (need in [0.16, 0.26])", d, out.rows[0].beta));
}

void c17_lc_histogram() {
  // pick the best beta with a short calibration sweep, then run the histogram
  ExperimentConfig cal = base_cfg(ExperimentTask::LcSweep);
  cal.network = NetworkKind::PTH;
  cal.K = 1;
  cal.N = 1000;
  cal.rates = {0.4};
  cal.bias = 0.5;
  cal.gamma = 0.45;
  cal.beta_grid = {1.0, 2.0, 4.0, 8.0};
  cal.runs = 6;
  const SweepOutcome pre = sweep_lc(cal);

  ExperimentConfig cfg = base_cfg(ExperimentTask::LcHist);
  cfg.network = NetworkKind::PTH;
  cfg.K = 1;
  cfg.N = 1000;
  cfg.rates = {0.4};
  cfg.bias = 0.5;
  cfg.gamma = 0.45;
  cfg.beta = pre.rows[0].beta;
  cfg.messages = 6;
  const HistOutcome hist = hist_lc(cfg);

  double mean = 0.0;
  int big = 0;
  for (double v : hist.samples) {
    mean += v;
    big += std::fabs(v) > 0.5;
  }
  mean /= hist.samples.empty() ? 1 : hist.samples.size();
  const double frac = hist.samples.empty() ? 1.0 : static_cast<double>(big) / hist.samples.size();
  report(17, "LC codeword-space histogram", std::fabs(mean) <= 0.05 && frac <= 0.01,
         fmt("pairwise mean %+.4f (|.| <= 0.05); frac |overlap|>0.5 = %.2f%% (<= 1%%), beta %.1f",
             mean, frac * 100.0, cfg.beta));
}

}  // namespace

int main(int argc, char** argv) {
  bool fast = true, repro = true;
  if (argc > 1) {
    if (std::strcmp(argv[1], "--fast") == 0) repro = false;
    if (std::strcmp(argv[1], "--repro") == 0) fast = false;
  }
  if (fast) {
    c01_kernel_identity();
    c02_kernel_vs_oracle();
    c03_zero_fixed_point();
    c04_mirror_symmetry();
    c05_bounds();
    c06_cth_pth_collapse();
    c07_small_n_oracle();
    c08_full_vs_reduced();
  }
  if (repro) {
    c09_ecc_pth_k1();
    c10_ecc_pth_k3();
    c11_ecc_cth_k3();
    c12_ecc_cto_k2();
    c13_lc_pth_k1();
    c14_lc_pth_k3();
    c15_lc_cth_k3();
    c16_lc_cto_k2();
    c17_lc_histogram();
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
