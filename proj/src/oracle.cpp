#include "mlpc/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mlpc {

namespace {

// Network output from per-block integer dot products s_l . x_l.
int output_from_dots(const NetworkSpec& spec, std::span<const double> dots, double scale) {
  switch (spec.kind) {
    case NetworkKind::PTH: {
      int prod = 1;
      for (double d : dots) prod *= transfer_fk(scale * d, spec.k);
      return prod;
    }
    case NetworkKind::CTH: {
      int sum = 0;
      for (double d : dots) sum += transfer_fk(scale * d, spec.k);
      return sgn(static_cast<double>(sum));
    }
    case NetworkKind::CTO: {
      int sum = 0;
      for (double d : dots) sum += sgn(scale * d);
      return transfer_fk(sum / std::sqrt(static_cast<double>(spec.K)), spec.k);
    }
  }
  throw std::logic_error("output_from_dots: bad kind");
}

double factor_weight(const Problem& pb, double beta, int y, int F) {
  if (pb.task == Task::Ecc)
    return 0.5 + 0.5 * y * ((1.0 - pb.channel.r - pb.channel.p) * F + (pb.channel.r - pb.channel.p));
  const double eb = std::exp(-beta);
  return eb + (1.0 - eb) * (y * F >= 0 ? 1.0 : 0.0);
}

// Shared Gray-code walk over all 2^N coupling states. Visit receives the
// current spins and the M x K table of block dot products.
template <typename Visit>
void enumerate_states(const Problem& pb, EnumerationBudget budget, Visit visit) {
  pb.validate();
  const Codebook& X = *pb.codebook;
  const int N = X.cols(), M = X.rows(), K = X.blocks();
  if (N > budget.max_bits) throw std::invalid_argument("enumeration budget exceeded");
  const int blk = N / K;

  std::vector<Spin> s(static_cast<std::size_t>(N), Spin{1});
  std::vector<double> dots(static_cast<std::size_t>(M) * K, 0.0);
  for (int mu = 0; mu < M; ++mu) {
    const auto xr = X.row(mu);
    for (int i = 0; i < N; ++i) dots[static_cast<std::size_t>(mu) * K + i / blk] += xr[i];
  }
  visit(std::span<const Spin>(s), std::span<const double>(dots));

  const std::uint64_t total = 1ull << N;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    const int j = std::countr_zero(idx);  // spin flipped by the Gray-code step
    const double delta = -2.0 * s[j];
    const int l = j / blk;
    for (int mu = 0; mu < M; ++mu)
      dots[static_cast<std::size_t>(mu) * K + l] += delta * X.at(mu, j);
    s[j] = static_cast<Spin>(-s[j]);
    visit(std::span<const Spin>(s), std::span<const double>(dots));
  }
}

}  // namespace

std::vector<double> exact_marginals(const Problem& problem, double beta,
                                    EnumerationBudget budget) {
  const Codebook& X = *problem.codebook;
  const int N = X.cols(), M = X.rows(), K = X.blocks();
  const double scale = std::sqrt(static_cast<double>(K) / N);

  double total_w = 0.0;
  std::vector<double> spin_w(static_cast<std::size_t>(N), 0.0);

  enumerate_states(problem, budget, [&](std::span<const Spin> s, std::span<const double> dots) {
    double w = 1.0;
    for (int mu = 0; mu < M; ++mu) {
      const int F = output_from_dots(problem.spec,
                                     dots.subspan(static_cast<std::size_t>(mu) * K, K), scale);
      w *= factor_weight(problem, beta, problem.observed[mu], F);
      if (w == 0.0) break;
    }
    if (w == 0.0) return;
    total_w += w;
    for (int i = 0; i < N; ++i) spin_w[i] += w * s[i];
  });

  if (total_w <= 0.0) throw std::runtime_error("exact_marginals: zero partition function");
  std::vector<double> m(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) m[i] = spin_w[i] / total_w;
  return m;
}

SpinVector exhaustive_lc_encode(const Problem& problem, EnumerationBudget budget) {
  if (problem.task != Task::Lc) throw std::invalid_argument("exhaustive_lc_encode: LC problems only");
  const Codebook& X = *problem.codebook;
  const int N = X.cols(), M = X.rows(), K = X.blocks();
  const double scale = std::sqrt(static_cast<double>(K) / N);

  long best_bad = M + 1;
  std::vector<Spin> best;

  auto lex_smaller = [N](std::span<const Spin> a, const std::vector<Spin>& b) {
    for (int i = 0; i < N; ++i)
      if (a[i] != b[i]) return a[i] > b[i];  // +1 sorts before -1
    return false;
  };

  enumerate_states(problem, budget, [&](std::span<const Spin> s, std::span<const double> dots) {
    long bad = 0;
    for (int mu = 0; mu < M; ++mu) {
      const int F = output_from_dots(problem.spec,
                                     dots.subspan(static_cast<std::size_t>(mu) * K, K), scale);
      bad += (F != problem.observed[mu]);
    }
    if (bad < best_bad || (bad == best_bad && lex_smaller(s, best))) {
      best_bad = bad;
      best.assign(s.begin(), s.end());
    }
  });

  return SpinVector(std::move(best));
}

DenseBpState full_bp_init(const Problem& problem, std::span<const double> m0) {
  problem.validate();
  const int N = problem.codebook->cols(), M = problem.codebook->rows();
  if (m0.size() != static_cast<std::size_t>(N))
    throw std::invalid_argument("full_bp_init: init length != N");
  DenseBpState st;
  st.msg.resize(static_cast<std::size_t>(M) * N);
  for (int mu = 0; mu < M; ++mu)
    for (int i = 0; i < N; ++i) st.msg[static_cast<std::size_t>(mu) * N + i] = m0[i];
  st.mhat.assign(static_cast<std::size_t>(M) * N, 0.0);
  st.marginal.assign(m0.begin(), m0.end());
  return st;
}

void full_bp_step(DenseBpState& st, const Problem& pb, const BPConfig& cfg) {
  const Codebook& X = *pb.codebook;
  const int N = X.cols(), M = X.rows(), K = X.blocks();
  const int blk = N / K;
  const double sqKN = std::sqrt(static_cast<double>(K) / N);
  const double KN = static_cast<double>(K) / N;
  constexpr double cap = 1.0 - 1e-12;

  std::vector<double> S(K), Q(K);
  std::vector<CavityField> cav(K);

  for (int mu = 0; mu < M; ++mu) {
    const auto xr = X.row(mu);
    const double* msg = st.msg.data() + static_cast<std::size_t>(mu) * N;
    for (int l = 0; l < K; ++l) {
      double sum = 0.0, sq = 0.0;
      for (int i = l * blk; i < (l + 1) * blk; ++i) {
        sum += msg[i] * xr[i];
        sq += msg[i] * msg[i];
      }
      S[l] = sqKN * sum;
      Q[l] = KN * sq;
    }
    const int y = pb.observed[mu];
    for (int i = 0; i < N; ++i) {
      const int l = i / blk;
      for (int lp = 0; lp < K; ++lp) cav[lp] = CavityField{S[lp], Q[lp]};
      cav[l].mean = S[l] - sqKN * msg[i] * xr[i];
      cav[l].q = Q[l] - KN * msg[i] * msg[i];
      const KernelOutput ko =
          pb.task == Task::Ecc
              ? kernel_ecc(pb.spec, y, l, std::span<const CavityField>(cav), pb.channel)
              : kernel_lc(pb.spec, y, l, std::span<const CavityField>(cav), cfg.beta);
      const PhiGain pg = phi_and_gain(ko, cfg.v_floor);
      double mh = sqKN * xr[i] * pg.phi;
      if (mh > cap) mh = cap;
      if (mh < -cap) mh = -cap;
      st.mhat[static_cast<std::size_t>(mu) * N + i] = mh;
    }
  }

  // variable-side update with the inertia prior on the previous marginals
  std::vector<double> tsum(static_cast<std::size_t>(N), 0.0);
  for (int mu = 0; mu < M; ++mu) {
    const double* mh = st.mhat.data() + static_cast<std::size_t>(mu) * N;
    for (int i = 0; i < N; ++i) tsum[i] += std::atanh(mh[i]);
  }
  for (int i = 0; i < N; ++i)
    if (cfg.gamma > 0.0) tsum[i] += std::atanh(cfg.gamma * st.marginal[i]);

  for (int mu = 0; mu < M; ++mu) {
    double* msg = st.msg.data() + static_cast<std::size_t>(mu) * N;
    const double* mh = st.mhat.data() + static_cast<std::size_t>(mu) * N;
    for (int i = 0; i < N; ++i) {
      double v = std::tanh(tsum[i] - std::atanh(mh[i]));
      msg[i] = v > cap ? cap : (v < -cap ? -cap : v);
    }
  }
  for (int i = 0; i < N; ++i) {
    double v = std::tanh(tsum[i]);
    st.marginal[i] = v > cap ? cap : (v < -cap ? -cap : v);
  }
  ++st.t;
}

McKernelEstimate mc_kernel_oracle(const NetworkSpec& spec, Task task, int y, int target,
                                  std::span<const CavityField> fields,
                                  const ChannelParams& ch, double beta, std::size_t samples,
                                  RandomStream& rs, double h) {
  spec.validate();
  if (fields.size() != static_cast<std::size_t>(spec.K))
    throw std::invalid_argument("mc_kernel_oracle: branch count != K");
  if (samples < 10000) throw std::invalid_argument("mc_kernel_oracle: need >= 1e4 samples");
  const int K = spec.K;
  const CavityField& tf = fields[target];
  const double sig_t = std::sqrt(1.0 - tf.q);

  // P(target unit = +1) as a function of the expansion variable lambda
  auto p_plus = [&](double lam) {
    if (spec.kind == NetworkKind::CTO) return gauss_H(-(tf.mean + lam) / sig_t);
    return 1.0 - gauss_H((spec.k + tf.mean + lam) / sig_t) -
           gauss_H((spec.k - tf.mean - lam) / sig_t);
  };
  const double pp0 = p_plus(0.0);
  const double pph = p_plus(h);
  const double ppmh = p_plus(-h);

  auto weight = [&](int F) {
    if (task == Task::Ecc)
      return 0.5 + 0.5 * y * ((1.0 - ch.r - ch.p) * F + (ch.r - ch.p));
    const double eb = std::exp(-beta);
    return eb + (1.0 - eb) * (y * F >= 0 ? 1.0 : 0.0);
  };

  auto combine = [&](int tau, int other_sum, int other_prod) {
    switch (spec.kind) {
      case NetworkKind::PTH: return tau * other_prod;
      case NetworkKind::CTH: return sgn(static_cast<double>(tau + other_sum));
      case NetworkKind::CTO:
        return transfer_fk((tau + other_sum) / std::sqrt(static_cast<double>(K)), spec.k);
    }
    return 0;
  };

  double v_sum = 0.0, v_sq = 0.0, u_sum = 0.0, u_sq = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    int other_sum = 0, other_prod = 1;
    for (int l = 0; l < K; ++l) {
      if (l == target) continue;
      const double v = fields[l].mean + std::sqrt(1.0 - fields[l].q) * rs.normal();
      const int b = spec.kind == NetworkKind::CTO ? sgn(v) : transfer_fk(v, spec.k);
      other_sum += b;
      other_prod *= b;
    }
    const double g_plus = weight(combine(1, other_sum, other_prod));
    const double g_minus = weight(combine(-1, other_sum, other_prod));
    const double v0 = pp0 * g_plus + (1.0 - pp0) * g_minus;
    const double u0 = ((pph - ppmh) / (2.0 * h)) * (g_plus - g_minus);
    v_sum += v0;
    v_sq += v0 * v0;
    u_sum += u0;
    u_sq += u0 * u0;
  }
  const double n = static_cast<double>(samples);
  McKernelEstimate est;
  est.V = v_sum / n;
  est.U = u_sum / n;
  est.V_stderr = std::sqrt(std::max(0.0, v_sq / n - est.V * est.V) / n);
  est.U_stderr = std::sqrt(std::max(0.0, u_sq / n - est.U * est.U) / n);
  return est;
}

}  // namespace mlpc
