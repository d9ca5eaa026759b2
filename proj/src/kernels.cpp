#include "mlpc/kernels.hpp"

namespace mlpc {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Neumaier compensated accumulator; keeps the tau sums independent of
// enumeration order to near machine precision.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

struct TauSums {
  double su = 0.0;  // sum with the target-branch sign pulled out
  double sv = 0.0;  // plain weighted sum
};

// Enumerates all 2^K states of the dummy unit variables. `out` maps the sum
// of the units to the output weight (sign for ECC, step function for LC).
template <typename OutFn>
TauSums cth_tau_sums(std::span<const BranchTerms> br, int target, OutFn out) {
  const int K = static_cast<int>(br.size());
  Kahan su, sv;
  for (unsigned mask = 0; mask < (1u << K); ++mask) {
    int sum = 0;
    int tau_t = 1;
    double prod_all = 1.0, prod_others = 1.0;
    for (int l = 0; l < K; ++l) {
      const int tau = (mask >> l) & 1u ? 1 : -1;
      sum += tau;
      const double pl = tau > 0 ? br[l].p_plus : 1.0 - br[l].p_plus;
      prod_all *= pl;
      if (l == target)
        tau_t = tau;
      else
        prod_others *= pl;
    }
    const double w = out(sum);
    sv.add(w * prod_all);
    su.add(tau_t * w * prod_others);
  }
  return TauSums{su.value(), sv.value()};
}

// Same enumeration for the CTO, whose units are sign functions and whose
// output applies f_k to the scaled unit sum. `out` maps f in {-1,+1}.
template <typename OutFn>
TauSums cto_tau_sums(const NetworkSpec& spec, std::span<const BranchTerms> br, int target,
                     OutFn out) {
  const int K = static_cast<int>(br.size());
  const double inv_root_k = 1.0 / std::sqrt(static_cast<double>(K));
  Kahan su, sv;
  for (unsigned mask = 0; mask < (1u << K); ++mask) {
    int sum = 0;
    int tau_t = 1;
    double prod_all = 1.0, prod_others = 1.0;
    for (int l = 0; l < K; ++l) {
      const int tau = (mask >> l) & 1u ? 1 : -1;
      sum += tau;
      const double pl = tau > 0 ? br[l].p_plus : 1.0 - br[l].p_plus;
      prod_all *= pl;
      if (l == target)
        tau_t = tau;
      else
        prod_others *= pl;
    }
    const int f = transfer_fk(sum * inv_root_k, spec.k);
    const double w = out(f);
    sv.add(w * prod_all);
    su.add(tau_t * w * prod_others);
  }
  return TauSums{su.value(), sv.value()};
}

void check_args(const NetworkSpec& spec, int y, int target, std::size_t branches) {
  if (branches != static_cast<std::size_t>(spec.K))
    throw std::invalid_argument("kernel: branch count != K");
  if (target < 0 || target >= spec.K) throw std::invalid_argument("kernel: bad target index");
  if (y != 1 && y != -1) throw std::invalid_argument("kernel: y must be +-1");
}

}  // namespace

BranchTerms prepare_branch(const NetworkSpec& spec, const CavityField& cav) {
  if (!(cav.q >= 0.0 && cav.q < 1.0))
    throw std::invalid_argument("prepare_branch: q must be in [0,1)");
  BranchTerms b;
  b.q = cav.q;
  b.sigma = std::sqrt(1.0 - cav.q);
  if (spec.kind == NetworkKind::CTO) {
    b.w = cav.mean / b.sigma;
    b.p_plus = gauss_H(-b.w);
  } else {
    const double inv = 1.0 / b.sigma;
    b.w_plus = (spec.k + cav.mean) * inv;
    b.w_minus = (spec.k - cav.mean) * inv;
    b.e_plus = std::exp(-0.5 * b.w_plus * b.w_plus);
    b.e_minus = std::exp(-0.5 * b.w_minus * b.w_minus);
    // grouped so the value is bit-identical under a w+ <-> w- swap
    b.inside = 1.0 - 2.0 * (gauss_H(b.w_plus) + gauss_H(b.w_minus));
    double pp = 0.5 * (1.0 + b.inside);
    b.p_plus = pp < 0.0 ? 0.0 : (pp > 1.0 ? 1.0 : pp);
  }
  return b;
}

KernelOutput kernel_ecc(const NetworkSpec& spec, int y, int target,
                        std::span<const BranchTerms> branches, const ChannelParams& ch) {
  check_args(spec, y, target, branches.size());
  const double one_m_rp = 1.0 - ch.r - ch.p;
  const double r_m_p = ch.r - ch.p;
  const BranchTerms& t = branches[target];
  KernelOutput out;
  switch (spec.kind) {
    case NetworkKind::PTH: {
      double prod_others = 1.0;
      for (int l = 0; l < spec.K; ++l)
        if (l != target) prod_others *= branches[l].inside;
      out.V = 0.5 + 0.5 * y * r_m_p + 0.5 * y * one_m_rp * prod_others * t.inside;
      // The exponential difference shared by U and U~ is cancelled
      // algebraically, so w+ == w- does not produce 0/0.
      const double pref = y * one_m_rp * kInvSqrt2Pi / t.sigma * prod_others;
      out.U = pref * (t.e_plus - t.e_minus);
      out.U_tilde = pref * (t.w_plus * t.e_plus + t.w_minus * t.e_minus) / t.sigma;
      break;
    }
    case NetworkKind::CTH: {
      const TauSums s =
          cth_tau_sums(branches, target, [](int sum) { return sum >= 0 ? 1.0 : -1.0; });
      out.V = 0.5 + 0.5 * y * r_m_p + 0.5 * y * one_m_rp * s.sv;
      const double pref = 0.5 * y * one_m_rp * kInvSqrt2Pi / t.sigma * s.su;
      out.U = pref * (t.e_plus - t.e_minus);
      out.U_tilde = pref * (t.w_plus * t.e_plus + t.w_minus * t.e_minus) / t.sigma;
      break;
    }
    case NetworkKind::CTO: {
      const TauSums s =
          cto_tau_sums(spec, branches, target, [](int f) { return static_cast<double>(f); });
      out.V = 0.5 + 0.5 * y * r_m_p + 0.5 * y * one_m_rp * s.sv;
      const double gauss = std::exp(-0.5 * t.w * t.w);
      out.U = 0.5 * y * one_m_rp * kInvSqrt2Pi / t.sigma * gauss * s.su;
      out.U_tilde = t.w * out.U / t.sigma;
      break;
    }
  }
  out.V_tilde = -out.U;
  return out;
}

KernelOutput kernel_lc(const NetworkSpec& spec, int y, int target,
                       std::span<const BranchTerms> branches, double beta) {
  check_args(spec, y, target, branches.size());
  if (!(beta > 0.0)) throw std::invalid_argument("kernel_lc: beta must be positive");
  const double eb = std::exp(-beta);
  const double one_m_eb = 1.0 - eb;
  const BranchTerms& t = branches[target];
  KernelOutput out;
  switch (spec.kind) {
    case NetworkKind::PTH: {
      double prod_others = 1.0;
      for (int l = 0; l < spec.K; ++l)
        if (l != target) prod_others *= branches[l].inside;
      out.V = eb + one_m_eb * (0.5 + 0.5 * y * prod_others * t.inside);
      const double pref = y * one_m_eb * kInvSqrt2Pi / t.sigma * prod_others;
      out.U = pref * (t.e_plus - t.e_minus);
      out.U_tilde = pref * (t.w_plus * t.e_plus + t.w_minus * t.e_minus) / t.sigma;
      break;
    }
    case NetworkKind::CTH: {
      // theta(y * sum); K is odd so the unit sum never vanishes
      const TauSums s = cth_tau_sums(branches, target,
                                     [y](int sum) { return y * sum >= 0 ? 1.0 : 0.0; });
      out.V = eb + one_m_eb * s.sv;
      const double pref = one_m_eb * kInvSqrt2Pi / t.sigma * s.su;
      out.U = pref * (t.e_plus - t.e_minus);
      out.U_tilde = pref * (t.w_plus * t.e_plus + t.w_minus * t.e_minus) / t.sigma;
      break;
    }
    case NetworkKind::CTO: {
      const TauSums s =
          cto_tau_sums(spec, branches, target, [y](int f) { return y * f >= 0 ? 1.0 : 0.0; });
      out.V = eb + one_m_eb * s.sv;
      const double gauss = std::exp(-0.5 * t.w * t.w);
      out.U = one_m_eb * kInvSqrt2Pi / t.sigma * gauss * s.su;
      out.U_tilde = t.w * out.U / t.sigma;
      break;
    }
  }
  out.V_tilde = -out.U;
  return out;
}

namespace {
std::vector<BranchTerms> prepare_all(const NetworkSpec& spec,
                                     std::span<const CavityField> fields) {
  std::vector<BranchTerms> b(fields.size());
  for (std::size_t l = 0; l < fields.size(); ++l) b[l] = prepare_branch(spec, fields[l]);
  return b;
}
}  // namespace

KernelOutput kernel_ecc(const NetworkSpec& spec, int y, int target,
                        std::span<const CavityField> fields, const ChannelParams& ch) {
  const auto b = prepare_all(spec, fields);
  return kernel_ecc(spec, y, target, std::span<const BranchTerms>(b), ch);
}

KernelOutput kernel_lc(const NetworkSpec& spec, int y, int target,
                       std::span<const CavityField> fields, double beta) {
  const auto b = prepare_all(spec, fields);
  return kernel_lc(spec, y, target, std::span<const BranchTerms>(b), beta);
}

}  // namespace mlpc
