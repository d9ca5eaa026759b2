#include "mlpc/channel.hpp"

#include <cmath>

#include "mlpc/kernels.hpp"

namespace mlpc {

SpinVector transmit(const SpinVector& y0, const ChannelParams& ch, RandomStream& rs) {
  ch.validate();
  std::vector<Spin> out(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double flip_prob = y0[i] > 0 ? ch.p : ch.r;
    out[i] = rs.bernoulli(flip_prob) ? static_cast<Spin>(-y0[i]) : y0[i];
  }
  return SpinVector(std::move(out));
}

SpinVector sample_source(int M, const SourceModel& src, RandomStream& rs) {
  src.validate();
  if (M <= 0) throw std::invalid_argument("sample_source: M must be positive");
  std::vector<Spin> out(static_cast<std::size_t>(M));
  for (auto& s : out) s = rs.bernoulli(src.bias) ? Spin{1} : Spin{-1};
  return SpinVector(std::move(out));
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("binary_entropy: q outside [0,1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

namespace {

double mutual_information(double b, const ChannelParams& ch) {
  // output marginal: +1 stays with prob 1-p, -1 crosses with prob r
  const double out_plus = b * (1.0 - ch.p) + (1.0 - b) * ch.r;
  return binary_entropy(out_plus) - b * binary_entropy(ch.p) - (1.0 - b) * binary_entropy(ch.r);
}

}  // namespace

CapacityPoint bac_capacity(const ChannelParams& ch) {
  ch.validate();
  // golden-section search on (0,1); I(b) is concave
  const double gr = 0.6180339887498949;
  double lo = 1e-12, hi = 1.0 - 1e-12;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = mutual_information(x1, ch);
  double f2 = mutual_information(x2, ch);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = mutual_information(x2, ch);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = mutual_information(x1, ch);
    }
  }
  const double b = 0.5 * (lo + hi);
  return CapacityPoint{mutual_information(b, ch), b};
}

double shannon_distortion(const SourceModel& src, double R) {
  src.validate();
  const double hp = binary_entropy(src.bias);
  if (!(R > 0.0)) throw std::invalid_argument("shannon_distortion: R must be positive");
  if (R > hp + 1e-12) throw std::invalid_argument("shannon_distortion: R exceeds source entropy");
  const double d_max = src.bias < 0.5 ? src.bias : 1.0 - src.bias;
  double lo = 0.0, hi = d_max;  // H2(p) - H2(D) decreases from hp to 0 on [0, d_max]
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (hp - binary_entropy(mid) > R)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double tune_threshold(const NetworkSpec& spec, double target_bias) {
  spec.validate();
  if (!(target_bias > 0.0 && target_bias <= 1.0))
    throw std::invalid_argument("tune_threshold: target bias outside (0,1]");
  constexpr double k_max = 8.0;
  constexpr double tol = 1e-9;

  NetworkSpec probe = spec;

  if (spec.kind == NetworkKind::CTO) {
    for (double k = 0.01; k <= k_max; k += 0.01) {
      probe.k = k;
      if (std::fabs(output_bias(probe) - target_bias) <= tol) return k;
    }
    throw std::invalid_argument("tune_threshold: target bias unattainable for CTO");
  }

  auto f = [&](double k) {
    probe.k = k;
    return output_bias(probe) - target_bias;
  };

  double prev_k = 0.0;
  double prev_f = f(0.0);
  if (std::fabs(prev_f) <= tol) return 0.0;
  const double step = 0.01;
  for (double k = step; k <= k_max; k += step) {
    double cur_f = f(k);
    if (std::fabs(cur_f) <= tol) return k;
    if ((prev_f < 0.0) != (cur_f < 0.0)) {
      double lo = prev_k, hi = k;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm) <= tol) return mid;
        if ((prev_f < 0.0) == (fm < 0.0))
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_k = k;
    prev_f = cur_f;
  }
  throw std::invalid_argument("tune_threshold: target bias unattainable below k_max");
}

}  // namespace mlpc
