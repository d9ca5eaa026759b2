#include "mlpc/networks.hpp"

#include <algorithm>
#include <stdexcept>

#include "mlpc/kernels.hpp"

namespace mlpc {

std::string to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::PTH: return "pth";
    case NetworkKind::CTH: return "cth";
    case NetworkKind::CTO: return "cto";
  }
  return "?";
}

NetworkKind network_kind_from_string(const std::string& s) {
  if (s == "pth" || s == "PTH") return NetworkKind::PTH;
  if (s == "cth" || s == "CTH") return NetworkKind::CTH;
  if (s == "cto" || s == "CTO") return NetworkKind::CTO;
  throw std::invalid_argument("unknown network kind: " + s);
}

void NetworkSpec::validate() const {
  if (K <= 0) throw std::invalid_argument("NetworkSpec: K must be positive");
  if (K > 15) throw std::invalid_argument("NetworkSpec: K > 15 not supported");
  if (k < 0.0) throw std::invalid_argument("NetworkSpec: threshold k must be >= 0");
  if (kind == NetworkKind::CTH && K % 2 == 0)
    throw std::invalid_argument("NetworkSpec: CTH requires an odd number of hidden units");
  if (kind == NetworkKind::CTO && K < 2)
    throw std::invalid_argument("NetworkSpec: CTO requires K >= 2");
}

Codebook::Codebook(int M, int N, int K, RandomStream& rs) : m_(M), n_(N), k_(K) {
  if (M <= 0 || N <= 0 || K <= 0) throw std::invalid_argument("Codebook: bad dimensions");
  if (N % K != 0) throw std::invalid_argument("Codebook: K must divide N");
  x_.resize(static_cast<std::size_t>(M) * N);
  for (auto& v : x_) v = static_cast<double>(rs.next_spin());
}

Codebook::Codebook(int M, int N, int K, std::vector<double> patterns)
    : m_(M), n_(N), k_(K), x_(std::move(patterns)) {
  if (M <= 0 || N <= 0 || K <= 0) throw std::invalid_argument("Codebook: bad dimensions");
  if (N % K != 0) throw std::invalid_argument("Codebook: K must divide N");
  if (x_.size() != static_cast<std::size_t>(M) * N)
    throw std::invalid_argument("Codebook: wrong pattern count");
  for (double v : x_)
    if (v != 1.0 && v != -1.0) throw std::invalid_argument("Codebook: entries must be +-1");
}

void Codebook::negate_block(int l) {
  const int len = block_len();
  for (int mu = 0; mu < m_; ++mu) {
    double* row = x_.data() + static_cast<std::size_t>(mu) * n_ + static_cast<std::size_t>(l) * len;
    for (int i = 0; i < len; ++i) row[i] = -row[i];
  }
}

std::vector<double> local_fields(std::span<const double> s, std::span<const double> x, int K) {
  const std::size_t n = s.size();
  if (x.size() != n || n == 0 || n % static_cast<std::size_t>(K) != 0)
    throw std::invalid_argument("local_fields: block mismatch");
  const std::size_t len = n / static_cast<std::size_t>(K);
  const double scale = std::sqrt(static_cast<double>(K) / static_cast<double>(n));
  std::vector<double> fields(K);
  for (int l = 0; l < K; ++l) {
    const double* sp = s.data() + static_cast<std::size_t>(l) * len;
    const double* xp = x.data() + static_cast<std::size_t>(l) * len;
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += sp[i] * xp[i];
    fields[l] = scale * acc;
  }
  return fields;
}

int forward(const NetworkSpec& spec, std::span<const double> s, std::span<const double> x) {
  const std::vector<double> fields = local_fields(s, x, spec.K);
  switch (spec.kind) {
    case NetworkKind::PTH: {
      int prod = 1;
      for (double f : fields) prod *= transfer_fk(f, spec.k);
      return prod;
    }
    case NetworkKind::CTH: {
      int sum = 0;
      for (double f : fields) sum += transfer_fk(f, spec.k);
      return sgn(static_cast<double>(sum));
    }
    case NetworkKind::CTO: {
      int sum = 0;
      for (double f : fields) sum += sgn(f);
      return transfer_fk(sum / std::sqrt(static_cast<double>(spec.K)), spec.k);
    }
  }
  throw std::logic_error("forward: bad kind");
}

Spin forward(const NetworkSpec& spec, const SpinVector& s, const SpinVector& x) {
  spec.validate();
  std::vector<double> sd(s.size()), xd(x.size());
  for (std::size_t i = 0; i < s.size(); ++i) sd[i] = s[i];
  for (std::size_t i = 0; i < x.size(); ++i) xd[i] = x[i];
  return static_cast<Spin>(forward(spec, sd, xd));
}

SpinVector encode(const NetworkSpec& spec, const SpinVector& s, const Codebook& codebook) {
  spec.validate();
  if (s.size() != static_cast<std::size_t>(codebook.cols()) || spec.K != codebook.blocks())
    throw std::invalid_argument("encode: dimension mismatch");
  std::vector<double> sd(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) sd[i] = s[i];
  std::vector<Spin> out(codebook.rows());
  for (int mu = 0; mu < codebook.rows(); ++mu)
    out[mu] = static_cast<Spin>(forward(spec, sd, codebook.row(mu)));
  return SpinVector(std::move(out));
}

double branch_prob_inside(double k) { return 1.0 - 2.0 * gauss_H(k); }

namespace {
double binom_coeff(int n, int j) {
  double c = 1.0;
  for (int t = 0; t < j; ++t) c = c * (n - t) / (t + 1);
  return c;
}
}  // namespace

double bias_given_unit_prob(const NetworkSpec& spec, double unit_prob) {
  const int K = spec.K;
  const double a = unit_prob;
  switch (spec.kind) {
    case NetworkKind::PTH:
      // product of K independent +-1 units
      return 0.5 * (1.0 + std::pow(2.0 * a - 1.0, K));
    case NetworkKind::CTH: {
      // majority of K (odd) units
      double p = 0.0;
      for (int j = K / 2 + 1; j <= K; ++j)
        p += binom_coeff(K, j) * std::pow(a, j) * std::pow(1.0 - a, K - j);
      return p;
    }
    case NetworkKind::CTO: {
      // |2B - K| / sqrt(K) <= k with B ~ Binomial(K, a)
      double p = 0.0;
      const double rootK = std::sqrt(static_cast<double>(K));
      for (int b = 0; b <= K; ++b) {
        if (std::fabs(2.0 * b - K) / rootK <= spec.k)
          p += binom_coeff(K, b) * std::pow(a, b) * std::pow(1.0 - a, K - b);
      }
      return p;
    }
  }
  throw std::logic_error("bias_given_unit_prob: bad kind");
}

double output_bias(const NetworkSpec& spec) {
  spec.validate();
  const double unit_prob =
      spec.kind == NetworkKind::CTO ? 0.5 : branch_prob_inside(spec.k);
  return bias_given_unit_prob(spec, unit_prob);
}

std::vector<double> cto_bias_atoms(int K) {
  // Cumulative symmetric-binomial mass as the window |2B-K|/sqrt(K) <= k grows.
  std::vector<double> levels;
  const double rootK = std::sqrt(static_cast<double>(K));
  std::vector<double> abs_vals;
  for (int b = 0; b <= K; ++b) abs_vals.push_back(std::fabs(2.0 * b - K) / rootK);
  std::sort(abs_vals.begin(), abs_vals.end());
  abs_vals.erase(std::unique(abs_vals.begin(), abs_vals.end()), abs_vals.end());
  for (double cut : abs_vals) {
    double p = 0.0;
    for (int b = 0; b <= K; ++b)
      if (std::fabs(2.0 * b - K) / rootK <= cut) p += binom_coeff(K, b) * std::pow(0.5, K);
    levels.push_back(p);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

}  // namespace mlpc
