#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace mlpc {

using Spin = std::int8_t;  // strictly +1 or -1

// Non-empty vector of Ising spins. Block l of K is the contiguous slice
// [l*N/K, (l+1)*N/K); callers that pass K must ensure K divides the length.
class SpinVector {
 public:
  explicit SpinVector(std::vector<Spin> values) : v_(std::move(values)) {
    if (v_.empty()) throw std::invalid_argument("SpinVector: empty");
    for (Spin s : v_)
      if (s != 1 && s != -1) throw std::invalid_argument("SpinVector: element not +-1");
  }

  static SpinVector filled(std::size_t n, Spin s) {
    if (n == 0) throw std::invalid_argument("SpinVector: empty");
    return SpinVector(std::vector<Spin>(n, s));
  }

  std::size_t size() const { return v_.size(); }
  Spin operator[](std::size_t i) const { return v_[i]; }
  Spin& operator[](std::size_t i) { return v_[i]; }

  std::span<const Spin> values() const { return v_; }

  std::size_t block_len(int K) const {
    if (K <= 0 || v_.size() % static_cast<std::size_t>(K) != 0)
      throw std::invalid_argument("SpinVector: K does not divide length");
    return v_.size() / static_cast<std::size_t>(K);
  }

  std::span<const Spin> block(int K, int l) const {
    const std::size_t len = block_len(K);
    return std::span<const Spin>(v_.data() + static_cast<std::size_t>(l) * len, len);
  }

  void negate_block(int K, int l) {
    const std::size_t len = block_len(K);
    for (std::size_t i = 0; i < len; ++i) v_[static_cast<std::size_t>(l) * len + i] *= -1;
  }

  SpinVector negated() const {
    std::vector<Spin> out(v_);
    for (Spin& s : out) s *= -1;
    return SpinVector(std::move(out));
  }

  bool operator==(const SpinVector& o) const { return v_ == o.v_; }

 private:
  std::vector<Spin> v_;
};

inline double overlap(const SpinVector& a, const SpinVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap: length mismatch");
  long long acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long long>(a[i]) * b[i];
  return static_cast<double>(acc) / static_cast<double>(a.size());
}

// Mean over blocks of |overlap(a_l, b_l)|; invariant under per-block sign flips.
inline double blockwise_abs_overlap(const SpinVector& a, const SpinVector& b, int K) {
  if (a.size() != b.size()) throw std::invalid_argument("blockwise_abs_overlap: length mismatch");
  const std::size_t len = a.block_len(K);
  (void)b.block_len(K);
  double acc = 0.0;
  for (int l = 0; l < K; ++l) {
    long long d = 0;
    const std::size_t off = static_cast<std::size_t>(l) * len;
    for (std::size_t i = 0; i < len; ++i) d += static_cast<long long>(a[off + i]) * b[off + i];
    acc += std::fabs(static_cast<double>(d) / static_cast<double>(len));
  }
  return acc / K;
}

inline double hamming_distortion(const SpinVector& y, const SpinVector& yhat) {
  if (y.size() != yhat.size()) throw std::invalid_argument("hamming_distortion: length mismatch");
  std::size_t bad = 0;
  for (std::size_t i = 0; i < y.size(); ++i) bad += (y[i] != yhat[i]);
  return static_cast<double>(bad) / static_cast<double>(y.size());
}

}  // namespace mlpc
