#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mlpc/spin.hpp"

namespace mlpc {

// Identifies one reproducible random stream. Streams are independent of the
// order in which they are consumed: each (master_seed, experiment, run,
// restart) tuple hashes to its own generator seed.
struct SeededStream {
  std::uint64_t master_seed = 0;
  std::uint64_t experiment = 0;
  std::uint64_t run = 0;
  std::uint64_t restart = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace detail

class RandomStream {
 public:
  explicit RandomStream(const SeededStream& id)
      : eng_(detail::splitmix64(
            detail::splitmix64(
                detail::splitmix64(detail::splitmix64(id.master_seed) ^ id.experiment) ^
                id.run) ^
            id.restart)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution, engine-output defined (portable).
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  Spin next_spin() { return (eng_() & 1ull) ? Spin{1} : Spin{-1}; }

  bool bernoulli(double prob) { return next_double() < prob; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925287 * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline SpinVector draw_uniform_spins(std::size_t n, RandomStream& rs) {
  if (n == 0) throw std::invalid_argument("draw_uniform_spins: n must be positive");
  std::vector<Spin> v(n);
  for (auto& s : v) s = rs.next_spin();
  return SpinVector(std::move(v));
}

}  // namespace mlpc
