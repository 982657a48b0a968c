#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace mpland {

/// SplitMix64 finalizer, used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 keyed by (seed, stream). Distributions are implemented here
/// rather than through <random> so draws are identical across standard
/// libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  /// Uniform integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

  template <class T>
  void shuffle(std::span<T> v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }
  template <class C>
  void shuffle(C& c) {
    shuffle(std::span<typename C::value_type>(c.data(), c.size()));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mpland
