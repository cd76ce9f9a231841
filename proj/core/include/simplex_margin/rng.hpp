#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace simplex_margin {

/// Seedable random stream with a fixed substream-splitting rule.
///
/// The engine is mt19937_64; all variate transforms are implemented here
/// (not via std:: distributions) so that a given (seed, call sequence)
/// yields the same values on any platform. Substreams are derived by
/// hashing the parent seed with a list of integer tags: each consumer of
/// randomness (a dataset, a feature map, an experiment cell) owns one
/// substream keyed by its identity, never a shared engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}

  /// Derives an independent stream from this stream's seed and `tags`.
  /// Pure in (seed, tags): derivation does not depend on values already
  /// drawn from the parent.
  [[nodiscard]] Rng substream(std::initializer_list<std::uint64_t> tags) const {
    std::uint64_t s = seed_;
    for (std::uint64_t t : tags) {
      s = mix(s ^ (t + 0x9e3779b97f4a7c15ULL));
    }
    return Rng(s);
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0,1], keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  /// Uniform integer in [0,n), unbiased (rejects the wrap-around range).
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t nn = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - nn) % nn;  // 2^64 mod n
    std::uint64_t x = eng_();
    while (x < threshold) x = eng_();
    return static_cast<std::size_t>(x % nn);
  }

  /// Uniform point on the probability simplex (exponential spacings).
  std::vector<double> simplex_point(int t) {
    std::vector<double> p(static_cast<std::size_t>(t));
    double sum = 0.0;
    for (auto& v : p) {
      v = -std::log(1.0 - uniform01());
      sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
  }

 private:
  // splitmix64 finalizer; also the seed hash for substreams
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace simplex_margin
