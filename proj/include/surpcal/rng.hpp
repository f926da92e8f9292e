#pragma once

// Counter-based per-trial random streams. Every trial derives its generator
// from (masterSeed, gridIndex, trialIndex), so results do not depend on
// scheduling or thread count.

#include <cstdint>
#include <random>

namespace surpcal {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ splitmix64(b ^ 0xd1b54a32d192ed03ULL));
}

class Rng {
 public:
  using result_type = std::uint64_t;
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}
  Rng(std::uint64_t master, std::uint64_t grid, std::uint64_t trial)
      : gen_(mix_seed(master, grid, trial)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return gen_(); }

  double uniform() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Categorical draw from a probability vector.
  template <class V>
  std::size_t categorical(const V& probs) {
    double u = uniform();
    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < probs.size(); ++s) {
      acc += probs[s];
      if (u < acc) return s;
    }
    return probs.size() - 1;
  }

  double gamma(double shape) {
    std::gamma_distribution<double> g(shape, 1.0);
    return g(gen_);
  }

  double beta(double alpha, double beta) {
    if (alpha == 1.0 && beta == 1.0) return uniform();
    const double x = gamma(alpha);
    const double y = gamma(beta);
    const double s = x + y;
    return s > 0.0 ? x / s : 0.5;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace surpcal
