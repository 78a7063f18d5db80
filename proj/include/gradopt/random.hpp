#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

#include "gradopt/box.hpp"

namespace gradopt {

// splitmix64 step (Vigna). Used for seed mixing only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Stable hash of a seed plus an index path. Used to derive independent
/// child seeds (per run, per stream) from a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = seed;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t p : path) {
    state = out ^ (p + 0x9e3779b97f4a7c15ull);
    out = splitmix64(state);
  }
  return out;
}

/// Deterministic random stream: std::mt19937_64 raw output with explicit
/// transforms. uniform01 maps the top 53 bits to [0,1); Gaussian draws use
/// Box-Muller on two uniforms. The sequence of values is a function of the
/// seed and the call sequence alone, on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller; generates pairs, caches the spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so log(u1) is finite.
    double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  Eigen::VectorXd normal_vector(Eigen::Index d) {
    Eigen::VectorXd u(d);
    for (Eigen::Index i = 0; i < d; ++i) u[i] = normal();
    return u;
  }

  Eigen::VectorXd uniform_in(const Box& box) {
    Eigen::VectorXd x(box.dim());
    for (Eigen::Index i = 0; i < box.dim(); ++i) {
      x[i] = uniform(box.lower()[i], box.upper()[i]);
    }
    return x;
  }

  /// Uniform integer in [0, n) by rejection on the top bits (no modulo bias).
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = gen_() & mask;
      if (v < n) return v;
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gradopt
