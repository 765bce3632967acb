#pragma once

// Deterministic generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace catenoid::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::vector<double> uniforms(int count, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return v;
}

}  // namespace catenoid::testing
