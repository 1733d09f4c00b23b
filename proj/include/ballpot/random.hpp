#pragma once

#include <cstdint>
#include <random>

#include "ballpot/core.hpp"

namespace ballpot {

/// Seeded RNG with the sampling helpers the suites need; a fixed seed gives
/// a fixed instance stream.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }

  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  int index(int count) { return std::uniform_int_distribution<int>(0, count - 1)(gen_); }

  Vec unit_vector(int n) {
    Vec v(n);
    do {
      for (int i = 0; i < n; ++i) v(i) = gaussian();
    } while (v.norm() < 1e-12);
    return v / v.norm();
  }

  /// Uniform point in the closed ball of radius rmax.
  Vec ball_point(int n, double rmax = 1.0) {
    const double r = rmax * std::pow(uniform(0.0, 1.0), 1.0 / n);
    return r * unit_vector(n);
  }

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ballpot
