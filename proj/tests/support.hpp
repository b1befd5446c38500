#pragma once

// Hand-rolled generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fpforge/space.hpp"

namespace fpforge::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  /// Log-uniform positive magnitude.
  double magnitude(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  std::vector<double> gaussian_vector(std::size_t d, double scale = 1.0) {
    std::vector<double> v(d);
    for (double& x : v) x = scale * normal();
    return v;
  }

  GridFunction gaussian_function(const Grid& grid, std::size_t dim, double scale = 1.0) {
    GridFunction u(grid, dim);
    for (double& x : u.values()) x = scale * normal();
    return u;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline GridFunction constant(const Grid& grid, double c) {
  return GridFunction::sample(grid, [c](double) { return c; });
}

}  // namespace fpforge::testing
