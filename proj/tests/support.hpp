#pragma once

// Shared generators and helpers for the test suite and the acceptance gate.
// All randomness is std::mt19937_64 with fixed seeds so runs are
// reproducible; generators hand out instances in the regimes the library is
// specified for (positive matrices, max-plus weight matrices with a finite
// entry in every row, small sup/inf families).

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "conewise/cone.hpp"
#include "conewise/operators.hpp"

namespace conewise::testing {

using Rng = std::mt19937_64;

/// Dense matrix with entries uniform in [0.05, 1.05]: strictly positive,
/// hence primitive.
inline Matrix random_positive_matrix(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.05, 1.05);
  std::vector<double> a(n * n);
  for (double& v : a) v = dist(rng);
  return Matrix(n, std::move(a));
}

/// Member matrix for sup/inf families, entries uniform in [0.1, 1.1].
inline Matrix random_family_member(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.1, 1.1);
  std::vector<double> a(n * n);
  for (double& v : a) v = dist(rng);
  return Matrix(n, std::move(a));
}

/// Max-plus weight matrix: each entry finite with probability `density`
/// (weight uniform in [-1, 2]) else -inf; rows with no finite entry get one
/// forced at a random column so the map keeps the interior in the interior.
inline std::vector<double> random_maxplus_weights(Rng& rng, std::size_t n, double density) {
  std::uniform_real_distribution<double> weight(-1.0, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> w(n * n, -kInf);
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng) < density) {
        w[i * n + j] = weight(rng);
        any = true;
      }
    }
    if (!any) w[i * n + std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = weight(rng);
  }
  return w;
}

/// Strictly positive vector with coordinates e^t, t uniform in [-spread, spread].
inline ConeVector random_interior(Rng& rng, std::size_t n, double spread = 1.0) {
  std::uniform_real_distribution<double> dist(-spread, spread);
  std::vector<double> x(n);
  for (double& v : x) v = std::exp(dist(rng));
  return ConeVector(std::move(x));
}

inline bool rel_near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace conewise::testing
