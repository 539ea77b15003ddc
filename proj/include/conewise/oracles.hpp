#pragma once

// Reference computations kept deliberately independent of the solver:
// closed-form 2x2 Perron roots, max-plus cycle means by dynamic programming,
// Collatz-Wielandt power brackets, and brute-force policy enumeration for
// rowwise families.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "conewise/cone.hpp"
#include "conewise/operators.hpp"

namespace conewise {

/// Perron root of a nonnegative 2x2 matrix [[a, b], [c, d]]:
/// (a + d + sqrt((a-d)^2 + 4bc)) / 2.
inline double perron_2x2(double a, double b, double c, double d) {
  for (double v : {a, b, c, d})
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("perron_2x2: entries must be finite and nonnegative");
  return 0.5 * ((a + d) + std::sqrt((a - d) * (a - d) + 4.0 * b * c));
}

inline double perron_2x2(const Matrix& m) {
  if (m.n != 2) throw std::invalid_argument("perron_2x2: matrix must be 2x2");
  return perron_2x2(m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
}

/// Maximum cycle mean of the weighted digraph with arc weights w_ij in
/// R union {-inf}. Classical dynamic program D_k(v) = best weight of a
/// k-arc walk ending at v (every vertex seeded at weight 0, which covers
/// graphs that are not strongly connected), finished with the
/// max-over-v min-over-k correction. Returns -inf when the graph is acyclic.
inline double karp_cycle_mean(std::size_t n, const std::vector<double>& weights) {
  if (n == 0 || weights.size() != n * n)
    throw std::invalid_argument("karp_cycle_mean: weight count does not match dimension");
  bool any_finite = false;
  for (double w : weights) {
    if (std::isnan(w) || w == kInf)
      throw std::invalid_argument("karp_cycle_mean: weights must be finite or -inf");
    any_finite = any_finite || std::isfinite(w);
  }
  if (!any_finite) return -kInf;

  // d[k][v], k = 0..n. Any n-arc walk revisits a vertex, so cycles are seen.
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(n, -kInf));
  d[0].assign(n, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t v = 0; v < n; ++v) {
      double best = -kInf;
      for (std::size_t u = 0; u < n; ++u) {
        const double w = weights[v * n + u];  // arc u -> v in the map's orientation
        if (w == -kInf || d[k - 1][u] == -kInf) continue;
        best = std::max(best, d[k - 1][u] + w);
      }
      d[k][v] = best;
    }
  }

  double result = -kInf;
  for (std::size_t v = 0; v < n; ++v) {
    if (d[n][v] == -kInf) continue;
    double worst = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      if (d[k][v] == -kInf) continue;
      worst = std::min(worst, (d[n][v] - d[k][v]) / static_cast<double>(n - k));
    }
    result = std::max(result, worst);
  }
  return result;
}

inline double karp_cycle_mean(const MaxPlusConjugate& op) { return karp_cycle_mean(op.n, op.weights); }

/// exp of the cycle mean, with exp(-inf) = 0; the spectral radius of the
/// conjugated map.
inline double karp_radius(const MaxPlusConjugate& op) {
  const double mean = karp_cycle_mean(op);
  return std::isfinite(mean) ? std::exp(mean) : 0.0;
}

struct PowerBracket {
  double lower = 0.0;
  double upper = kInf;
  bool closed = false;   // upper - lower < tol at termination
  bool stalled = false;  // iteration budget exhausted before closing
  std::size_t iters = 0;
  std::vector<double> x;  // final normalized iterate
};

/// Collatz-Wielandt bracket refined along the power orbit of A from x0 > 0.
/// Lower bounds min_i (Ax)_i/x_i certify the root from below at any nonzero
/// iterate; upper bounds max_i (Ax)_i/x_i certify from above only at interior
/// iterates (boundary sub-invariance certifies nothing), so the running upper
/// tightens only while the orbit stays strictly positive. Primitive matrices
/// close the bracket; reducible or imprimitive ones may stall, and the stalled
/// bracket is returned flagged.
inline PowerBracket power_bracket(const Matrix& m, const std::vector<double>& x0, double tol,
                                  std::size_t max_iter) {
  require_nonneg(m, "power_bracket");
  const std::size_t n = m.n;
  if (x0.size() != n) throw std::invalid_argument("power_bracket: start dimension mismatch");
  for (double v : x0)
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("power_bracket: start must be strictly positive");

  PowerBracket out;
  std::vector<double> x = x0;
  std::vector<double> y(n);
  for (std::size_t k = 0; k < max_iter; ++k) {
    detail::matvec(m, x, y);
    double lo = kInf, hi = 0.0, norm = 0.0;
    bool interior = true;
    for (std::size_t i = 0; i < n; ++i) {
      norm = std::max(norm, y[i]);
      if (x[i] > 0.0) {
        const double r = y[i] / x[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      } else {
        interior = false;
        if (y[i] > 0.0) hi = kInf;  // mass escapes the support, no upper info
      }
    }
    out.iters = k + 1;
    out.lower = std::max(out.lower, lo);
    if (interior) out.upper = std::min(out.upper, hi);
    if (norm == 0.0) {
      // Orbit died: the last nonzero iterate is an eigenvector for root 0.
      out.lower = 0.0;
      out.upper = std::min(out.upper, 0.0);
      out.closed = true;
      out.x = x;
      return out;
    }
    if (out.upper - out.lower < tol) {
      out.closed = true;
      out.x = y;
      for (double& v : out.x) v /= norm;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  out.stalled = true;
  out.x = x;
  return out;
}

inline PowerBracket power_bracket(const Matrix& m, double tol = 1e-12, std::size_t max_iter = 200000) {
  return power_bracket(m, std::vector<double>(m.n, 1.0), tol, max_iter);
}

/// Rowwise member choice, one entry per row: the pointwise realization of a
/// family's index set.
using PolicyIndex = std::vector<std::size_t>;

struct PolicyEnumeration {
  double optimum = 0.0;
  PolicyIndex argopt;        // first policy in lexicographic order achieving it
  std::size_t policy_count = 0;
  bool all_closed = true;    // every per-policy bracket closed (n > 2 path)
};

namespace detail {

inline double policy_root(const Matrix& m, double tol, bool& closed) {
  if (m.n == 2) {
    closed = true;
    return perron_2x2(m);
  }
  // The first iterate starts interior, so the running upper bound is finite.
  const PowerBracket b = power_bracket(m, tol, 200000);
  closed = b.closed;
  return 0.5 * (b.lower + b.upper);
}

}  // namespace detail

/// Brute-force optimum of the Perron root over all rowwise policies of a
/// sup or inf family: max for sup, min for inf. Enumeration is lexicographic
/// and ties keep the first policy seen. Guarded at 10^6 policies.
inline PolicyEnumeration policy_enumeration(const OperatorSpec& spec, double tol = 1e-12) {
  const std::vector<Matrix>* members = nullptr;
  bool maximize = true;
  if (const auto* sup = std::get_if<SupFamily>(&spec.node)) {
    members = &sup->members;
  } else if (const auto* inf = std::get_if<InfFamily>(&spec.node)) {
    members = &inf->members;
    maximize = false;
  } else {
    throw std::invalid_argument("policy_enumeration: spec must be a sup or inf family");
  }
  const std::size_t n = members->front().n;
  const std::size_t a = members->size();

  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<double>(a);
    if (total > 1e6) throw std::invalid_argument("policy_enumeration: more than 10^6 policies");
  }

  PolicyEnumeration out;
  out.policy_count = static_cast<std::size_t>(total);
  PolicyIndex policy(n, 0);
  Matrix composite(n, std::vector<double>(n * n, 0.0));
  bool first = true;
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) composite.at(i, j) = (*members)[policy[i]].at(i, j);
    bool closed = true;
    const double root = detail::policy_root(composite, tol, closed);
    out.all_closed = out.all_closed && closed;
    if (first || (maximize ? root > out.optimum : root < out.optimum)) {
      out.optimum = root;
      out.argopt = policy;
      first = false;
    }
    // Advance lexicographically: last row fastest.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++policy[i] < a) break;
      policy[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace conewise
