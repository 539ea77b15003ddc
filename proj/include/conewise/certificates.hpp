#pragma once

// Verifiable eigenvalue certificates: sub-eigenvectors bound the radius from
// above (interior points only), super-eigenvectors from below (any nonzero
// point), eigenpairs pin it. Family attainment checks tie a solved family
// radius to its policy-enumeration optimum and selection witness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "conewise/cone.hpp"
#include "conewise/operators.hpp"
#include "conewise/oracles.hpp"
#include "conewise/solver.hpp"

namespace conewise {

/// Claim: h(u) <= lambda u componentwise at the interior point u.
/// Boundary points are rejected outright; a boundary sub-invariance carries
/// no information about the radius.
struct SubEigenCert {
  ConeVector u;
  double lambda = 0.0;
  double tol = 1e-12;  // relative slack
};

/// Claim: h(v) >= mu v componentwise at the nonzero point v.
struct SuperEigenCert {
  ConeVector v;
  double mu = 0.0;
  double tol = 1e-12;
};

/// Claim: ||h(x) - r x||_inf <= tol ||x||_inf.
struct EigenPairCert {
  ConeVector x;
  double r = 0.0;
  double tol = 1e-9;
};

struct CertVerdict {
  bool pass = false;
  std::size_t worst_index = 0;   // most violating coordinate
  double worst_violation = 0.0;  // its signed slack (positive = violated)
  std::string detail;
};

inline CertVerdict check_sub(const OperatorSpec& spec, const SubEigenCert& cert) {
  if (cert.u.size() != dimension(spec)) throw std::invalid_argument("check_sub: dimension mismatch");
  CertVerdict out;
  if (!cert.u.is_interior()) {
    out.pass = false;
    out.detail = "point is not interior";
    return out;
  }
  const ConeVector image = apply(spec, cert.u);
  out.pass = true;
  double worst = -kInf;
  for (std::size_t i = 0; i < cert.u.size(); ++i) {
    const double bound = cert.lambda * cert.u[i];
    const double slack = image[i] - bound;  // must be <= tol * bound
    const double rel = slack - cert.tol * std::abs(bound);
    if (rel > worst) {
      worst = rel;
      out.worst_index = i;
      out.worst_violation = slack;
    }
    if (rel > 0.0) out.pass = false;
  }
  if (!out.pass)
    out.detail = "h(u) exceeds lambda*u at index " + std::to_string(out.worst_index);
  return out;
}

inline CertVerdict check_super(const OperatorSpec& spec, const SuperEigenCert& cert) {
  if (cert.v.size() != dimension(spec)) throw std::invalid_argument("check_super: dimension mismatch");
  CertVerdict out;
  if (cert.v.is_zero()) {
    out.pass = false;
    out.detail = "point is zero";
    return out;
  }
  const ConeVector image = apply(spec, cert.v);
  out.pass = true;
  double worst = -kInf;
  for (std::size_t i = 0; i < cert.v.size(); ++i) {
    const double bound = cert.mu * cert.v[i];
    const double slack = bound - image[i];  // must be <= tol * bound
    const double rel = slack - cert.tol * std::abs(bound);
    if (rel > worst) {
      worst = rel;
      out.worst_index = i;
      out.worst_violation = slack;
    }
    if (rel > 0.0) out.pass = false;
  }
  if (!out.pass)
    out.detail = "h(v) falls below mu*v at index " + std::to_string(out.worst_index);
  return out;
}

inline CertVerdict check_pair(const OperatorSpec& spec, const EigenPairCert& cert) {
  if (cert.x.size() != dimension(spec)) throw std::invalid_argument("check_pair: dimension mismatch");
  CertVerdict out;
  if (cert.x.is_zero()) {
    out.pass = false;
    out.detail = "point is zero";
    return out;
  }
  const ConeVector image = apply(spec, cert.x);
  double res = 0.0, xn = 0.0;
  for (std::size_t i = 0; i < cert.x.size(); ++i) {
    const double d = std::abs(image[i] - cert.r * cert.x[i]);
    if (d > res) {
      res = d;
      out.worst_index = i;
    }
    xn = std::max(xn, cert.x[i]);
  }
  out.worst_violation = res;
  out.pass = res <= cert.tol * xn;
  if (!out.pass)
    out.detail = "eigenpair residual " + std::to_string(res) + " exceeds tolerance";
  return out;
}

/// Sandwich a v <= x <= b u between a super- and a sub-eigenvector pins every
/// orbit growth rate into [mu, lambda]. Verifies both certificates, the
/// componentwise sandwich (a, b must exist positive), and the growth estimate.
struct SandwichReport {
  CertVerdict sub;
  CertVerdict super;
  GrowthEstimate growth;
  bool pass = false;
};

inline SandwichReport sandwich_growth(const OperatorSpec& spec, const ConeVector& x0,
                                      const SubEigenCert& sub, const SuperEigenCert& super,
                                      std::size_t horizon, double eps) {
  SandwichReport out;
  out.sub = check_sub(spec, sub);
  out.super = check_super(spec, super);
  if (x0.size() != dimension(spec)) throw std::invalid_argument("sandwich_growth: dimension mismatch");
  // a v <= x0 needs x0 positive wherever v is; x0 <= b u holds for interior u.
  if (lower_ratio(super.v, x0).value <= 0.0)
    throw std::invalid_argument("sandwich_growth: no positive a with a*v <= x exists");
  if (!upper_ratio(sub.u, x0).finite())
    throw std::invalid_argument("sandwich_growth: no finite b with x <= b*u exists");
  out.growth = growth_rate(spec, x0, horizon);
  out.pass = out.sub.pass && out.super.pass && out.growth.value >= super.mu - eps &&
             out.growth.value <= sub.lambda + eps;
  return out;
}

/// Attainment of a sup family's radius by a rowwise policy: the solved family
/// radius must match the policy-enumeration optimum, and the selection
/// witness at the family's eigenvector must induce a policy whose own Perron
/// root attains it.
struct AttainmentReport {
  EigenSolveResult solve;
  PolicyEnumeration enumeration;
  PolicyIndex witness;        // selection at the family eigenvector
  double witness_root = 0.0;  // Perron root of the induced policy matrix
  bool radius_matches = false;
  bool witness_optimal = false;
  bool pass = false;
};

inline AttainmentReport family_attainment(const OperatorSpec& spec, const SolverConfig& cfg = {},
                                          double tol = 1e-8) {
  if (!std::holds_alternative<SupFamily>(spec.node))
    throw std::invalid_argument("family_attainment: spec must be a sup family");
  AttainmentReport out;
  out.solve = eigen_solve(spec, cfg);
  out.enumeration = policy_enumeration(spec);
  const SelectionResult sel = apply_with_selection(spec, out.solve.eigvec);
  out.witness = sel.witness.choice;
  const Matrix induced = induced_matrix(spec, sel.witness);
  if (induced.n == 2) {
    out.witness_root = perron_2x2(induced);
  } else {
    const PowerBracket b = power_bracket(induced);
    out.witness_root = 0.5 * (b.lower + b.upper);
  }
  const double scale = std::max(1.0, out.enumeration.optimum);
  out.radius_matches = std::abs(out.solve.radius - out.enumeration.optimum) <= tol * scale;
  out.witness_optimal = std::abs(out.witness_root - out.enumeration.optimum) <= tol * scale;
  out.pass = out.radius_matches && out.witness_optimal;
  return out;
}

/// Inf-family counterpart: the family's Collatz-Wielandt value equals the
/// minimum of the member (policy) values. When the family's eigenvector is
/// interior this is also the family radius; a non-interior solve reports the
/// bracket only.
struct InfFamilyReport {
  EigenSolveResult solve;
  PolicyEnumeration enumeration;
  bool value_matches = false;
  bool interior = false;
  bool pass = false;
};

inline InfFamilyReport family_cw_inf(const OperatorSpec& spec, const SolverConfig& cfg = {},
                                     double tol = 1e-6) {
  if (!std::holds_alternative<InfFamily>(spec.node))
    throw std::invalid_argument("family_cw_inf: spec must be an inf family");
  InfFamilyReport out;
  out.solve = eigen_solve(spec, cfg);
  out.enumeration = policy_enumeration(spec);
  out.interior = out.solve.eigvec.is_interior();
  const double scale = std::max(1.0, out.enumeration.optimum);
  out.value_matches = std::abs(out.solve.radius - out.enumeration.optimum) <= tol * scale;
  out.pass = out.value_matches && (out.interior || !out.solve.converged ||
                                   out.solve.has_flag("bracket not closed"));
  return out;
}

}  // namespace conewise
