// Acceptance gate: twelve end-to-end behavioral criteria, one PASS/FAIL line
// each. The process exit status is the number of failed criteria, so a zero
// exit is the green light.
//
// Criteria 1-3 solve batches of randomized instances against independent
// oracles and pool every solve; criteria 4-6 then audit the pooled traces,
// Collatz-Wielandt brackets, and the eigenvalue / orbit-growth / Bonsall
// chain on that same pool. Criteria 7-12 are standalone property batteries.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conewise/certificates.hpp"
#include "conewise/cone.hpp"
#include "conewise/operators.hpp"
#include "conewise/oracles.hpp"
#include "conewise/solver.hpp"
#include "support.hpp"

namespace conewise {
namespace {

using testing::Rng;
using testing::random_family_member;
using testing::random_interior;
using testing::random_maxplus_weights;
using testing::random_positive_matrix;

/// Accumulates individual checks for one criterion and keeps the first
/// failure's description for the verdict line.
struct Gate {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first.empty()) first = what;
    }
  }

  bool pass() const { return failures == 0; }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

/// Every instance solved by criteria 1-3, kept for the pooled audits.
struct Solved {
  OperatorSpec spec;
  EigenSolveResult res;
  bool primitive_linear = false;
  std::string label;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OperatorSpec identity_spec(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return OperatorSpec{LinearNonneg{Matrix(n, std::move(e))}};
}

// --- 1. linear agreement ---------------------------------------------------

Gate criterion_linear(std::vector<Solved>& pool, double& elapsed) {
  Gate gate;
  Rng rng(1001);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 5);
    Matrix m = random_positive_matrix(rng, n);
    OperatorSpec spec{LinearNonneg{m}};
    EigenSolveResult res = eigen_solve(spec);
    const std::string label = "linear #" + std::to_string(i) + " (n=" + std::to_string(n) + ")";
    gate.expect(res.converged, label + ": solver did not converge");
    const PowerBracket b = power_bracket(m);
    const double mid = 0.5 * (b.lower + b.upper);
    gate.expect(b.closed, label + ": oracle bracket did not close");
    gate.expect(std::abs(res.radius - mid) <= 1e-8 * mid,
                label + ": radius " + fmt(res.radius) + " vs bracket midpoint " + fmt(mid));
    if (n == 2) {
      const double root = perron_2x2(m);
      gate.expect(std::abs(res.radius - root) <= 1e-10 * root,
                  label + ": radius " + fmt(res.radius) + " vs closed form " + fmt(root));
    }
    pool.push_back({std::move(spec), std::move(res), true, label});
  }
  elapsed = seconds_since(t0);
  gate.expect(elapsed < 10.0, "batch took " + fmt(elapsed) + " s, budget 10 s");
  return gate;
}

// --- 2. max-plus agreement -------------------------------------------------

Gate criterion_maxplus(std::vector<Solved>& pool, double& elapsed) {
  Gate gate;
  Rng rng(1002);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 5);
    const double density = 0.5 + 0.25 * static_cast<double>(i % 3);
    MaxPlusConjugate op(n, random_maxplus_weights(rng, n, density));
    const double mean = karp_cycle_mean(op);
    OperatorSpec spec{std::move(op)};
    EigenSolveResult res = eigen_solve(spec);
    const std::string label = "maxplus #" + std::to_string(i) + " (n=" + std::to_string(n) + ")";
    if (!std::isfinite(mean)) {
      // No cycle can use a finite row set here only if the orbit dies; the
      // generator forces a finite entry per row, so the mean is always finite.
      gate.expect(false, label + ": oracle produced -inf on a row-finite instance");
      continue;
    }
    const double oracle = std::exp(mean);
    gate.expect(std::abs(res.radius - oracle) <= 1e-8 * oracle,
                label + ": radius " + fmt(res.radius) + " vs cycle-mean oracle " + fmt(oracle));
    pool.push_back({std::move(spec), std::move(res), false, label});
  }
  elapsed = seconds_since(t0);
  gate.expect(elapsed < 10.0, "batch took " + fmt(elapsed) + " s, budget 10 s");
  return gate;
}

// --- 3. family attainment --------------------------------------------------

Gate criterion_families(std::vector<Solved>& pool) {
  Gate gate;
  Rng rng(1003);
  for (int i = 0; i < 50; ++i) {
    std::vector<Matrix> members;
    const std::size_t count = 2 + static_cast<std::size_t>(i % 2);
    for (std::size_t a = 0; a < count; ++a) members.push_back(random_family_member(rng, 4));
    OperatorSpec spec{SupFamily{std::move(members)}};
    const AttainmentReport rep = family_attainment(spec, {}, 1e-8);
    const std::string label = "sup family #" + std::to_string(i);
    gate.expect(rep.radius_matches, label + ": radius " + fmt(rep.solve.radius) +
                                        " vs policy optimum " + fmt(rep.enumeration.optimum));
    gate.expect(rep.witness_optimal,
                label + ": witness policy root " + fmt(rep.witness_root) + " is not optimal");
    pool.push_back({std::move(spec), rep.solve, false, label});
  }
  for (int i = 0; i < 50; ++i) {
    std::vector<Matrix> members;
    const std::size_t count = 2 + static_cast<std::size_t>(i % 2);
    for (std::size_t a = 0; a < count; ++a) members.push_back(random_family_member(rng, 4));
    OperatorSpec spec{InfFamily{std::move(members)}};
    const InfFamilyReport rep = family_cw_inf(spec, {}, 1e-8);
    const std::string label = "inf family #" + std::to_string(i);
    gate.expect(rep.value_matches, label + ": value " + fmt(rep.solve.radius) +
                                       " vs member minimum " + fmt(rep.enumeration.optimum));
    gate.expect(rep.interior, label + ": eigenvector is not interior");
    pool.push_back({std::move(spec), rep.solve, false, label});
  }
  return gate;
}

// --- 4. monotone regularization trace ---------------------------------------

Gate criterion_monotone_trace(const std::vector<Solved>& pool) {
  Gate gate;
  for (const Solved& s : pool) {
    for (std::size_t k = 0; k + 1 < s.res.trace.size(); ++k) {
      gate.expect(s.res.trace[k + 1].lambda <= s.res.trace[k].lambda + 1e-11,
                  s.label + ": trace rises " + fmt(s.res.trace[k].lambda) + " -> " +
                      fmt(s.res.trace[k + 1].lambda) + " at stage " + std::to_string(k));
    }
  }
  return gate;
}

// --- 5. Collatz-Wielandt bracketing ------------------------------------------

Gate criterion_cw_bracket(const std::vector<Solved>& pool) {
  Gate gate;
  for (const Solved& s : pool) {
    if (s.res.eigvec.is_interior()) {
      const ConeVector hx = apply(s.spec, s.res.eigvec);
      const double lo = lower_ratio(s.res.eigvec, hx).value;
      const double hi = upper_ratio(s.res.eigvec, hx).value;
      gate.expect(lo <= s.res.radius + 1e-8, s.label + ": lower ratio " + fmt(lo) +
                                                 " above radius " + fmt(s.res.radius));
      gate.expect(s.res.radius <= hi + 1e-8, s.label + ": radius " + fmt(s.res.radius) +
                                                 " above upper ratio " + fmt(hi));
    }
    if (s.primitive_linear) {
      const double width = s.res.bracket_hi - s.res.bracket_lo;
      gate.expect(width < 1e-8, s.label + ": final bracket width " + fmt(width));
    }
  }
  return gate;
}

// --- 6. eigenvalue <= growth <= Bonsall chain --------------------------------

Gate criterion_radius_chain(const std::vector<Solved>& pool) {
  Gate gate;
  for (const Solved& s : pool) {
    if (!s.res.converged) continue;  // agreement is promised after convergence
    const std::size_t n = dimension(s.spec);
    const GrowthEstimate growth = growth_rate(s.spec, ConeVector::ones(n), 5000);
    const double bonsall = bonsall_estimate(s.spec, 100000000);
    const double scale = std::max(1.0, s.res.radius);
    gate.expect(s.res.radius <= growth.value + 1e-9 * scale,
                s.label + ": eigenvalue " + fmt(s.res.radius) + " above orbit growth " +
                    fmt(growth.value));
    gate.expect(growth.value <= bonsall + 1e-9 * scale,
                s.label + ": orbit growth " + fmt(growth.value) + " above Bonsall estimate " +
                    fmt(bonsall));
    gate.expect(std::abs(growth.value - s.res.radius) <= 1e-6 * scale,
                s.label + ": growth " + fmt(growth.value) + " vs radius " + fmt(s.res.radius));
    gate.expect(std::abs(bonsall - s.res.radius) <= 1e-6 * scale,
                s.label + ": Bonsall " + fmt(bonsall) + " vs radius " + fmt(s.res.radius));
  }
  return gate;
}

// --- 7. interior-shift contraction bound -------------------------------------

Gate criterion_contraction(std::size_t instances, std::size_t pairs_per_instance) {
  Gate gate;
  Rng rng(1007);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t inst = 0; inst < instances; ++inst) {
    const std::size_t n = 2 + inst % 4;
    const SliceConfig slice = SliceConfig::sup_norm(n);
    const double s = 0.05 + 0.5 * unif(rng);
    const ConeVector u = random_interior(rng, n, 0.5);
    const ConeVector v = project_to_slice(slice, random_interior(rng, n, 0.7));
    const double R = 0.3 + unif(rng);
    std::vector<double> su = u.coords();
    for (double& c : su) c *= s;
    const double M0 = upper_ratio(ConeVector(su), v).value;
    const ContractionEstimate est = contraction_constant(R, M0);
    gate.expect(est.c > 0.0 && est.c < 1.0,
                "instance " + std::to_string(inst) + ": c = " + fmt(est.c) + " not in (0,1)");

    const OperatorSpec psi{Perturbed{make_operator(identity_spec(n)), s, u, slice}};
    std::uniform_real_distribution<double> offset(-0.5 * R, 0.5 * R);
    for (std::size_t pair = 0; pair < pairs_per_instance; ++pair) {
      std::vector<double> xa = v.coords(), xb = v.coords();
      for (std::size_t i = 0; i < n; ++i) {
        xa[i] *= std::exp(offset(rng));
        xb[i] *= std::exp(offset(rng));
      }
      const ConeVector x = project_to_slice(slice, ConeVector(xa));
      const ConeVector y = project_to_slice(slice, ConeVector(xb));
      const double before = hilbert_dist(x, y);
      const double after = hilbert_dist(apply(psi, x), apply(psi, y));
      gate.expect(after <= (est.c + 1e-12) * before,
                  "instance " + std::to_string(inst) + ": factor " +
                      fmt(before > 0 ? after / before : 0.0) + " exceeds bound " + fmt(est.c));
    }
  }
  return gate;
}

// --- 8. shifted order-ratio inequality ---------------------------------------

Gate criterion_ratio_shift(std::size_t trials) {
  Gate gate;
  Rng rng(1008);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const ConeVector u = random_interior(rng, n, 1.5);
    const ConeVector x = random_interior(rng, n, 1.5);
    std::vector<double> yv = random_interior(rng, n, 1.5).coords();
    if (trial % 3 == 0) yv[trial % n] = 0.0;  // boundary y keeps every ratio finite
    const ConeVector y(yv);
    const double m_yx = upper_ratio(x, y).value;
    const double m_xu = upper_ratio(u, x).value;
    std::vector<double> xu(n), yu(n);
    for (std::size_t i = 0; i < n; ++i) {
      xu[i] = x[i] + u[i];
      yu[i] = y[i] + u[i];
    }
    const double lhs = upper_ratio(ConeVector(xu), ConeVector(yu)).value;
    const double rhs = (std::max(m_yx, 1.0) * m_xu + 1.0) / (m_xu + 1.0);
    gate.expect(lhs <= rhs + 1e-12, "trial " + std::to_string(trial) + ": " + fmt(lhs) +
                                        " > " + fmt(rhs));
  }
  return gate;
}

// --- 9. metric suite and nonexpansiveness ------------------------------------

std::vector<OperatorSpec> variant_zoo(Rng& rng) {
  std::vector<OperatorSpec> zoo;
  zoo.push_back(OperatorSpec{LinearNonneg{random_positive_matrix(rng, 3)}});
  zoo.push_back(OperatorSpec{SupFamily{{random_family_member(rng, 3), random_family_member(rng, 3)}}});
  zoo.push_back(OperatorSpec{InfFamily{{random_family_member(rng, 3), random_family_member(rng, 3)}}});
  MinMax mm;
  mm.rows.resize(3);
  std::uniform_real_distribution<double> entry(0.1, 1.1);
  for (auto& actions : mm.rows) {
    actions.resize(2);
    for (auto& opponents : actions) {
      opponents.resize(2);
      for (auto& row : opponents) {
        row.resize(3);
        for (double& v : row) v = entry(rng);
      }
    }
  }
  zoo.push_back(OperatorSpec{mm});
  zoo.push_back(OperatorSpec{MaxPlusConjugate(3, random_maxplus_weights(rng, 3, 0.7))});
  const ConeVector ones3 = ConeVector::ones(3);
  zoo.push_back(OperatorSpec{Perturbed{make_operator(zoo.front()), 0.25, ones3,
                                       SliceConfig::unit_norm(ones3)}});
  zoo.push_back(OperatorSpec{Power{make_operator(zoo.front()), 3}});
  return zoo;
}

Gate criterion_metric_suite(std::size_t rounds) {
  Gate gate;
  Rng rng(1009);
  const std::size_t n = 3;
  const SliceConfig slice = SliceConfig::sup_norm(n);
  for (std::size_t round = 0; round < rounds; ++round) {
    const std::string tag = "round " + std::to_string(round);
    const ConeVector x = random_interior(rng, n, 1.2);
    const ConeVector y = random_interior(rng, n, 1.2);
    const ConeVector z = random_interior(rng, n, 1.2);

    // Symmetry in both metrics.
    gate.expect(std::abs(hilbert_dist(x, y) - hilbert_dist(y, x)) <= 1e-12, tag + ": d not symmetric");
    gate.expect(std::abs(thompson_dist(x, y) - thompson_dist(y, x)) <= 1e-12,
                tag + ": d-bar not symmetric");
    // Triangle inequality.
    gate.expect(hilbert_dist(x, z) <= hilbert_dist(x, y) + hilbert_dist(y, z) + 1e-10,
                tag + ": d triangle violated");
    gate.expect(thompson_dist(x, z) <= thompson_dist(x, y) + thompson_dist(y, z) + 1e-10,
                tag + ": d-bar triangle violated");
    // Projective invariance of the Hilbert metric; Thompson is invariant under
    // scaling both points together.
    std::vector<double> tx = x.coords();
    for (double& c : tx) c *= 3.25;
    std::vector<double> ty = y.coords();
    for (double& c : ty) c *= 3.25;
    gate.expect(std::abs(hilbert_dist(ConeVector(tx), y) - hilbert_dist(x, y)) <= 1e-10,
                tag + ": d not projective");
    gate.expect(
        std::abs(thompson_dist(ConeVector(tx), ConeVector(ty)) - thompson_dist(x, y)) <= 1e-10,
        tag + ": d-bar not scale invariant");
    // Half-d <= d-bar <= d on a common slice.
    const ConeVector xs = project_to_slice(slice, x);
    const ConeVector ys = project_to_slice(slice, y);
    const double hs = hilbert_dist(xs, ys);
    const double ts = thompson_dist(xs, ys);
    gate.expect(0.5 * hs <= ts + 1e-12, tag + ": d-bar below d/2 on the slice");
    gate.expect(ts <= hs + 1e-12, tag + ": d-bar above d on the slice");
    // Nonexpansiveness of one zoo variant per round, both metrics.
    const std::vector<OperatorSpec> zoo = variant_zoo(rng);
    const OperatorSpec& spec = zoo[round % zoo.size()];
    const ConeVector hx = apply(spec, x);
    const ConeVector hy = apply(spec, y);
    gate.expect(hilbert_dist(hx, hy) <= hilbert_dist(x, y) + 1e-11,
                tag + ": variant " + std::to_string(round % zoo.size()) + " expands d");
    gate.expect(thompson_dist(hx, hy) <= thompson_dist(x, y) + 1e-11,
                tag + ": variant " + std::to_string(round % zoo.size()) + " expands d-bar");
  }
  return gate;
}

// --- 10. whole-space radius --------------------------------------------------

Gate criterion_whole_space(std::size_t instances) {
  Gate gate;
  Rng rng(1010);
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 2 + i % 3;
    std::vector<Matrix> members;
    const std::size_t count = 2 + i % 2;
    for (std::size_t a = 0; a < count; ++a) members.push_back(random_family_member(rng, n));
    const OperatorSpec sup_spec{SupFamily{members}};
    const OperatorSpec ws{WholeSpace{make_operator(sup_spec)}};
    const std::string tag = "instance " + std::to_string(i);

    const WholeSpaceRadius wsr = whole_space_radius(ws);
    gate.expect(wsr.r_x == std::max(wsr.r_plus, wsr.r_minus), tag + ": r_x is not the max");

    // Oracle for the positive side: best policy of the sup family. The
    // negative-side restriction of a sup family is the inf family over the
    // same members, whose value is the worst policy.
    const PolicyEnumeration plus = policy_enumeration(sup_spec);
    const PolicyEnumeration minus = policy_enumeration(restrict_to_negative_cone(ws));
    const double scale = std::max(1.0, plus.optimum);
    gate.expect(std::abs(wsr.r_plus - plus.optimum) <= 1e-6 * scale,
                tag + ": positive side " + fmt(wsr.r_plus) + " vs oracle " + fmt(plus.optimum));
    gate.expect(std::abs(wsr.r_minus - minus.optimum) <= 1e-6 * scale,
                tag + ": negative side " + fmt(wsr.r_minus) + " vs oracle " + fmt(minus.optimum));
    // Convexity corollary: the negative side never exceeds the positive side.
    gate.expect(wsr.r_minus <= wsr.r_plus + 1e-9 * scale,
                tag + ": negative side " + fmt(wsr.r_minus) + " above positive side " +
                    fmt(wsr.r_plus));
  }
  return gate;
}

// --- 11. uniqueness dichotomy --------------------------------------------------

Gate criterion_uniqueness(std::size_t instances) {
  Gate gate;
  Rng rng(1011);
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 2 + i % 3;
    std::vector<Matrix> members;
    const std::size_t count = 2 + i % 2;
    for (std::size_t a = 0; a < count; ++a) members.push_back(random_family_member(rng, n));
    const OperatorSpec ws_raw{WholeSpace{make_operator(OperatorSpec{SupFamily{members}})}};
    const double r_raw = whole_space_radius(ws_raw).r_x;
    const std::string tag = "instance " + std::to_string(i);
    const bool contractive = i % 2 == 0;
    const double target = contractive ? 0.5 : 1.0;

    std::vector<Matrix> scaled = members;
    for (Matrix& m : scaled)
      for (double& e : m.a) e *= target / r_raw;
    const OperatorSpec ws{WholeSpace{make_operator(OperatorSpec{SupFamily{std::move(scaled)}})}};
    const UniquenessReport rep = uniqueness_contraction_check(ws, {}, 7000 + i);

    if (contractive) {
      gate.expect(rep.checked_decay, tag + ": subcritical branch did not run (r_x = " +
                                         fmt(rep.r_x) + ")");
      gate.expect(rep.decay_ok, tag + ": orbit decay rate " + fmt(rep.worst_rate) +
                                    " exceeds r_x + 1e-4 = " + fmt(rep.r_x + 1e-4));
    } else {
      gate.expect(rep.has_witness, tag + ": no eigenvector witness at r_x = " + fmt(rep.r_x));
      gate.expect(rep.witness_residual < 1e-8,
                  tag + ": witness residual " + fmt(rep.witness_residual));
    }
  }
  return gate;
}

// --- 12. periodic-orbit join ---------------------------------------------------

Gate criterion_join(std::size_t cycles, std::size_t blocks) {
  Gate gate;
  Rng rng(1012);
  std::uniform_real_distribution<double> log_weight(-1.0, 1.0);

  // Weighted cyclic permutations: the n-th power of the map scales every
  // vector by the product of the cycle weights, so any interior point is an
  // eigenvector of that power.
  for (std::size_t i = 0; i < cycles; ++i) {
    const std::size_t n = 3 + i % 4;
    std::vector<double> entries(n * n, 0.0);
    double log_prod = 0.0;
    for (std::size_t row = 0; row < n; ++row) {
      const double a = std::exp(log_weight(rng));
      entries[row * n + (row + 1) % n] = a;
      log_prod += std::log(a);
    }
    const OperatorSpec spec{LinearNonneg{Matrix(n, std::move(entries))}};
    const double r = std::exp(log_prod / static_cast<double>(n));
    const ConeVector x = random_interior(rng, n, 0.8);
    const ConeVector z = super_eigen_join(spec, x, n, r);
    const CertVerdict v = check_super(spec, {z, r, 1e-10});
    gate.expect(v.pass, "cycle " + std::to_string(i) + ": " +
                            (v.detail.empty() ? "join rejected" : v.detail));
  }

  // Random imprimitive two-block form: the square maps the first block
  // through the product of the two off-diagonal blocks, whose certified
  // Perron vector seeds an exact periodic point.
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t k = 2 + i % 2;
    const Matrix a = random_positive_matrix(rng, k);
    const Matrix b = random_positive_matrix(rng, k);
    Matrix ab(k, std::vector<double>(k * k, 0.0));
    for (std::size_t r0 = 0; r0 < k; ++r0)
      for (std::size_t c0 = 0; c0 < k; ++c0)
        for (std::size_t t = 0; t < k; ++t) ab.at(r0, c0) += a.at(r0, t) * b.at(t, c0);
    const PowerBracket pb = power_bracket(ab, 1e-13, 500000);
    const std::string tag = "two-block " + std::to_string(i);
    gate.expect(pb.closed, tag + ": block-product bracket did not close");
    const double r = std::sqrt(0.5 * (pb.lower + pb.upper));

    const std::size_t n = 2 * k;
    std::vector<double> entries(n * n, 0.0);
    for (std::size_t r0 = 0; r0 < k; ++r0)
      for (std::size_t c0 = 0; c0 < k; ++c0) {
        entries[r0 * n + (k + c0)] = a.at(r0, c0);
        entries[(k + r0) * n + c0] = b.at(r0, c0);
      }
    const OperatorSpec spec{LinearNonneg{Matrix(n, std::move(entries))}};
    std::vector<double> start(n, 0.0);
    for (std::size_t t = 0; t < k; ++t) start[t] = pb.x[t];
    const ConeVector z = super_eigen_join(spec, ConeVector(start), 2, r);
    const CertVerdict v = check_super(spec, {z, r, 1e-10});
    gate.expect(v.pass,
                tag + ": " + (v.detail.empty() ? "join rejected" : v.detail));
  }
  return gate;
}

// --- driver -------------------------------------------------------------------

int report(int id, const std::string& text, const Gate& gate, const std::string& extra = "") {
  if (gate.pass()) {
    std::printf("PASS  %2d. %s (%zu checks%s)\n", id, text.c_str(), gate.checks, extra.c_str());
    return 0;
  }
  std::printf("FAIL  %2d. %s (%zu of %zu checks failed; first: %s)\n", id, text.c_str(),
              gate.failures, gate.checks, gate.first.c_str());
  return 1;
}

}  // namespace
}  // namespace conewise

int main() {
  using namespace conewise;
  std::vector<Solved> pool;
  int failures = 0;
  double t1 = 0.0, t2 = 0.0;

  const Gate g1 = criterion_linear(pool, t1);
  failures += report(1, "linear radius agrees with the certified power bracket on 200 instances",
                     g1, ", " + fmt(t1) + " s");
  const Gate g2 = criterion_maxplus(pool, t2);
  failures += report(2, "max-plus radius agrees with the cycle-mean oracle on 100 instances", g2,
                     ", " + fmt(t2) + " s");
  failures += report(3, "family radius is attained by an enumerated policy, sup and inf",
                     criterion_families(pool));
  failures += report(4, "regularized eigenvalue trace is monotone nonincreasing on every solve",
                     criterion_monotone_trace(pool));
  failures += report(5, "Collatz-Wielandt ratios bracket every interior solve; linear brackets close",
                     criterion_cw_bracket(pool));
  failures += report(6, "eigenvalue, orbit growth, and Bonsall estimate agree in order and value",
                     criterion_radius_chain(pool));
  failures += report(7, "interior-shift contraction factor stays within its closed-form bound",
                     criterion_contraction(20, 50));
  failures += report(8, "shifted order-ratio inequality holds on random triples",
                     criterion_ratio_shift(10000));
  failures += report(9, "metric axioms and operator nonexpansiveness hold across the variant zoo",
                     criterion_metric_suite(1000));
  failures += report(10, "whole-space radius equals the larger one-sided radius, oracle-validated",
                      criterion_whole_space(30));
  failures += report(11, "subcritical maps contract all orbits; critical maps yield a witness",
                      criterion_uniqueness(30));
  failures += report(12, "periodic-orbit join produces a verified super-eigenvector",
                      criterion_join(10, 10));

  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures;
}
