#pragma once

// Spectral radius and nonlinear eigenpair computation for order-preserving
// positively homogeneous self-maps of the positive cone.
//
// eigen_solve follows the regularized descent: for each s in a decreasing
// schedule, the perturbed map h_s(x) = h(x) + s q(h(x)) u has a unique
// normalized fixed point x_s with eigenvalue lambda_s = q(h_s(x_s)), found by
// fixed-point iteration on the slice; lambda_s decreases to the cone spectral
// radius as s drops. A refinement stage then polishes the answer with plain
// power steps, running Collatz-Wielandt brackets (certified bounds at every
// iterate), projective period detection, and the join construction
// z = x v h(x)/rho v ... v h^{p-1}(x)/rho^{p-1}, which closes orbits that are
// projectively periodic rather than convergent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conewise/cone.hpp"
#include "conewise/operators.hpp"

namespace conewise {

struct SolverConfig {
  enum class Schedule { Harmonic, Geometric };

  Schedule schedule = Schedule::Harmonic;  // s_k = 1/k, or 2^-k for Geometric
  std::size_t max_outer = 60;
  double inner_tol = 1e-12;  // Hilbert-metric stop on consecutive inner iterates
  double outer_tol = 1e-10;  // stop on |lambda_k - lambda_{k+1}|
  std::size_t max_inner = 100000;
  std::optional<ConeVector> unit;     // default: all ones
  std::optional<SliceConfig> gauge;   // default: u-norm of the unit (sup-norm)

  // Refinement stage knobs.
  std::size_t refine_max_steps = 50000;
  std::size_t refine_period_max = 64;
  double target_width = 1e-10;  // relative bracket width treated as closed
};

struct TraceRow {
  double s = 0.0;
  double lambda = 0.0;
  std::size_t inner_iters = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
};

struct EigenSolveResult {
  double radius = 0.0;
  ConeVector eigvec;        // gauge-normalized
  double residual = 0.0;    // ||h(x) - radius x||_inf / ||x||_inf at eigvec
  std::vector<TraceRow> trace;
  double bracket_lo = 0.0;  // ratios of h(x)/x at the returned eigvec
  double bracket_hi = 0.0;
  bool converged = false;
  std::vector<std::string> flags;

  bool has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
  }
};

struct InnerSolveResult {
  ConeVector x;        // slice-normalized near-fixed point of g_s
  double lambda = 0.0; // q(h_s(x)) there
  std::size_t iters = 0;
  bool converged = false;
  double residual = 0.0;  // ||h_s(x) - lambda x||_inf
};

/// Contraction data of the interior-pushing normalization on a Hilbert ball
/// of radius R around v, where M0 bounds v against the unit:
/// mu = 1/(e^R M0 + 1), c = log(mu + (1-mu) e^{2R}) / (2R), and 0 < c < 1.
struct ContractionEstimate {
  double R = 0.0;
  double M0 = 0.0;
  double mu = 0.0;
  double c = 0.0;
};

inline ContractionEstimate contraction_constant(double R, double M0) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("contraction_constant: R must be positive");
  if (!(M0 > 0.0) || !std::isfinite(M0)) throw std::invalid_argument("contraction_constant: M0 must be positive");
  ContractionEstimate est;
  est.R = R;
  est.M0 = M0;
  est.mu = 1.0 / (std::exp(R) * M0 + 1.0);
  // c = log(mu + (1-mu) e^{2R}) / (2R), evaluated as
  // 1 + log1p(mu (e^{-2R} - 1)) / (2R) to stay accurate for small R.
  est.c = 1.0 + std::log1p(est.mu * std::expm1(-2.0 * R)) / (2.0 * R);
  return est;
}

/// Upper Collatz-Wielandt bound at an interior point: h(u) <= cw_upper * u.
inline double cw_upper(const OperatorSpec& spec, const ConeVector& u) {
  if (!u.is_interior()) throw std::invalid_argument("cw_upper: point must be interior");
  return upper_ratio(u, apply(spec, u)).value;
}

namespace detail {

inline double sup_norm_raw(const std::vector<double>& v) {
  double best = 0.0;
  for (double c : v) best = std::max(best, std::abs(c));
  return best;
}

/// Hilbert distance between two strictly positive raw vectors.
inline double hilbert_raw(const std::vector<double>& x, const std::vector<double>& y) {
  double hi = 0.0, lo = kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] / x[i];
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return std::log(hi) - std::log(lo);
}

/// Collatz-Wielandt ratios of y against x over the support of x.
/// hi is +inf when y has mass outside the support of x.
struct RatioPair {
  double lo = kInf;
  double hi = 0.0;
  bool interior = true;  // x strictly positive
};

inline RatioPair cw_ratios(const std::vector<double>& x, const std::vector<double>& y) {
  RatioPair out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      const double r = y[i] / x[i];
      out.lo = std::min(out.lo, r);
      out.hi = std::max(out.hi, r);
    } else {
      out.interior = false;
      if (y[i] > 0.0) out.hi = kInf;
    }
  }
  if (out.lo == kInf) out.lo = 0.0;  // x was zero; callers guard against this
  return out;
}

inline bool all_zero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
}

}  // namespace detail

/// Growth-rate estimate of one orbit: exp of a Cesaro average of the log
/// increments of the renormalized iteration, taken over the tail half of the
/// horizon and aligned to the orbit's projective period when one is detected
/// (otherwise periodic norm oscillations would bias a plain tail mean).
struct GrowthEstimate {
  double value = 0.0;
  bool hit_zero = false;
  std::vector<double> step_ratios;  // per-step sup-norm growth factors
};

inline GrowthEstimate growth_rate(const OperatorSpec& spec, const ConeVector& x0, std::size_t horizon) {
  if (!cone_domain(spec)) throw std::invalid_argument("growth_rate: spec must be cone-domain");
  if (horizon < 2) throw std::invalid_argument("growth_rate: horizon must be at least 2");
  if (x0.size() != dimension(spec)) throw std::invalid_argument("growth_rate: dimension mismatch");
  if (x0.is_zero()) throw std::invalid_argument("growth_rate: start must be nonzero");

  GrowthEstimate out;
  out.step_ratios.reserve(horizon);
  std::vector<double> x = x0.coords();
  {
    const double nrm = detail::sup_norm_raw(x);
    for (double& c : x) c /= nrm;
  }
  std::vector<double> logs;
  logs.reserve(horizon);
  const std::size_t ring_cap = 65;
  std::deque<std::vector<double>> ring;

  for (std::size_t k = 0; k < horizon; ++k) {
    std::vector<double> y = detail::apply_raw(spec, x);
    const double gamma = detail::sup_norm_raw(y);
    out.step_ratios.push_back(gamma);
    if (gamma == 0.0) {
      out.value = 0.0;
      out.hit_zero = true;
      return out;
    }
    for (double& c : y) c /= gamma;
    logs.push_back(std::log(gamma));
    x = std::move(y);
    ring.push_back(x);
    if (ring.size() > ring_cap) ring.pop_front();
  }

  // Tail window: the later half of the horizon.
  std::size_t window = horizon - horizon / 2;
  // Smallest projective period visible at the end of the orbit.
  std::size_t period = 0;
  for (std::size_t p = 1; p + 1 <= ring.size() && p <= 64; ++p) {
    const std::vector<double>& prev = ring[ring.size() - 1 - p];
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - prev[i]));
    if (d <= 1e-12) {
      period = p;
      break;
    }
  }
  if (period > 0 && window >= period) window -= window % period;
  double mean = 0.0;
  for (std::size_t k = horizon - window; k < horizon; ++k) mean += logs[k];
  mean /= static_cast<double>(window);
  out.value = std::exp(mean);
  return out;
}

/// Bonsall-style upper estimate: min over k <= k_max of ||h^k||_C^{1/k}.
/// The cone operator norm of h^k is ||h^k(1)||_inf (order preservation plus
/// homogeneity), so one renormalized orbit of the all-ones vector suffices.
/// Once that orbit stabilizes -- a fixed direction or an exact projective
/// period, which make the log increments repeat -- the remaining k are
/// evaluated in closed form instead of stepping them one at a time.
inline double bonsall_estimate(const OperatorSpec& spec, std::size_t k_max) {
  if (!cone_domain(spec)) throw std::invalid_argument("bonsall_estimate: spec must be cone-domain");
  if (k_max == 0) throw std::invalid_argument("bonsall_estimate: k_max must be at least 1");
  const std::size_t n = dimension(spec);
  std::vector<double> x(n, 1.0);
  double log_sum = 0.0;
  double best = kInf;
  const std::size_t ring_cap = 65;
  std::deque<std::pair<std::vector<double>, double>> ring;  // (normalized iterate, log_sum)

  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<double> y = detail::apply_raw(spec, x);
    const double gamma = detail::sup_norm_raw(y);
    if (gamma == 0.0) return 0.0;
    for (double& c : y) c /= gamma;
    log_sum += std::log(gamma);
    best = std::min(best, std::exp(log_sum / static_cast<double>(k)));
    x = std::move(y);

    for (std::size_t p = 1; p <= ring.size(); ++p) {
      const auto& [prev, prev_log] = ring[ring.size() - p];
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(x[i] - prev[i]));
      if (d <= 1e-14) {
        // Exact repetition: log increments now advance by delta per step.
        const double delta = (log_sum - prev_log) / static_cast<double>(p);
        const double tail = (log_sum + delta * static_cast<double>(k_max - k)) / static_cast<double>(k_max);
        return std::min(best, std::exp(tail));
      }
    }
    ring.emplace_back(x, log_sum);
    if (ring.size() > ring_cap) ring.pop_front();
  }
  return best;
}

/// Fixed-point iteration for the regularized map on the slice: starting from
/// the unit, iterate x -> normalize(h(x) + s q(h(x)) u) until the Hilbert
/// distance between consecutive iterates is below inner_tol and the remaining
/// error, estimated from the observed contraction ratio, is too. A cap hit
/// returns the last iterate unconverged.
inline InnerSolveResult regularized_inner_solve(const OperatorSpec& spec, double s, const SolverConfig& cfg) {
  if (!cone_domain(spec)) throw std::invalid_argument("regularized_inner_solve: spec must be cone-domain");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("regularized_inner_solve: s must be positive");
  const std::size_t n = dimension(spec);
  const ConeVector unit = cfg.unit.value_or(ConeVector::ones(n));
  if (unit.size() != n || !unit.is_interior())
    throw std::invalid_argument("regularized_inner_solve: unit must be interior of matching dimension");
  const SliceConfig gauge = cfg.gauge.value_or(SliceConfig::unit_norm(unit));
  if (gauge.dim() != n) throw std::invalid_argument("regularized_inner_solve: gauge dimension mismatch");

  const std::vector<double>& u = unit.coords();
  std::vector<double> x = u;
  {
    const double q = gauge.gauge(std::span<const double>(x));
    for (double& c : x) c /= q;
  }

  InnerSolveResult out;
  double prev_step = kInf;
  for (std::size_t k = 1; k <= cfg.max_inner; ++k) {
    std::vector<double> y = detail::apply_raw(spec, x);
    const double qy = gauge.gauge(std::span<const double>(y));
    if (qy == 0.0) {
      // h vanishes at an interior point, hence on the whole cone.
      out.x = ConeVector(x);
      out.lambda = 0.0;
      out.iters = k;
      out.converged = true;
      out.residual = 0.0;
      return out;
    }
    const double shift = s * qy;
    for (std::size_t i = 0; i < n; ++i) y[i] += shift * u[i];
    const double qz = gauge.gauge(std::span<const double>(y));
    for (double& c : y) c /= qz;
    const double step = detail::hilbert_raw(x, y);
    x = std::move(y);
    out.iters = k;
    if (step < cfg.inner_tol) {
      if (step == 0.0) {
        out.converged = true;
        break;
      }
      const double ratio = prev_step == kInf ? 0.0 : step / prev_step;
      if (ratio < 1.0 && step * ratio / (1.0 - ratio) <= cfg.inner_tol) {
        out.converged = true;
        break;
      }
    }
    prev_step = step;
  }

  // Evaluate lambda and the residual at the final iterate.
  std::vector<double> hx = detail::apply_raw(spec, x);
  const double qh = gauge.gauge(std::span<const double>(hx));
  for (std::size_t i = 0; i < n; ++i) hx[i] += s * qh * u[i];
  out.lambda = gauge.gauge(std::span<const double>(hx));
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(hx[i] - out.lambda * x[i]));
  out.residual = res;
  out.x = ConeVector(std::move(x));
  return out;
}

namespace detail {

struct RefineOutcome {
  std::vector<double> x;      // final iterate (sup-normalized) or eigenvector
  double best_lo = 0.0;       // certified lower bound on the radius
  double best_hi = kInf;      // certified upper bound on the radius
  bool pair_found = false;
  double pair_value = 0.0;
  bool hit_zero = false;      // orbit died; radius is exactly 0
};

/// Power steps with running certified brackets, projective period detection,
/// and the period-p join closure. Entered with an interior start.
inline RefineOutcome refine_orbit(const OperatorSpec& spec, std::vector<double> x,
                                  double lo0, double hi0, const SolverConfig& cfg) {
  RefineOutcome out;
  out.best_lo = lo0;
  out.best_hi = hi0;
  const std::size_t n = x.size();
  {
    const double nrm = sup_norm_raw(x);
    for (double& c : x) c /= nrm;
  }
  const std::size_t p_max = std::max<std::size_t>(1, cfg.refine_period_max);
  std::deque<std::pair<std::vector<double>, double>> ring;  // (iterate, log gamma at arrival)
  std::size_t skip_detect_until = 0;

  auto try_lock = [&](std::size_t p, const std::vector<double>& start, double rho) -> bool {
    // Join of one period of the orbit of `start`, scaled by the period mean.
    std::vector<double> z = start;
    std::vector<double> w = start;
    for (std::size_t i = 1; i < p; ++i) {
      w = apply_raw(spec, w);
      for (double& c : w) c /= rho;
      for (std::size_t j = 0; j < n; ++j) z[j] = std::max(z[j], w[j]);
    }
    // Monotone closure: h(z) >= rho z pushes upward to an eigenvector when
    // the period is genuine; track the eigenpair residual and bail once it
    // stops improving.
    double res = kInf;
    double best_res = kInf;
    std::size_t since_improve = 0;
    for (std::size_t t = 0; t < 5000; ++t) {
      std::vector<double> hz = apply_raw(spec, z);
      double r = 0.0, zn = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        r = std::max(r, std::abs(hz[j] - rho * z[j]));
        zn = std::max(zn, z[j]);
      }
      res = r / zn;
      if (res <= 1e-13 * std::max(1.0, rho)) break;
      if (res < best_res * 0.999) {
        best_res = res;
        since_improve = 0;
      } else if (++since_improve > 200) {
        break;  // stagnating, not a true period
      }
      for (std::size_t j = 0; j < n; ++j) z[j] = hz[j] / rho;
      // Renormalize drifting scales; the map is homogeneous.
      const double nrm = sup_norm_raw(z);
      if (nrm > 1e6 || nrm < 1e-6)
        for (double& c : z) c /= nrm;
    }
    if (res <= 1e-11 * std::max(1.0, rho)) {
      out.x = z;
      out.pair_found = true;
      out.pair_value = rho;
      // The join is a super-eigenvector throughout; keep the certificate.
      const RatioPair rp = cw_ratios(z, apply_raw(spec, z));
      out.best_lo = std::max(out.best_lo, rp.lo);
      if (rp.interior) out.best_hi = std::min(out.best_hi, rp.hi);
      return true;
    }
    // Failed lock: the join still certifies from below.
    const RatioPair rp = cw_ratios(z, apply_raw(spec, z));
    out.best_lo = std::max(out.best_lo, rp.lo);
    return false;
  };

  for (std::size_t step = 1; step <= cfg.refine_max_steps; ++step) {
    std::vector<double> y = apply_raw(spec, x);
    const RatioPair rp = cw_ratios(x, y);
    out.best_lo = std::max(out.best_lo, rp.lo);
    if (rp.interior) out.best_hi = std::min(out.best_hi, rp.hi);

    const double gamma = sup_norm_raw(y);
    if (gamma == 0.0) {
      // Orbit died at a nonzero x: h(x) = 0 = 0 * x exactly, radius 0.
      out.x = x;
      out.hit_zero = true;
      out.pair_found = true;
      out.pair_value = 0.0;
      out.best_lo = 0.0;
      out.best_hi = 0.0;
      return out;
    }
    for (double& c : y) c /= gamma;
    x = std::move(y);

    if (out.best_hi - out.best_lo <= cfg.target_width * std::max(1.0, out.best_lo)) {
      out.x = x;
      return out;
    }

    if (step >= skip_detect_until) {
      for (std::size_t p = 1; p <= ring.size() && p <= p_max; ++p) {
        const auto& [prev, log_at_prev] = ring[ring.size() - p];
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(x[i] - prev[i]));
        if (d <= 1e-13) {
          double log_rho = std::log(gamma);
          for (std::size_t i = 1; i < p; ++i) log_rho += ring[ring.size() - i].second;
          const double rho = std::exp(log_rho / static_cast<double>(p));
          if (try_lock(p, x, rho)) return out;
          skip_detect_until = step + 2 * p + 4;
          break;
        }
      }
    }
    ring.emplace_back(x, std::log(gamma));
    if (ring.size() > p_max + 1) ring.pop_front();
  }
  out.x = x;
  return out;
}

}  // namespace detail

/// Full spectral-radius solve: regularized descent along the s-schedule with
/// a per-step trace, then orbit refinement. radius is always clamped into the
/// best certified Collatz-Wielandt bracket; flags report degeneracy, an inner
/// iteration cap, or a bracket that would not close.
inline EigenSolveResult eigen_solve(const OperatorSpec& spec, const SolverConfig& cfg = {}) {
  validate(spec);
  if (!cone_domain(spec)) throw std::invalid_argument("eigen_solve: spec must be cone-domain");
  const std::size_t n = dimension(spec);
  const ConeVector unit = cfg.unit.value_or(ConeVector::ones(n));
  const SliceConfig gauge = cfg.gauge.value_or(SliceConfig::unit_norm(unit));

  EigenSolveResult out;

  // h(u) = 0 at the interior unit forces h = 0 on the whole cone.
  {
    const ConeVector image = apply(spec, unit);
    if (image.is_zero()) {
      out.radius = 0.0;
      out.eigvec = project_to_slice(gauge, unit);
      out.residual = 0.0;
      out.bracket_lo = 0.0;
      out.bracket_hi = 0.0;
      out.converged = true;
      out.flags.push_back("degenerate");
      return out;
    }
  }

  SolverConfig inner_cfg = cfg;
  inner_cfg.unit = unit;
  inner_cfg.gauge = gauge;

  double best_lo = 0.0;
  double best_hi = kInf;
  bool outer_converged = false;
  std::vector<double> x_last = unit.coords();

  double lambda_prev = kInf;
  for (std::size_t k = 1; k <= cfg.max_outer; ++k) {
    const double s = cfg.schedule == SolverConfig::Schedule::Harmonic
                         ? 1.0 / static_cast<double>(k)
                         : std::pow(2.0, -static_cast<double>(k));
    const InnerSolveResult inner = regularized_inner_solve(spec, s, inner_cfg);
    if (!inner.converged) {
      out.flags.push_back("inner iteration cap");
      break;
    }
    x_last = inner.x.coords();
    const std::vector<double> image = detail::apply_raw(spec, x_last);
    const detail::RatioPair rp = detail::cw_ratios(x_last, image);
    best_lo = std::max(best_lo, rp.lo);
    if (rp.interior) best_hi = std::min(best_hi, rp.hi);
    out.trace.push_back({s, inner.lambda, inner.iters, rp.lo, rp.interior ? rp.hi : kInf, inner.residual});
    if (lambda_prev != kInf && std::abs(inner.lambda - lambda_prev) < cfg.outer_tol) {
      outer_converged = true;
      break;
    }
    lambda_prev = inner.lambda;
  }
  const double lambda_final = out.trace.empty() ? kInf : out.trace.back().lambda;

  const detail::RefineOutcome ref = detail::refine_orbit(spec, x_last, best_lo, best_hi, cfg);
  best_lo = ref.best_lo;
  best_hi = ref.best_hi;

  double radius;
  if (ref.pair_found) {
    radius = ref.pair_value;
  } else {
    radius = std::min(lambda_final, best_hi);
  }
  radius = std::min(radius, best_hi);
  radius = std::max(radius, best_lo);

  // Final certificate bracket at the returned point.
  std::vector<double> x_final = ref.x;
  const std::vector<double> image = detail::apply_raw(spec, x_final);
  const detail::RatioPair rp = detail::cw_ratios(x_final, image);
  out.bracket_lo = rp.lo;
  out.bracket_hi = rp.hi;
  if (rp.hi >= rp.lo) radius = std::clamp(radius, rp.lo, rp.hi);
  out.radius = radius;

  ConeVector xv(x_final);
  const double q = gauge.gauge(xv);
  out.eigvec = q > 0.0 ? project_to_slice(gauge, xv) : xv;
  {
    const std::vector<double> hv = detail::apply_raw(spec, out.eigvec.coords());
    double res = 0.0, xn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res = std::max(res, std::abs(hv[i] - radius * out.eigvec[i]));
      xn = std::max(xn, out.eigvec[i]);
    }
    out.residual = res / xn;
  }

  const bool bracket_closed = best_hi - best_lo <= std::max(cfg.target_width, 1e-10) * std::max(1.0, best_lo);
  if (ref.hit_zero) out.flags.push_back("degenerate");
  if (!bracket_closed) out.flags.push_back("bracket not closed");
  out.converged = ref.hit_zero || ref.pair_found || bracket_closed || outer_converged;
  return out;
}

/// Join of one orbit period: z = x v h(x)/r v ... v h^{m-1}(x)/r^{m-1} for an
/// eigenvector x of the m-th power. Satisfies h(z) >= r z. The eigenvector
/// precondition is enforced up to tol and the violation is named.
inline ConeVector super_eigen_join(const OperatorSpec& spec, const ConeVector& x_m, std::size_t m,
                                   double r, double tol = 1e-9) {
  if (!cone_domain(spec)) throw std::invalid_argument("super_eigen_join: spec must be cone-domain");
  if (m == 0) throw std::invalid_argument("super_eigen_join: power must be at least 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("super_eigen_join: r must be positive");
  if (x_m.size() != dimension(spec)) throw std::invalid_argument("super_eigen_join: dimension mismatch");
  if (x_m.is_zero()) throw std::invalid_argument("super_eigen_join: x_m must be nonzero");

  std::vector<double> w = x_m.coords();
  for (std::size_t i = 0; i < m; ++i) w = detail::apply_raw(spec, w);
  const double rm = std::pow(r, static_cast<double>(m));
  double res = 0.0, xn = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    res = std::max(res, std::abs(w[i] - rm * x_m[i]));
    xn = std::max(xn, x_m[i]);
  }
  if (res > tol * xn) {
    std::ostringstream msg;
    msg << "super_eigen_join: x_m is not an eigenvector of the " << m
        << "-th power within tolerance; residual " << res << " exceeds " << tol * xn;
    throw std::invalid_argument(msg.str());
  }

  std::vector<double> z = x_m.coords();
  std::vector<double> orbit = x_m.coords();
  for (std::size_t j = 1; j < m; ++j) {
    orbit = detail::apply_raw(spec, orbit);
    for (double& c : orbit) c /= r;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::max(z[i], orbit[i]);
  }
  return ConeVector(std::move(z));
}

struct WholeSpaceRadius {
  double r_plus = 0.0;   // radius on the positive cone
  double r_minus = 0.0;  // radius of the negative-cone restriction
  double r_x = 0.0;      // max of the two, the whole-space radius
  EigenSolveResult side_plus;
  EigenSolveResult side_minus;
};

/// Whole-space spectral radius of a convex order-preserving map: solve the
/// positive-cone restriction and the pulled-back negative-cone restriction
/// g(y) = -h(-y), then take the larger radius.
inline WholeSpaceRadius whole_space_radius(const OperatorSpec& spec, const SolverConfig& cfg = {}) {
  const auto* ws = std::get_if<WholeSpace>(&spec.node);
  if (!ws) throw std::invalid_argument("whole_space_radius: spec must be whole-space");
  WholeSpaceRadius out;
  out.side_plus = eigen_solve(*ws->base, cfg);
  out.side_minus = eigen_solve(restrict_to_negative_cone(spec), cfg);
  out.r_plus = out.side_plus.radius;
  out.r_minus = out.side_minus.radius;
  out.r_x = std::max(out.r_plus, out.r_minus);
  return out;
}

struct UniquenessReport {
  double r_plus = 0.0;
  double r_minus = 0.0;
  double r_x = 0.0;
  bool checked_decay = false;   // the r_x < 1 branch ran
  double worst_rate = 0.0;      // largest observed tail decay rate
  bool decay_ok = false;        // worst_rate <= r_x + 1e-4
  bool has_witness = false;     // the r_x = 1 branch produced an eigenvector
  std::vector<double> witness;  // nonzero, in the cone or its negative
  double witness_residual = kInf;
};

/// Dichotomy check for whole-space maps: when r_x < 1, random orbits must
/// decay geometrically at rate about r_x (unique fixed point regime); when
/// r_x = 1, uniqueness fails along an eigenvector in the cone or its
/// negative, which is produced as a witness.
inline UniquenessReport uniqueness_contraction_check(const OperatorSpec& spec, const SolverConfig& cfg = {},
                                                     std::uint64_t seed = 1, std::size_t n_starts = 20,
                                                     std::size_t horizon = 600) {
  const WholeSpaceRadius wsr = whole_space_radius(spec, cfg);
  UniquenessReport out;
  out.r_plus = wsr.r_plus;
  out.r_minus = wsr.r_minus;
  out.r_x = wsr.r_x;
  const std::size_t n = dimension(spec);

  if (out.r_x < 1.0 - 1e-9) {
    out.checked_decay = true;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::size_t burn = horizon / 2;
    for (std::size_t t = 0; t < n_starts; ++t) {
      std::vector<double> y(n);
      double nrm = 0.0;
      do {
        for (double& c : y) c = dist(rng);
        nrm = detail::sup_norm_raw(y);
      } while (nrm == 0.0);
      for (double& c : y) c /= nrm;
      double log_rate = 0.0;
      std::size_t counted = 0;
      bool died = false;
      for (std::size_t k = 0; k < horizon; ++k) {
        y = detail::apply_raw(spec, y);
        const double g = detail::sup_norm_raw(y);
        if (g == 0.0) {
          died = true;
          break;
        }
        for (double& c : y) c /= g;
        if (k >= burn) {
          log_rate += std::log(g);
          ++counted;
        }
      }
      const double rate = died ? 0.0 : std::exp(log_rate / static_cast<double>(counted));
      out.worst_rate = std::max(out.worst_rate, rate);
    }
    out.decay_ok = out.worst_rate <= out.r_x + 1e-4;
    return out;
  }

  // r_x >= 1: non-uniqueness witness from the side achieving the max.
  const EigenSolveResult& side = wsr.r_plus >= wsr.r_minus ? wsr.side_plus : wsr.side_minus;
  const bool negative_side = wsr.r_minus > wsr.r_plus;
  out.witness.assign(side.eigvec.coords().begin(), side.eigvec.coords().end());
  if (negative_side)
    for (double& c : out.witness) c = -c;
  const std::vector<double> image = detail::apply_raw(spec, out.witness);
  double res = 0.0, wn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res = std::max(res, std::abs(image[i] - out.r_x * out.witness[i]));
    wn = std::max(wn, std::abs(out.witness[i]));
  }
  out.witness_residual = res / wn;
  out.has_witness = wn > 0.0;
  return out;
}

}  // namespace conewise
