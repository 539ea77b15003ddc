#pragma once

// Geometry of the standard positive cone in R^n: part-wise order ratios,
// Hilbert and Thompson metrics, unit-ball norms, slice normalization and
// the lattice join. Everything here is pure and value-semantic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conewise {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A point of the closed positive cone. Coordinates are validated (finite,
/// nonnegative) and the support is cached with exact zero tests; there is no
/// epsilon-sized "almost zero" notion anywhere in the library.
class ConeVector {
 public:
  ConeVector() = default;

  explicit ConeVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("ConeVector: dimension must be at least 1");
    support_.resize(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      const double c = coords_[i];
      if (!std::isfinite(c)) throw std::invalid_argument("ConeVector: coordinate not finite");
      if (c < 0.0) throw std::invalid_argument("ConeVector: negative coordinate at index " + std::to_string(i));
      support_[i] = c > 0.0;
    }
  }

  static ConeVector ones(std::size_t n) { return ConeVector(std::vector<double>(n, 1.0)); }

  const std::vector<double>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// Exact support test: coordinate strictly positive.
  bool in_support(std::size_t i) const { return support_[i]; }

  bool is_zero() const {
    return std::none_of(support_.begin(), support_.end(), [](bool b) { return b; });
  }

  bool is_interior() const {
    return std::all_of(support_.begin(), support_.end(), [](bool b) { return b; });
  }

  bool same_support(const ConeVector& other) const {
    return support_ == other.support_;
  }

  /// support(this) included in support(other).
  bool support_within(const ConeVector& other) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (support_[i] && !other.support_[i]) return false;
    return true;
  }

 private:
  std::vector<double> coords_;
  std::vector<bool> support_;
};

/// Order ratio value in [0, +inf]. +inf is stored explicitly (no large
/// sentinel) and means "no finite bound exists".
struct ExtendedRatio {
  double value = 0.0;

  bool finite() const { return std::isfinite(value); }
  static ExtendedRatio infinite() { return {kInf}; }
};

namespace detail {

inline void require_same_dim(const ConeVector& x, const ConeVector& y, const char* where) {
  if (x.size() != y.size())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

}  // namespace detail

/// Least b with y <= b*x, i.e. max over the support of x of y_i/x_i.
/// Returns +inf when y has mass outside the support of x, 0 when y = 0.
/// x must be nonzero.
inline ExtendedRatio upper_ratio(const ConeVector& x, const ConeVector& y) {
  detail::require_same_dim(x, y, "upper_ratio");
  if (x.is_zero()) throw std::invalid_argument("upper_ratio: x must be nonzero");
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y.in_support(i)) {
      if (!x.in_support(i)) return ExtendedRatio::infinite();
      best = std::max(best, y[i] / x[i]);
    }
  }
  return {best};
}

/// Greatest a with a*x <= y, i.e. min over the support of x of y_i/x_i.
/// Always finite and nonnegative on the cone. x must be nonzero.
inline ExtendedRatio lower_ratio(const ConeVector& x, const ConeVector& y) {
  detail::require_same_dim(x, y, "lower_ratio");
  if (x.is_zero()) throw std::invalid_argument("lower_ratio: x must be nonzero");
  double best = kInf;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.in_support(i)) best = std::min(best, y[i] / x[i]);
  return {best};
}

/// Hilbert projective distance: log upper_ratio(x,y) + log upper_ratio(y,x).
/// Zero for two zero vectors by convention; +inf for vectors whose supports
/// differ (different parts of the cone).
inline double hilbert_dist(const ConeVector& x, const ConeVector& y) {
  detail::require_same_dim(x, y, "hilbert_dist");
  if (x.is_zero() && y.is_zero()) return 0.0;
  if (x.is_zero() || y.is_zero()) return kInf;
  if (!x.same_support(y)) return kInf;
  // Both ratios are finite and positive on a common support.
  return std::log(upper_ratio(x, y).value) + std::log(upper_ratio(y, x).value);
}

/// Thompson distance: max(log upper_ratio(x,y), log upper_ratio(y,x)).
/// Same conventions for zero vectors and incomparable pairs as hilbert_dist.
inline double thompson_dist(const ConeVector& x, const ConeVector& y) {
  detail::require_same_dim(x, y, "thompson_dist");
  if (x.is_zero() && y.is_zero()) return 0.0;
  if (x.is_zero() || y.is_zero()) return kInf;
  if (!x.same_support(y)) return kInf;
  return std::max(std::log(upper_ratio(x, y).value), std::log(upper_ratio(y, x).value));
}

/// Norm whose unit ball is the order interval [-u, u]: max |x_i|/u_i.
/// Defined for arbitrary real vectors; u must be interior.
inline double u_norm(const ConeVector& u, std::span<const double> x) {
  if (!u.is_interior()) throw std::invalid_argument("u_norm: unit must be interior");
  if (u.size() != x.size()) throw std::invalid_argument("u_norm: dimension mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, std::abs(x[i]) / u[i]);
  return best;
}

inline double u_norm(const ConeVector& u, const ConeVector& x) {
  return u_norm(u, std::span<const double>(x.coords()));
}

/// Normalization gauge defining the slice the solver works on: either the
/// u-norm of an interior unit or a nonnegative dual functional. Both choices
/// are order preserving and positively homogeneous on the cone.
class SliceConfig {
 public:
  enum class Kind { UnitNorm, DualFunctional };

  static SliceConfig unit_norm(ConeVector unit) {
    if (!unit.is_interior()) throw std::invalid_argument("SliceConfig: unit must be interior");
    SliceConfig cfg;
    cfg.kind_ = Kind::UnitNorm;
    cfg.dim_ = unit.size();
    cfg.unit_ = std::move(unit);
    return cfg;
  }

  /// Sup-norm slice: u-norm with the all-ones unit. The library default.
  static SliceConfig sup_norm(std::size_t n) { return unit_norm(ConeVector::ones(n)); }

  static SliceConfig dual_functional(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("SliceConfig: empty weight vector");
    bool any = false;
    for (double w : weights) {
      if (!std::isfinite(w) || w < 0.0)
        throw std::invalid_argument("SliceConfig: weights must be finite and nonnegative");
      any = any || w > 0.0;
    }
    if (!any) throw std::invalid_argument("SliceConfig: weights must not be all zero");
    SliceConfig cfg;
    cfg.kind_ = Kind::DualFunctional;
    cfg.dim_ = weights.size();
    cfg.weights_ = std::move(weights);
    return cfg;
  }

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const ConeVector& unit() const { return unit_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Gauge value q(x); q is order preserving, homogeneous, and positive on
  /// the interior.
  double gauge(std::span<const double> x) const {
    if (x.size() != dim_) throw std::invalid_argument("SliceConfig: dimension mismatch");
    if (kind_ == Kind::UnitNorm) {
      double best = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, x[i] / unit_[i]);
      return best;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += weights_[i] * x[i];
    return s;
  }

  double gauge(const ConeVector& x) const { return gauge(std::span<const double>(x.coords())); }

 private:
  Kind kind_ = Kind::UnitNorm;
  std::size_t dim_ = 0;
  ConeVector unit_;
  std::vector<double> weights_;
};

/// Rescale x so the gauge of the result is 1. Direction is preserved.
/// Rejects vectors with zero gauge (no slice representative exists).
inline ConeVector project_to_slice(const SliceConfig& cfg, const ConeVector& x) {
  const double q = cfg.gauge(x);
  if (q <= 0.0) throw std::invalid_argument("project_to_slice: gauge of x is zero");
  std::vector<double> out(x.coords());
  for (double& c : out) c /= q;
  return ConeVector(std::move(out));
}

/// Componentwise maximum, the lattice join of the cone's natural order.
inline ConeVector lattice_join(const ConeVector& x, const ConeVector& y) {
  detail::require_same_dim(x, y, "lattice_join");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], y[i]);
  return ConeVector(std::move(out));
}

}  // namespace conewise
