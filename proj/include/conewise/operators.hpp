#pragma once

// Declarative operator descriptions for order-preserving positively
// homogeneous self-maps of the positive cone, plus evaluation, selection
// witnesses, the negative-cone restriction, and the cone operator norm.
// Specs are immutable after construction; children are held through
// shared_ptr<const> so copies stay cheap.

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "conewise/cone.hpp"

namespace conewise {

/// Dense square matrix, row major.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;  // n*n entries

  Matrix() = default;
  Matrix(std::size_t dim, std::vector<double> entries) : n(dim), a(std::move(entries)) {
    if (a.size() != n * n) throw std::invalid_argument("Matrix: entry count does not match dimension");
  }
  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> a;
    a.reserve(n * n);
    for (const auto& r : rows) {
      if (r.size() != n) throw std::invalid_argument("Matrix: not square");
      a.insert(a.end(), r.begin(), r.end());
    }
    return Matrix(n, std::move(a));
  }

  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

inline void require_nonneg(const Matrix& m, const char* where) {
  for (double v : m.a) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument(std::string(where) + ": entries must be finite and nonnegative");
  }
}

struct OperatorSpec;
using OperatorPtr = std::shared_ptr<const OperatorSpec>;

/// x -> A x with a nonnegative matrix.
struct LinearNonneg {
  Matrix m;
};

/// Rowwise supremum of finitely many nonnegative matrices:
/// result_i = max over members of (M_a x)_i.
struct SupFamily {
  std::vector<Matrix> members;
};

/// Rowwise infimum of finitely many nonnegative matrices.
struct InfFamily {
  std::vector<Matrix> members;
};

/// result_i = max over actions a of min over opponent choices b of
/// rows[i][a][b] . x, all row vectors nonnegative.
struct MinMax {
  // rows[i][a][b] is a row vector of length n.
  std::vector<std::vector<std::vector<std::vector<double>>>> rows;
};

/// Multiplicative conjugate of a max-plus linear map:
/// result_i = max_j e^{w_ij} x_j, weights in R union {-inf}.
/// The conjugation lives in the map; stored data stays additive.
struct MaxPlusConjugate {
  std::size_t n = 0;
  std::vector<double> weights;  // n*n, -inf allowed
  std::vector<double> factors;  // cached e^{w_ij}, e^{-inf} = 0

  MaxPlusConjugate() = default;
  MaxPlusConjugate(std::size_t dim, std::vector<double> w) : n(dim), weights(std::move(w)) {
    if (weights.size() != n * n) throw std::invalid_argument("MaxPlusConjugate: weight count does not match dimension");
    factors.resize(weights.size());
    for (std::size_t i = 0; i < n; ++i) {
      bool any_finite = false;
      for (std::size_t j = 0; j < n; ++j) {
        const double w_ij = weights[i * n + j];
        if (std::isnan(w_ij) || w_ij == kInf)
          throw std::invalid_argument("MaxPlusConjugate: weights must be finite or -inf");
        any_finite = any_finite || std::isfinite(w_ij);
        factors[i * n + j] = std::isfinite(w_ij) ? std::exp(w_ij) : 0.0;
      }
      // Rows with no finite entry would send the whole cone into a face.
      if (!any_finite)
        throw std::invalid_argument("MaxPlusConjugate: row " + std::to_string(i) + " has no finite weight");
    }
  }
};

/// h_s(x) = h(x) + s * q(h(x)) * u, the interior-pushing regularization.
struct Perturbed {
  OperatorPtr base;
  double s = 0.0;
  ConeVector unit;
  SliceConfig gauge;
};

/// m-fold composition of the base map.
struct Power {
  OperatorPtr base;
  std::size_t m = 1;
};

/// The base map read as a self-map of the whole space rather than the cone.
/// Base must be a SupFamily (convex map) or LinearNonneg.
struct WholeSpace {
  OperatorPtr base;
};

struct OperatorSpec {
  std::variant<LinearNonneg, SupFamily, InfFamily, MinMax, MaxPlusConjugate, Perturbed, Power, WholeSpace> node;
};

inline OperatorPtr make_operator(OperatorSpec spec) {
  return std::make_shared<const OperatorSpec>(std::move(spec));
}

inline std::size_t dimension(const OperatorSpec& spec);

namespace detail {

struct DimensionVisitor {
  std::size_t operator()(const LinearNonneg& op) const { return op.m.n; }
  std::size_t operator()(const SupFamily& op) const {
    return op.members.empty() ? 0 : op.members.front().n;
  }
  std::size_t operator()(const InfFamily& op) const {
    return op.members.empty() ? 0 : op.members.front().n;
  }
  std::size_t operator()(const MinMax& op) const { return op.rows.size(); }
  std::size_t operator()(const MaxPlusConjugate& op) const { return op.n; }
  std::size_t operator()(const Perturbed& op) const { return dimension(*op.base); }
  std::size_t operator()(const Power& op) const { return dimension(*op.base); }
  std::size_t operator()(const WholeSpace& op) const { return dimension(*op.base); }
};

}  // namespace detail

inline std::size_t dimension(const OperatorSpec& spec) {
  return std::visit(detail::DimensionVisitor{}, spec.node);
}

/// True when the spec's domain is the cone (everything except WholeSpace).
inline bool cone_domain(const OperatorSpec& spec) {
  return !std::holds_alternative<WholeSpace>(spec.node);
}

/// Structural validation: square nonnegative matrices, consistent member
/// dimensions, positive dimension, legal parameters. Throws on violation.
inline void validate(const OperatorSpec& spec) {
  std::visit(
      [](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, LinearNonneg>) {
          if (op.m.n == 0) throw std::invalid_argument("linear: dimension must be at least 1");
          require_nonneg(op.m, "linear");
        } else if constexpr (std::is_same_v<T, SupFamily> || std::is_same_v<T, InfFamily>) {
          const char* name = std::is_same_v<T, SupFamily> ? "sup" : "inf";
          if (op.members.empty()) throw std::invalid_argument(std::string(name) + ": needs at least one member");
          const std::size_t n = op.members.front().n;
          if (n == 0) throw std::invalid_argument(std::string(name) + ": dimension must be at least 1");
          for (const Matrix& m : op.members) {
            if (m.n != n) throw std::invalid_argument(std::string(name) + ": member dimension mismatch");
            require_nonneg(m, name);
          }
        } else if constexpr (std::is_same_v<T, MinMax>) {
          const std::size_t n = op.rows.size();
          if (n == 0) throw std::invalid_argument("minmax: dimension must be at least 1");
          for (const auto& actions : op.rows) {
            if (actions.empty()) throw std::invalid_argument("minmax: each row needs at least one action");
            for (const auto& opponents : actions) {
              if (opponents.empty()) throw std::invalid_argument("minmax: each action needs at least one opponent row");
              for (const auto& row : opponents) {
                if (row.size() != n) throw std::invalid_argument("minmax: row vector length mismatch");
                for (double v : row)
                  if (!std::isfinite(v) || v < 0.0)
                    throw std::invalid_argument("minmax: entries must be finite and nonnegative");
              }
            }
          }
        } else if constexpr (std::is_same_v<T, MaxPlusConjugate>) {
          if (op.n == 0) throw std::invalid_argument("maxplus: dimension must be at least 1");
          // Row validity is enforced by the constructor.
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          if (!op.base) throw std::invalid_argument("perturbed: missing base");
          validate(*op.base);
          if (!cone_domain(*op.base)) throw std::invalid_argument("perturbed: base must be cone-domain");
          if (!(op.s > 0.0) || !std::isfinite(op.s)) throw std::invalid_argument("perturbed: s must be positive");
          if (op.unit.size() != dimension(*op.base)) throw std::invalid_argument("perturbed: unit dimension mismatch");
          if (!op.unit.is_interior()) throw std::invalid_argument("perturbed: unit must be interior");
          if (op.gauge.dim() != op.unit.size()) throw std::invalid_argument("perturbed: gauge dimension mismatch");
        } else if constexpr (std::is_same_v<T, Power>) {
          if (!op.base) throw std::invalid_argument("power: missing base");
          validate(*op.base);
          if (!cone_domain(*op.base)) throw std::invalid_argument("power: base must be cone-domain");
          if (op.m == 0) throw std::invalid_argument("power: exponent must be at least 1");
        } else if constexpr (std::is_same_v<T, WholeSpace>) {
          if (!op.base) throw std::invalid_argument("wholespace: missing base");
          validate(*op.base);
          if (!std::holds_alternative<SupFamily>(op.base->node) &&
              !std::holds_alternative<LinearNonneg>(op.base->node))
            throw std::invalid_argument("wholespace: base must be a sup family or linear map");
        }
      },
      spec.node);
}

namespace detail {

inline void matvec(const Matrix& m, const std::vector<double>& x, std::vector<double>& out) {
  out.assign(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    double acc = 0.0;
    const double* row = m.a.data() + i * m.n;
    for (std::size_t j = 0; j < m.n; ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
}

inline double dot(const std::vector<double>& row, const std::vector<double>& x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += row[j] * x[j];
  return acc;
}

/// Core evaluation on raw coordinates. Domain is the cone for every variant
/// except WholeSpace, which accepts arbitrary real vectors through the same
/// arithmetic (its base maps are defined on the whole space).
inline std::vector<double> apply_raw(const OperatorSpec& spec, const std::vector<double>& x) {
  return std::visit(
      [&x](const auto& op) -> std::vector<double> {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, LinearNonneg>) {
          std::vector<double> out;
          matvec(op.m, x, out);
          return out;
        } else if constexpr (std::is_same_v<T, SupFamily>) {
          std::vector<double> out;
          std::vector<double> tmp;
          matvec(op.members.front(), x, out);
          for (std::size_t a = 1; a < op.members.size(); ++a) {
            matvec(op.members[a], x, tmp);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], tmp[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, InfFamily>) {
          std::vector<double> out;
          std::vector<double> tmp;
          matvec(op.members.front(), x, out);
          for (std::size_t a = 1; a < op.members.size(); ++a) {
            matvec(op.members[a], x, tmp);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], tmp[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, MinMax>) {
          const std::size_t n = op.rows.size();
          std::vector<double> out(n);
          for (std::size_t i = 0; i < n; ++i) {
            double best = -kInf;
            for (const auto& opponents : op.rows[i]) {
              double worst = kInf;
              for (const auto& row : opponents) worst = std::min(worst, dot(row, x));
              best = std::max(best, worst);
            }
            out[i] = best;
          }
          return out;
        } else if constexpr (std::is_same_v<T, MaxPlusConjugate>) {
          std::vector<double> out(op.n);
          for (std::size_t i = 0; i < op.n; ++i) {
            double best = 0.0;
            const double* row = op.factors.data() + i * op.n;
            for (std::size_t j = 0; j < op.n; ++j) best = std::max(best, row[j] * x[j]);
            out[i] = best;
          }
          return out;
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          std::vector<double> out = apply_raw(*op.base, x);
          const double q = op.gauge.gauge(std::span<const double>(out));
          const double shift = op.s * q;
          for (std::size_t i = 0; i < out.size(); ++i) out[i] += shift * op.unit[i];
          return out;
        } else if constexpr (std::is_same_v<T, Power>) {
          std::vector<double> out = x;
          for (std::size_t k = 0; k < op.m; ++k) out = apply_raw(*op.base, out);
          return out;
        } else {
          static_assert(std::is_same_v<T, WholeSpace>);
          return apply_raw(*op.base, x);
        }
      },
      spec.node);
}

}  // namespace detail

/// Evaluate a cone-domain spec at a cone point.
inline ConeVector apply(const OperatorSpec& spec, const ConeVector& x) {
  if (!cone_domain(spec))
    throw std::invalid_argument("apply: whole-space specs act on real vectors, use apply_whole");
  if (x.size() != dimension(spec)) throw std::invalid_argument("apply: dimension mismatch");
  return ConeVector(detail::apply_raw(spec, x.coords()));
}

/// Evaluate a whole-space spec (or its base) at an arbitrary real vector.
inline std::vector<double> apply_whole(const OperatorSpec& spec, const std::vector<double>& x) {
  if (!std::holds_alternative<WholeSpace>(spec.node))
    throw std::invalid_argument("apply_whole: spec is not whole-space");
  if (x.size() != dimension(spec)) throw std::invalid_argument("apply_whole: dimension mismatch");
  return detail::apply_raw(spec, x);
}

/// Rowwise choices made by a family or minmax evaluation. For families,
/// choice[i] is the member index realizing row i. For minmax, choice[i] is
/// the maximizing action and counter[i] the minimizing opponent inside it.
/// Ties always resolve to the lowest index.
struct SelectionWitness {
  std::vector<std::size_t> choice;
  std::vector<std::size_t> counter;  // empty unless minmax
};

struct SelectionResult {
  ConeVector value;
  SelectionWitness witness;
};

/// Evaluate a family or minmax spec and report which rows were selected.
/// The witness rows agree with the returned value at x, and for sup (resp.
/// inf) families the witness row dominates (resp. is dominated by) every
/// member's row there.
inline SelectionResult apply_with_selection(const OperatorSpec& spec, const ConeVector& x) {
  if (x.size() != dimension(spec)) throw std::invalid_argument("apply_with_selection: dimension mismatch");
  const std::vector<double>& xv = x.coords();
  return std::visit(
      [&](const auto& op) -> SelectionResult {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SupFamily> || std::is_same_v<T, InfFamily>) {
          constexpr bool is_sup = std::is_same_v<T, SupFamily>;
          const std::size_t n = op.members.front().n;
          std::vector<double> out(n);
          SelectionWitness w;
          w.choice.resize(n);
          for (std::size_t i = 0; i < n; ++i) {
            double best = 0.0;
            std::size_t arg = 0;
            for (std::size_t a = 0; a < op.members.size(); ++a) {
              double v = 0.0;
              const double* row = op.members[a].a.data() + i * n;
              for (std::size_t j = 0; j < n; ++j) v += row[j] * xv[j];
              if (a == 0 || (is_sup ? v > best : v < best)) {
                best = v;
                arg = a;
              }
            }
            out[i] = best;
            w.choice[i] = arg;
          }
          return {ConeVector(std::move(out)), std::move(w)};
        } else if constexpr (std::is_same_v<T, MinMax>) {
          const std::size_t n = op.rows.size();
          std::vector<double> out(n);
          SelectionWitness w;
          w.choice.resize(n);
          w.counter.resize(n);
          for (std::size_t i = 0; i < n; ++i) {
            double best = 0.0;
            std::size_t best_a = 0, best_b = 0;
            for (std::size_t a = 0; a < op.rows[i].size(); ++a) {
              double worst = 0.0;
              std::size_t arg_b = 0;
              for (std::size_t b = 0; b < op.rows[i][a].size(); ++b) {
                const double v = detail::dot(op.rows[i][a][b], xv);
                if (b == 0 || v < worst) {
                  worst = v;
                  arg_b = b;
                }
              }
              if (a == 0 || worst > best) {
                best = worst;
                best_a = a;
                best_b = arg_b;
              }
            }
            out[i] = best;
            w.choice[i] = best_a;
            w.counter[i] = best_b;
          }
          return {ConeVector(std::move(out)), std::move(w)};
        } else {
          throw std::invalid_argument("apply_with_selection: spec has no rowwise selection");
        }
      },
      spec.node);
}

/// Matrix whose rows are the ones picked by a selection witness; evaluating
/// it at the witness's query point reproduces the family value there.
inline Matrix induced_matrix(const OperatorSpec& spec, const SelectionWitness& w) {
  return std::visit(
      [&](const auto& op) -> Matrix {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SupFamily> || std::is_same_v<T, InfFamily>) {
          const std::size_t n = op.members.front().n;
          if (w.choice.size() != n) throw std::invalid_argument("induced_matrix: witness dimension mismatch");
          Matrix m(n, std::vector<double>(n * n, 0.0));
          for (std::size_t i = 0; i < n; ++i) {
            if (w.choice[i] >= op.members.size()) throw std::invalid_argument("induced_matrix: member index out of range");
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = op.members[w.choice[i]].at(i, j);
          }
          return m;
        } else if constexpr (std::is_same_v<T, MinMax>) {
          const std::size_t n = op.rows.size();
          if (w.choice.size() != n || w.counter.size() != n)
            throw std::invalid_argument("induced_matrix: witness dimension mismatch");
          Matrix m(n, std::vector<double>(n * n, 0.0));
          for (std::size_t i = 0; i < n; ++i) {
            const auto& row = op.rows[i].at(w.choice[i]).at(w.counter[i]);
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = row[j];
          }
          return m;
        } else {
          throw std::invalid_argument("induced_matrix: spec has no rowwise selection");
        }
      },
      spec.node);
}

/// Restriction of a whole-space map to the negative cone, pulled back to the
/// positive cone: g(y) = -h(-y). Sup families turn into inf families over the
/// same members; linear maps are unchanged.
inline OperatorSpec restrict_to_negative_cone(const OperatorSpec& spec) {
  const auto* ws = std::get_if<WholeSpace>(&spec.node);
  if (!ws) throw std::invalid_argument("restrict_to_negative_cone: spec must be whole-space");
  if (const auto* sup = std::get_if<SupFamily>(&ws->base->node))
    return OperatorSpec{InfFamily{sup->members}};
  if (const auto* lin = std::get_if<LinearNonneg>(&ws->base->node))
    return OperatorSpec{*lin};
  throw std::invalid_argument("restrict_to_negative_cone: unsupported base");
}

/// Cone operator norm with respect to the sup-norm. Order preservation and
/// homogeneity collapse the supremum to the all-ones evaluation:
/// x <= ||x|| * 1 implies h(x) <= ||x|| * h(1), so ||h|| = ||h(1)||.
/// For linear maps this is the maximum row sum.
inline double operator_norm_on_cone(const OperatorSpec& spec) {
  if (!cone_domain(spec)) throw std::invalid_argument("operator_norm_on_cone: spec must be cone-domain");
  const std::vector<double> image = detail::apply_raw(spec, std::vector<double>(dimension(spec), 1.0));
  double best = 0.0;
  for (double v : image) best = std::max(best, v);
  return best;
}

}  // namespace conewise
