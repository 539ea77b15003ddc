#pragma once

// JSON grammar for operator descriptions and certificates. Weights of -inf
// travel as the string "-inf"; everything else is plain JSON numbers.
// Parse failures throw std::invalid_argument with a short path description.

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conewise/certificates.hpp"
#include "conewise/cone.hpp"
#include "conewise/operators.hpp"

namespace conewise {

namespace detail {

inline double number_at(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw std::invalid_argument(where + ": expected a number");
  return j.get<double>();
}

inline std::vector<double> vector_at(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(where + ": expected a nonempty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number_at(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Matrix matrix_at(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(where + ": expected a nonempty array of rows");
  const std::size_t n = j.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n)
      throw std::invalid_argument(row_where + ": matrix must be square");
    for (std::size_t k = 0; k < n; ++k)
      entries.push_back(number_at(j[i][k], row_where + "[" + std::to_string(k) + "]"));
  }
  return Matrix(n, std::move(entries));
}

/// Max-plus weight: a number or the string "-inf".
inline double weight_at(const nlohmann::json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "-inf") return -kInf;
    throw std::invalid_argument(where + ": only \"-inf\" is accepted as a string weight");
  }
  return number_at(j, where);
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* name, const std::string& where) {
  const auto it = j.find(name);
  if (it == j.end()) throw std::invalid_argument(where + ": missing field \"" + name + "\"");
  return *it;
}

}  // namespace detail

inline OperatorSpec parse_operator(const nlohmann::json& j, const std::string& where = "operator") {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  const nlohmann::json& type_field = detail::field(j, "type", where);
  if (!type_field.is_string()) throw std::invalid_argument(where + ".type: expected a string");
  const std::string type = type_field.get<std::string>();

  if (type == "linear") {
    Matrix m = detail::matrix_at(detail::field(j, "matrix", where), where + ".matrix");
    OperatorSpec spec{LinearNonneg{std::move(m)}};
    validate(spec);
    return spec;
  }
  if (type == "sup" || type == "inf") {
    const nlohmann::json& members = detail::field(j, "members", where);
    if (!members.is_array() || members.empty())
      throw std::invalid_argument(where + ".members: expected a nonempty array");
    std::vector<Matrix> ms;
    ms.reserve(members.size());
    for (std::size_t a = 0; a < members.size(); ++a)
      ms.push_back(detail::matrix_at(members[a], where + ".members[" + std::to_string(a) + "]"));
    OperatorSpec spec = type == "sup" ? OperatorSpec{SupFamily{std::move(ms)}}
                                      : OperatorSpec{InfFamily{std::move(ms)}};
    validate(spec);
    return spec;
  }
  if (type == "minmax") {
    const nlohmann::json& rows = detail::field(j, "rows", where);
    if (!rows.is_array() || rows.empty())
      throw std::invalid_argument(where + ".rows: expected a nonempty array");
    MinMax mm;
    mm.rows.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string row_where = where + ".rows[" + std::to_string(i) + "]";
      if (!rows[i].is_array() || rows[i].empty())
        throw std::invalid_argument(row_where + ": expected a nonempty array of actions");
      mm.rows[i].resize(rows[i].size());
      for (std::size_t a = 0; a < rows[i].size(); ++a) {
        const std::string act_where = row_where + "[" + std::to_string(a) + "]";
        const nlohmann::json& opponents = rows[i][a];
        if (!opponents.is_array() || opponents.empty())
          throw std::invalid_argument(act_where + ": expected a nonempty array of opponent rows");
        for (std::size_t b = 0; b < opponents.size(); ++b)
          mm.rows[i][a].push_back(
              detail::vector_at(opponents[b], act_where + "[" + std::to_string(b) + "]"));
      }
    }
    OperatorSpec spec{std::move(mm)};
    validate(spec);
    return spec;
  }
  if (type == "maxplus") {
    const nlohmann::json& weights = detail::field(j, "weights", where);
    if (!weights.is_array() || weights.empty())
      throw std::invalid_argument(where + ".weights: expected a nonempty array of rows");
    const std::size_t n = weights.size();
    std::vector<double> w;
    w.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string row_where = where + ".weights[" + std::to_string(i) + "]";
      if (!weights[i].is_array() || weights[i].size() != n)
        throw std::invalid_argument(row_where + ": weight matrix must be square");
      for (std::size_t k = 0; k < n; ++k)
        w.push_back(detail::weight_at(weights[i][k], row_where + "[" + std::to_string(k) + "]"));
    }
    OperatorSpec spec{MaxPlusConjugate(n, std::move(w))};
    validate(spec);
    return spec;
  }
  if (type == "perturbed") {
    OperatorSpec base = parse_operator(detail::field(j, "base", where), where + ".base");
    const double s = detail::number_at(detail::field(j, "s", where), where + ".s");
    ConeVector u(detail::vector_at(detail::field(j, "u", where), where + ".u"));
    SliceConfig gauge = SliceConfig::unit_norm(u);
    if (j.contains("gauge")) {
      const nlohmann::json& g = j["gauge"];
      const std::string gwhere = where + ".gauge";
      const nlohmann::json& kind = detail::field(g, "kind", gwhere);
      if (kind == "dual")
        gauge = SliceConfig::dual_functional(detail::vector_at(detail::field(g, "weights", gwhere), gwhere + ".weights"));
      else if (kind == "unit")
        gauge = SliceConfig::unit_norm(ConeVector(detail::vector_at(detail::field(g, "u", gwhere), gwhere + ".u")));
      else if (kind != "sup")
        throw std::invalid_argument(gwhere + ".kind: expected \"sup\", \"unit\" or \"dual\"");
      if (kind == "sup") gauge = SliceConfig::sup_norm(u.size());
    }
    OperatorSpec spec{Perturbed{make_operator(std::move(base)), s, std::move(u), std::move(gauge)}};
    validate(spec);
    return spec;
  }
  if (type == "power") {
    OperatorSpec base = parse_operator(detail::field(j, "base", where), where + ".base");
    const nlohmann::json& m = detail::field(j, "m", where);
    if (!m.is_number_unsigned()) throw std::invalid_argument(where + ".m: expected a nonnegative integer");
    OperatorSpec spec{Power{make_operator(std::move(base)), m.get<std::size_t>()}};
    validate(spec);
    return spec;
  }
  if (type == "wholespace") {
    OperatorSpec base = parse_operator(detail::field(j, "base", where), where + ".base");
    OperatorSpec spec{WholeSpace{make_operator(std::move(base))}};
    validate(spec);
    return spec;
  }
  throw std::invalid_argument(where + ".type: unknown operator type \"" + type + "\"");
}

namespace detail {

inline nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.n; ++k) row.push_back(m.at(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline nlohmann::json serialize_operator(const OperatorSpec& spec) {
  return std::visit(
      [](const auto& op) -> nlohmann::json {
        using T = std::decay_t<decltype(op)>;
        nlohmann::json j;
        if constexpr (std::is_same_v<T, LinearNonneg>) {
          j["type"] = "linear";
          j["matrix"] = detail::matrix_json(op.m);
        } else if constexpr (std::is_same_v<T, SupFamily> || std::is_same_v<T, InfFamily>) {
          j["type"] = std::is_same_v<T, SupFamily> ? "sup" : "inf";
          nlohmann::json ms = nlohmann::json::array();
          for (const Matrix& m : op.members) ms.push_back(detail::matrix_json(m));
          j["members"] = std::move(ms);
        } else if constexpr (std::is_same_v<T, MinMax>) {
          j["type"] = "minmax";
          j["rows"] = op.rows;
        } else if constexpr (std::is_same_v<T, MaxPlusConjugate>) {
          j["type"] = "maxplus";
          nlohmann::json rows = nlohmann::json::array();
          for (std::size_t i = 0; i < op.n; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < op.n; ++k) {
              const double w = op.weights[i * op.n + k];
              if (std::isfinite(w))
                row.push_back(w);
              else
                row.push_back("-inf");
            }
            rows.push_back(std::move(row));
          }
          j["weights"] = std::move(rows);
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          j["type"] = "perturbed";
          j["base"] = serialize_operator(*op.base);
          j["s"] = op.s;
          j["u"] = op.unit.coords();
          if (op.gauge.kind() == SliceConfig::Kind::DualFunctional) {
            j["gauge"] = {{"kind", "dual"}, {"weights", op.gauge.weights()}};
          } else {
            j["gauge"] = {{"kind", "unit"}, {"u", op.gauge.unit().coords()}};
          }
        } else if constexpr (std::is_same_v<T, Power>) {
          j["type"] = "power";
          j["base"] = serialize_operator(*op.base);
          j["m"] = op.m;
        } else {
          static_assert(std::is_same_v<T, WholeSpace>);
          j["type"] = "wholespace";
          j["base"] = serialize_operator(*op.base);
        }
        return j;
      },
      spec.node);
}

/// Certificates: {"kind": "sub"|"super"|"pair", "vector": [...],
/// "value": lambda|mu|r, "tol": ...}.
struct ParsedCertificate {
  std::string kind;
  ConeVector vector;
  double value = 0.0;
  double tol = 0.0;
};

inline ParsedCertificate parse_certificate(const nlohmann::json& j, const std::string& where = "certificate") {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  ParsedCertificate out;
  const nlohmann::json& kind = detail::field(j, "kind", where);
  if (!kind.is_string()) throw std::invalid_argument(where + ".kind: expected a string");
  out.kind = kind.get<std::string>();
  if (out.kind != "sub" && out.kind != "super" && out.kind != "pair")
    throw std::invalid_argument(where + ".kind: expected \"sub\", \"super\" or \"pair\"");
  out.vector = ConeVector(detail::vector_at(detail::field(j, "vector", where), where + ".vector"));
  out.value = detail::number_at(detail::field(j, "value", where), where + ".value");
  out.tol = j.contains("tol") ? detail::number_at(j["tol"], where + ".tol")
                              : (out.kind == "pair" ? 1e-9 : 1e-12);
  return out;
}

inline nlohmann::json serialize_certificate(const SubEigenCert& c) {
  return {{"kind", "sub"}, {"vector", c.u.coords()}, {"value", c.lambda}, {"tol", c.tol}};
}
inline nlohmann::json serialize_certificate(const SuperEigenCert& c) {
  return {{"kind", "super"}, {"vector", c.v.coords()}, {"value", c.mu}, {"tol", c.tol}};
}
inline nlohmann::json serialize_certificate(const EigenPairCert& c) {
  return {{"kind", "pair"}, {"vector", c.x.coords()}, {"value", c.r}, {"tol", c.tol}};
}

}  // namespace conewise
