#pragma once

// Batch front door: a RunRequest carries a command plus raw JSON text for the
// operator, optional config overrides, and an optional certificate; run()
// parses everything, dispatches, and returns machine-readable JSON, a
// human-readable summary, and (for solve) a CSV trace. Exit codes:
//   0  pass / converged
//   2  a certificate or report check ran and verifiably FAILED
//   3  the computation ran but did not converge (stalled bracket included)
//   4  input error (malformed JSON, bad grammar, dimension over the cap)

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conewise/certificates.hpp"
#include "conewise/cone.hpp"
#include "conewise/operator_json.hpp"
#include "conewise/operators.hpp"
#include "conewise/oracles.hpp"
#include "conewise/solver.hpp"

namespace conewise {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitInputError = 4;

struct RunRequest {
  std::string command;  // solve | bracket | certify | family | oracle | growth
  std::string input_text;                 // operator JSON
  std::optional<std::string> config_text; // config overrides JSON
  std::optional<std::string> cert_text;   // certificate JSON (certify)
  bool timestamp = true;
  std::optional<std::uint64_t> seed;
  std::size_t max_dim = 512;  // CONEWISE_MAX_DIM
};

struct RunOutcome {
  int exit_code = kExitPass;
  nlohmann::json output;    // machine-readable result (object)
  std::string stdout_text;  // one-line human summary
  std::string trace_csv;    // solve only; empty otherwise
};

namespace detail {

/// 17 significant digits: enough for lossless double round trips.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// JSON value for a real that may be infinite.
inline nlohmann::json json_real(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

inline std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Per-run configuration: solver knobs plus command-specific extras.
struct RunConfig {
  SolverConfig solver;
  std::optional<std::vector<double>> x0;  // bracket / growth start
  std::size_t horizon = 5000;             // growth
  double tol = 1e-12;                     // bracket / oracle bracket
  std::size_t max_iter = 200000;          // bracket
};

inline SliceConfig parse_gauge(const nlohmann::json& g, std::size_t dim, const std::string& where) {
  const nlohmann::json& kind = field(g, "kind", where);
  if (kind == "sup") return SliceConfig::sup_norm(dim);
  if (kind == "unit") return SliceConfig::unit_norm(ConeVector(vector_at(field(g, "u", where), where + ".u")));
  if (kind == "dual") return SliceConfig::dual_functional(vector_at(field(g, "weights", where), where + ".weights"));
  throw std::invalid_argument(where + ".kind: expected \"sup\", \"unit\" or \"dual\"");
}

inline std::size_t size_at(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
    throw std::invalid_argument(where + ": expected a positive integer");
  return j.get<std::size_t>();
}

inline double positive_at(const nlohmann::json& j, const std::string& where) {
  const double v = number_at(j, where);
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(where + ": expected a positive number");
  return v;
}

inline RunConfig parse_config(const nlohmann::json& j, std::size_t dim) {
  RunConfig out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string where = "config." + key;
    if (key == "schedule") {
      if (value == "harmonic")
        out.solver.schedule = SolverConfig::Schedule::Harmonic;
      else if (value == "geometric")
        out.solver.schedule = SolverConfig::Schedule::Geometric;
      else
        throw std::invalid_argument(where + ": expected \"harmonic\" or \"geometric\"");
    } else if (key == "max_outer") {
      out.solver.max_outer = size_at(value, where);
    } else if (key == "inner_tol") {
      out.solver.inner_tol = positive_at(value, where);
    } else if (key == "outer_tol") {
      out.solver.outer_tol = positive_at(value, where);
    } else if (key == "max_inner") {
      out.solver.max_inner = size_at(value, where);
    } else if (key == "refine_max_steps") {
      out.solver.refine_max_steps = size_at(value, where);
    } else if (key == "refine_period_max") {
      out.solver.refine_period_max = size_at(value, where);
    } else if (key == "target_width") {
      out.solver.target_width = positive_at(value, where);
    } else if (key == "unit") {
      out.solver.unit = ConeVector(vector_at(value, where));
    } else if (key == "gauge") {
      out.solver.gauge = parse_gauge(value, dim, where);
    } else if (key == "x0") {
      out.x0 = vector_at(value, where);
    } else if (key == "horizon") {
      out.horizon = size_at(value, where);
    } else if (key == "tol") {
      out.tol = positive_at(value, where);
    } else if (key == "max_iter") {
      out.max_iter = size_at(value, where);
    } else {
      throw std::invalid_argument(where + ": unknown configuration key");
    }
  }
  return out;
}

inline nlohmann::json trace_json(const std::vector<TraceRow>& trace) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TraceRow& r : trace) {
    rows.push_back({{"s", r.s},
                    {"lambda", r.lambda},
                    {"inner_iters", r.inner_iters},
                    {"bracket_lo", json_real(r.bracket_lo)},
                    {"bracket_hi", json_real(r.bracket_hi)},
                    {"residual", r.residual}});
  }
  return rows;
}

inline std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os << "s,lambda,inner_iters,bracket_lo,bracket_hi,residual\n";
  for (const TraceRow& r : trace) {
    os << fmt17(r.s) << ',' << fmt17(r.lambda) << ',' << r.inner_iters << ','
       << fmt17(r.bracket_lo) << ',' << fmt17(r.bracket_hi) << ',' << fmt17(r.residual) << '\n';
  }
  return os.str();
}

inline nlohmann::json solve_json(const EigenSolveResult& res) {
  const double cert_tol = std::max(2.0 * res.residual, 1e-11);
  nlohmann::json j{
      {"radius", res.radius},
      {"eigvec", res.eigvec.coords()},
      {"residual", res.residual},
      {"bracket", {{"lower", json_real(res.bracket_lo)}, {"upper", json_real(res.bracket_hi)}}},
      {"converged", res.converged},
      {"flags", res.flags},
      {"trace", trace_json(res.trace)},
  };
  j["certificate"] = serialize_certificate(EigenPairCert{res.eigvec, res.radius, cert_tol});
  return j;
}

inline nlohmann::json verdict_json(const CertVerdict& v) {
  return {{"pass", v.pass},
          {"worst_index", v.worst_index},
          {"worst_violation", json_real(v.worst_violation)},
          {"detail", v.detail}};
}

/// A certificate may arrive as a bare certificate object, as a solve output
/// (whose embedded "certificate" field is used), or as raw EigenSolveResult
/// fields (radius/eigvec/residual), which re-ingest as an eigenpair claim.
inline ParsedCertificate certificate_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("kind")) return parse_certificate(j);
  if (j.is_object() && j.contains("certificate")) return parse_certificate(j["certificate"], "certificate");
  if (j.is_object() && j.contains("radius") && j.contains("eigvec")) {
    ParsedCertificate out;
    out.kind = "pair";
    out.vector = ConeVector(vector_at(j["eigvec"], "eigvec"));
    out.value = number_at(j["radius"], "radius");
    const double residual = j.contains("residual") ? number_at(j["residual"], "residual") : 0.0;
    out.tol = std::max(2.0 * residual, 1e-11);
    return out;
  }
  throw std::invalid_argument("certificate: expected a certificate object or a solve result");
}

}  // namespace detail

inline RunOutcome run(const RunRequest& request) {
  RunOutcome out;
  try {
    const nlohmann::json input = nlohmann::json::parse(request.input_text);
    OperatorSpec spec = parse_operator(input);
    const std::size_t n = dimension(spec);
    if (n > request.max_dim)
      throw std::invalid_argument("operator dimension " + std::to_string(n) +
                                  " exceeds the cap CONEWISE_MAX_DIM = " + std::to_string(request.max_dim));
    const nlohmann::json config_json = request.config_text
                                           ? nlohmann::json::parse(*request.config_text)
                                           : nlohmann::json(nullptr);
    const detail::RunConfig cfg = detail::parse_config(config_json, n);

    nlohmann::json& output = out.output;
    output["command"] = request.command;
    if (request.seed) output["seed"] = *request.seed;

    if (request.command == "solve") {
      const EigenSolveResult res = eigen_solve(spec, cfg.solver);
      output.update(detail::solve_json(res));
      out.trace_csv = detail::trace_csv(res.trace);
      out.exit_code = res.converged ? kExitPass : kExitNotConverged;
      std::ostringstream os;
      os << "radius " << detail::fmt17(res.radius) << (res.converged ? " (converged)" : " (NOT converged)")
         << "  bracket [" << detail::fmt17(res.bracket_lo) << ", " << detail::fmt17(res.bracket_hi)
         << "]  residual " << detail::fmt17(res.residual);
      for (const std::string& f : res.flags) os << "  [" << f << "]";
      out.stdout_text = os.str();
    } else if (request.command == "bracket") {
      const auto* lin = std::get_if<LinearNonneg>(&spec.node);
      if (!lin) throw std::invalid_argument("bracket: requires a linear operator");
      const std::vector<double> x0 = cfg.x0.value_or(std::vector<double>(n, 1.0));
      const PowerBracket b = power_bracket(lin->m, x0, cfg.tol, cfg.max_iter);
      output["lower"] = detail::json_real(b.lower);
      output["upper"] = detail::json_real(b.upper);
      output["closed"] = b.closed;
      output["stalled"] = b.stalled;
      output["iters"] = b.iters;
      output["x"] = b.x;
      out.exit_code = b.closed ? kExitPass : kExitNotConverged;
      std::ostringstream os;
      os << "bracket [" << detail::fmt17(b.lower) << ", " << detail::fmt17(b.upper) << "] "
         << (b.closed ? "closed" : "STALLED") << " after " << b.iters << " iterations";
      out.stdout_text = os.str();
    } else if (request.command == "certify") {
      if (!request.cert_text) throw std::invalid_argument("certify: a certificate file is required");
      const nlohmann::json cert_json = nlohmann::json::parse(*request.cert_text);
      const ParsedCertificate cert = detail::certificate_from_json(cert_json);
      CertVerdict verdict;
      if (cert.kind == "sub")
        verdict = check_sub(spec, SubEigenCert{cert.vector, cert.value, cert.tol});
      else if (cert.kind == "super")
        verdict = check_super(spec, SuperEigenCert{cert.vector, cert.value, cert.tol});
      else
        verdict = check_pair(spec, EigenPairCert{cert.vector, cert.value, cert.tol});
      output["kind"] = cert.kind;
      output["value"] = cert.value;
      output["tol"] = cert.tol;
      output["verdict"] = detail::verdict_json(verdict);
      out.exit_code = verdict.pass ? kExitPass : kExitFail;
      out.stdout_text = verdict.pass
                            ? "PASS"
                            : "FAIL: " + (verdict.detail.empty()
                                              ? "worst index " + std::to_string(verdict.worst_index) +
                                                    ", violation " + detail::fmt17(verdict.worst_violation)
                                              : verdict.detail);
    } else if (request.command == "family") {
      if (std::holds_alternative<SupFamily>(spec.node)) {
        const AttainmentReport rep = family_attainment(spec, cfg.solver);
        output["family"] = "sup";
        output["radius"] = rep.solve.radius;
        output["optimum"] = rep.enumeration.optimum;
        output["policy"] = rep.enumeration.argopt;
        output["policy_count"] = rep.enumeration.policy_count;
        output["witness"] = rep.witness;
        output["witness_root"] = rep.witness_root;
        output["radius_matches"] = rep.radius_matches;
        output["witness_optimal"] = rep.witness_optimal;
        output["pass"] = rep.pass;
        out.exit_code = rep.pass ? kExitPass
                                 : (rep.solve.converged ? kExitFail : kExitNotConverged);
        std::ostringstream os;
        os << (rep.pass ? "ATTAINED" : "NOT ATTAINED") << ": radius " << detail::fmt17(rep.solve.radius)
           << ", policy optimum " << detail::fmt17(rep.enumeration.optimum);
        out.stdout_text = os.str();
      } else if (std::holds_alternative<InfFamily>(spec.node)) {
        const InfFamilyReport rep = family_cw_inf(spec, cfg.solver);
        output["family"] = "inf";
        output["radius"] = rep.solve.radius;
        output["optimum"] = rep.enumeration.optimum;
        output["policy"] = rep.enumeration.argopt;
        output["policy_count"] = rep.enumeration.policy_count;
        output["interior"] = rep.interior;
        output["value_matches"] = rep.value_matches;
        output["pass"] = rep.pass;
        out.exit_code = rep.pass ? kExitPass
                                 : (rep.solve.converged ? kExitFail : kExitNotConverged);
        std::ostringstream os;
        os << (rep.pass ? "MATCHED" : "MISMATCH") << ": solved value " << detail::fmt17(rep.solve.radius)
           << ", member minimum " << detail::fmt17(rep.enumeration.optimum);
        out.stdout_text = os.str();
      } else {
        throw std::invalid_argument("family: requires a sup or inf family operator");
      }
    } else if (request.command == "oracle") {
      if (const auto* mp = std::get_if<MaxPlusConjugate>(&spec.node)) {
        const double mean = karp_cycle_mean(*mp);
        output["method"] = "karp_cycle_mean";
        output["value"] = detail::json_real(mean);
        output["radius"] = karp_radius(*mp);
        out.exit_code = kExitPass;
        out.stdout_text = "karp cycle mean " + (std::isfinite(mean) ? detail::fmt17(mean) : std::string("-inf")) +
                          ", radius " + detail::fmt17(karp_radius(*mp));
      } else if (const auto* lin = std::get_if<LinearNonneg>(&spec.node)) {
        if (n == 2) {
          const double root = perron_2x2(lin->m);
          output["method"] = "perron_2x2";
          output["value"] = root;
          out.exit_code = kExitPass;
          out.stdout_text = "perron root " + detail::fmt17(root);
        } else {
          const PowerBracket b = power_bracket(lin->m, cfg.x0.value_or(std::vector<double>(n, 1.0)),
                                               cfg.tol, cfg.max_iter);
          output["method"] = "power_bracket";
          output["value"] = 0.5 * (b.lower + b.upper);
          output["lower"] = detail::json_real(b.lower);
          output["upper"] = detail::json_real(b.upper);
          output["closed"] = b.closed;
          out.exit_code = b.closed ? kExitPass : kExitNotConverged;
          out.stdout_text = "perron root " + detail::fmt17(0.5 * (b.lower + b.upper)) +
                            (b.closed ? "" : " (bracket not closed)");
        }
      } else if (std::holds_alternative<SupFamily>(spec.node) || std::holds_alternative<InfFamily>(spec.node)) {
        const PolicyEnumeration pe = policy_enumeration(spec, cfg.tol);
        output["method"] = "policy_enumeration";
        output["value"] = pe.optimum;
        output["policy"] = pe.argopt;
        output["policy_count"] = pe.policy_count;
        out.exit_code = pe.all_closed ? kExitPass : kExitNotConverged;
        out.stdout_text = "policy optimum " + detail::fmt17(pe.optimum) + " over " +
                          std::to_string(pe.policy_count) + " policies";
      } else {
        throw std::invalid_argument("oracle: no independent oracle for this operator type");
      }
    } else if (request.command == "growth") {
      const ConeVector x0 = cfg.x0 ? ConeVector(*cfg.x0) : ConeVector::ones(n);
      const GrowthEstimate est = growth_rate(spec, x0, cfg.horizon);
      output["value"] = est.value;
      output["hit_zero"] = est.hit_zero;
      output["horizon"] = cfg.horizon;
      out.exit_code = kExitPass;
      out.stdout_text = "growth rate " + detail::fmt17(est.value);
    } else {
      throw std::invalid_argument("unknown command \"" + request.command + "\"");
    }

    if (request.timestamp) out.output["timestamp"] = detail::iso8601_utc_now();
    return out;
  } catch (const nlohmann::json::parse_error& e) {
    out.exit_code = kExitInputError;
    out.output = {{"error", e.what()}};
    out.stdout_text = std::string("input error: ") + e.what();
    return out;
  } catch (const std::invalid_argument& e) {
    out.exit_code = kExitInputError;
    out.output = {{"error", e.what()}};
    out.stdout_text = std::string("input error: ") + e.what();
    return out;
  }
}

}  // namespace conewise
