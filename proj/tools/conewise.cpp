// Command-line front door: parse operator JSON, run solves / oracles /
// certificate checks, emit machine-readable JSON and optional CSV traces.
//
// Exit codes: 0 pass/converged, 2 verified-FAIL, 3 non-convergence,
// 4 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "conewise/run.hpp"

namespace {

struct CommonOpts {
  std::string input_path;
  std::string config_path;
  std::string cert_path;
  std::string trace_path;
  std::string out_path;
  bool no_timestamp = false;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool wants_cert, bool wants_trace) {
  cmd->add_option("--input", opts.input_path, "Operator description (JSON file)")->required();
  cmd->add_option("--config", opts.config_path, "Configuration overrides (JSON file)");
  if (wants_cert)
    cmd->add_option("--cert", opts.cert_path, "Certificate to verify (JSON file)")->required();
  if (wants_trace)
    cmd->add_option("--trace", opts.trace_path, "Write the convergence trace (CSV file)");
  cmd->add_option("--out", opts.out_path, "Write the full result (JSON file)");
  cmd->add_flag("--no-timestamp", opts.no_timestamp, "Suppress the timestamp field for byte-identical reruns");
  cmd->add_option("--seed", opts.seed, "Seed recorded with the run (for randomized fixtures)");
}

std::optional<std::string> read_file(const std::string& path, std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot open file: " + path;
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int fail_input(const std::string& message) {
  std::cerr << "input error: " << message << "\n";
  return conewise::kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cone spectral radii and nonlinear eigenpairs of order-preserving "
               "homogeneous maps, with two-sided certificates"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    bool wants_cert;
    bool wants_trace;
  };
  const Sub subs[] = {
      {"solve", "Compute the cone spectral radius and an eigenpair candidate", false, true},
      {"bracket", "Certified power-iteration bounds for a linear operator", false, false},
      {"certify", "Verify a sub-/super-eigenvector or eigenpair certificate", true, false},
      {"family", "Check attainment of a sup/inf family's value by a rowwise policy", false, false},
      {"oracle", "Independent reference value (Perron root, cycle mean, policy optimum)", false, false},
      {"growth", "Orbit growth-rate estimate from repeated application", false, false},
  };

  CommonOpts opts;
  for (const Sub& s : subs) add_common(app.add_subcommand(s.name, s.help), opts, s.wants_cert, s.wants_trace);

  CLI11_PARSE(app, argc, argv);

  conewise::RunRequest request;
  request.command = app.get_subcommands().front()->get_name();
  request.timestamp = !opts.no_timestamp;
  request.seed = opts.seed;

  if (const char* cap = std::getenv("CONEWISE_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0' || value == 0)
      return fail_input("CONEWISE_MAX_DIM must be a positive integer, got \"" + std::string(cap) + "\"");
    request.max_dim = static_cast<std::size_t>(value);
  }

  std::string error;
  const auto input = read_file(opts.input_path, error);
  if (!input) return fail_input(error);
  request.input_text = *input;
  if (!opts.config_path.empty()) {
    const auto config = read_file(opts.config_path, error);
    if (!config) return fail_input(error);
    request.config_text = *config;
  }
  if (!opts.cert_path.empty()) {
    const auto cert = read_file(opts.cert_path, error);
    if (!cert) return fail_input(error);
    request.cert_text = *cert;
  }

  const conewise::RunOutcome outcome = conewise::run(request);
  std::cout << outcome.stdout_text << "\n";

  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) return fail_input("cannot write file: " + opts.out_path);
    out << outcome.output.dump(2) << "\n";
  }
  if (!opts.trace_path.empty() && !outcome.trace_csv.empty()) {
    std::ofstream trace(opts.trace_path, std::ios::binary);
    if (!trace) return fail_input("cannot write file: " + opts.trace_path);
    trace << outcome.trace_csv;
  }
  return outcome.exit_code;
}
