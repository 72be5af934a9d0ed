#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ctqec/code.hpp"
#include "ctqec/integrators.hpp"

namespace ctqec {

/// Configuration / usage problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numeric-guard violations (stability bound, non-finite output); exit code 3.
struct NumericGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One scenario run: tabular per-time data plus an ordered summary. Wall time
/// is reported on stdout only, never in the CSV, so identical configs produce
/// byte-identical files.
struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;
  double wall_time_seconds = 0.0;
};

/// Flat key = value file; '#' starts a comment. Unknown keys are rejected.
SimConfig parse_config_file(const std::string& path);
void apply_override(SimConfig& config, const std::string& key, const std::string& value);
std::vector<std::pair<std::string, std::string>> config_echo(const SimConfig& config);

bool is_known_scenario(const std::string& name);

/// Runs one of {markov-1q, markov-3q, nonmarkov-1q, nonmarkov-3q, adl-sme,
/// jump-weakmeas, zeno-probe}. Throws ConfigError for unknown scenarios and
/// NumericGuardError for guard violations.
ScenarioReport run_scenario(const SimConfig& config);

/// CSV: header row, comma separated, LF endings, 17 significant digits.
void write_csv(const ScenarioReport& report, std::ostream& out);
void write_csv_file(const ScenarioReport& report, const std::string& path);
void print_summary(const ScenarioReport& report, std::ostream& out);

/// One run per value of the swept parameter; per-run seeds derive from
/// (seed, run index). Rows carry the swept value and the run's summary.
struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

SweepResult run_sweep(const SimConfig& base, const std::string& param,
                      const std::vector<double>& values);
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);
void write_sweep_csv_file(const SweepResult& sweep, const std::string& path);

/// Per-step drift of the logical subsystem state, reported next to the
/// code-space infidelity and sqrt(alpha (1-alpha)); empirical diagnostic
/// only, no pass/fail attached.
struct DriftSeries {
  std::vector<double> times;
  std::vector<double> drift;             // ||delta rho_A||_1 / delta t
  std::vector<double> one_minus_alpha;
  std::vector<double> bound_term;        // sqrt(alpha (1 - alpha))
};

DriftSeries drift_diagnostic(const TrajectoryRecord& record, const CodeSpec& code,
                             int n_bath_qubits);

}  // namespace ctqec
