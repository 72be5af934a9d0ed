// Command-line runner: configures a scenario, executes it, and writes the
// tabular results as CSV. Exit codes: 0 success, 2 usage/configuration
// problem, 3 numeric guard violation.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctqec/scenario.hpp"

namespace {

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find(',', begin);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(begin, end - begin);
    if (!item.empty()) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ctqec::ConfigError("sweep: cannot parse value '" + item + "'");
      }
    }
    if (end == text.size()) break;
    begin = end + 1;
  }
  return values;
}

void apply_sets(ctqec::SimConfig& config, const std::vector<std::string>& sets) {
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ctqec::ConfigError("--set expects key=value, got '" + kv + "'");
    ctqec::apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time error-correction scenario runner"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_path, param, values_text;
  std::vector<std::string> sets;

  CLI::App* run = app.add_subcommand("run", "Run one scenario and emit CSV rows");
  run->add_option("scenario", scenario, "One of markov-1q, markov-3q, nonmarkov-1q, "
                                        "nonmarkov-3q, adl-sme, jump-weakmeas, zeno-probe")
      ->required();
  run->add_option("--config", config_path, "Flat key = value configuration file");
  run->add_option("--set", sets, "Override a configuration key (key=value)");
  run->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run one scenario per parameter value");
  sweep->add_option("--param", param, "kappa, lambda, gamma, dt, or n_traj")->required();
  sweep->add_option("--values", values_text, "Comma-separated list of values")->required();
  sweep->add_option("--config", config_path, "Flat key = value configuration file");
  sweep->add_option("--set", sets, "Override a configuration key (key=value)");
  sweep->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ctqec::SimConfig config;
    if (!config_path.empty()) config = ctqec::parse_config_file(config_path);
    apply_sets(config, sets);

    if (run->parsed()) {
      config.scenario = scenario;
      ctqec::ScenarioReport report = ctqec::run_scenario(config);
      if (out_path.empty()) {
        ctqec::print_summary(report, std::cerr);
        ctqec::write_csv(report, std::cout);
      } else {
        ctqec::write_csv_file(report, out_path);
        ctqec::print_summary(report, std::cout);
      }
    } else {
      if (!ctqec::is_known_scenario(config.scenario))
        throw ctqec::ConfigError("sweep: config must name a valid scenario");
      ctqec::SweepResult result = ctqec::run_sweep(config, param, parse_values(values_text));
      if (out_path.empty()) {
        ctqec::write_sweep_csv(result, std::cout);
      } else {
        ctqec::write_sweep_csv_file(result, out_path);
        std::cout << "sweep: " << result.rows.size() << " runs written to " << out_path
                  << "\n";
      }
    }
  } catch (const ctqec::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ctqec::NumericGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
