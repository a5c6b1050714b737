#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "dispersia/config.hpp"
#include "dispersia/experiments.hpp"

namespace {

using dispersia::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

int run(const std::string& path) {
  try {
    const auto config = dispersia::ExperimentConfig::load(path);
    const auto result = dispersia::run_experiment(config);
    const auto dir = dispersia::output_directory(config);
    dispersia::write_outputs(result, dir);
    std::cout << result.summary() << "outputs: " << dir.string() << "\n";
    return code(result.passed() ? ExitCode::ok : ExitCode::verdict_failed);
  } catch (const std::exception& e) {
    const ExitCode c = dispersia::exit_code_for(e);
    std::cerr << "dispersia: " << e.what() << "\n";
    return code(c);
  }
}

void list() {
  for (const auto& e : dispersia::list_experiments()) {
    std::cout << std::left << std::setw(26) << e.name << e.description << "\n"
              << std::setw(26) << "" << "[" << e.anchor << "]\n";
  }
}

int admissible(int m, int n, int grid) {
  try {
    const auto table = dispersia::admissible_region_table(m, n, grid);
    for (std::size_t i = 0; i < table.header.size(); ++i) std::cout << (i ? "," : "") << table.header[i];
    std::cout << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
      std::cout << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "dispersia: " << e.what() << "\n";
    return code(ExitCode::usage);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersive decay experiments on product spaces"};
  app.set_version_flag("--version", std::string(dispersia::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
  run_cmd->add_option("config", config_path, "Config file")->required();

  auto* list_cmd = app.add_subcommand("list", "List registered experiments");

  int m = 0;
  int n = 0;
  int grid = 12;
  auto* adm_cmd = app.add_subcommand("admissible", "Classify the lattice (i/d, j/d) against T(m, n)");
  adm_cmd->add_option("--m", m, "Dimension of the first factor")->required();
  adm_cmd->add_option("--n", n, "Dimension of the second factor")->required();
  adm_cmd->add_option("--grid", grid, "Lattice denominator d")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::usage);
  }

  if (*run_cmd) return run(config_path);
  if (*list_cmd) {
    list();
    return 0;
  }
  if (*adm_cmd) return admissible(m, n, grid);
  return code(ExitCode::usage);
}
