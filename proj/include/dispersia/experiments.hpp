#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dispersia/config.hpp"
#include "dispersia/decay.hpp"

namespace dispersia {

inline constexpr const char* kVersion = DISPERSIA_VERSION;

/// Process exit codes of the CLI.
enum class ExitCode : int {
  ok = 0,
  verdict_failed = 1,
  usage = 2,
  config_error = 3,
  unknown_experiment = 4,
  hypothesis_violation = 5,
  numerical_error = 6,
  io_error = 7,
};

class UnknownExperiment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::string anchor;
};

/// Registered experiments in a fixed order.
const std::vector<ExperimentInfo>& list_experiments();

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

/// One CSV file: a header row and string cells.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table series_table(const std::string& name, const Series& series);
std::string format_number(double x);

/// Every (1/p, 1/q) = (i/d, j/d) in [0, 1/2]^2 with membership in T(m, n) and admissibility
/// relative to the index m/2 + n/2.
Table admissible_region_table(int m, int n, int denominator);

struct ExperimentResult {
  std::string experiment;
  std::string fingerprint;
  nlohmann::json results;
  std::vector<Table> tables;
  std::vector<Check> checks;

  bool passed() const;
  nlohmann::json report() const;
  std::string summary() const;
};

/// Runs the experiment named in the config. Throws UnknownExperiment, ConfigError,
/// HypothesisViolation and the numerical errors of the library.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// output.directory (default results/<experiment>) resolved against $DISPERSIA_OUTPUT_ROOT
/// when set, else against the working directory.
std::filesystem::path output_directory(const ExperimentConfig& config);

/// Writes every table as <name>.csv plus report.json and summary.txt, each by write-then-rename.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& directory);

/// Exit code for an exception escaping run_experiment or write_outputs.
ExitCode exit_code_for(const std::exception& e);

}  // namespace dispersia
