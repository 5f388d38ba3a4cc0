#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skewlab/cocycle.hpp"

namespace skewlab {

using Json = nlohmann::ordered_json;

const char* library_version();

struct SystemBlock {
  int k = 2;
  TrigPolynomial g;
  TrigPolynomial tau;
  int winding = 0;
};

struct NoiseBlock {
  std::uint64_t seed = 1;
  int J = 256;
  std::vector<std::string> map_basis;
  std::vector<std::string> ceiling_basis;
  double epsilon = 0.0;
};

/// Parsed, validated and default-completed configuration.
struct ExperimentConfig {
  int schema_version = 1;
  SystemBlock system;
  NoiseBlock noise;
  std::string command;
  Json params = Json::object();  // command parameters with defaults filled in

  static ExperimentConfig from_json(const Json& j);
  static ExperimentConfig from_file(const std::string& path);
  Json to_json() const;

  SkewProductSystem make_system() const;
  PerturbationFamily make_family() const;
  NoiseModel make_model() const;

  bool operator==(const ExperimentConfig& o) const { return to_json() == o.to_json(); }
};

/// Basis ids: "sin<j>", "cos<j>". Map directions are scaled by 1/(2 pi j) so |u'| <= 1.
TrigPolynomial basis_function(const std::string& id, bool map_direction);

const std::vector<std::string>& command_names();

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string str() const;
};

struct ExperimentOutput {
  Json report;                                  // deterministic payload
  std::map<std::string, CsvTable> tables;       // file name -> table
  int exit_code = 0;                            // 0 ok, 2 numerical failure
  double seconds = 0.0;
};

/// Runs a validated configuration in-process.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

/// Full CLI contract: load, validate, run, write report.json, timing.json and CSVs into out_dir.
/// Returns 0 on success, 1 on configuration errors, 2 on numerical failure.
int run_command(const std::string& command, const std::string& config_path, const std::string& out_dir,
                std::optional<std::uint64_t> seed_override = std::nullopt, std::string* message = nullptr);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

std::string serialize_report(const Json& report);

}  // namespace skewlab
