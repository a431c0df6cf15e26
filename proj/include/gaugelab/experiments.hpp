#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaugelab/means.hpp"

namespace gaugelab {

inline constexpr const char* kVersion = "0.3.0";
inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

/// Parameters for one experiment run. Parsed from a versioned JSON document;
/// command-line flags override file values.
struct ExperimentConfig {
  std::string experiment;
  std::vector<int> dims{2};
  int colors = 2;
  std::string weights = "uniform";  // uniform | random
  std::string group = "U";          // U | SU | torus | Z<q>
  Sampler sampler = Sampler::MonteCarloHaar;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 7;
  std::vector<std::uint64_t> sweep{100, 1000, 10000};  // sample counts for convergence tables
  std::vector<int> sites{2, 4, 8, 16, 32};             // weak-vs-norm refinement sizes
  std::vector<std::string> groups{"U1", "U2", "U3", "SU2", "SU3"};  // haar-moments, <family><n>
  std::string initial_state = "uniform-superposition";  // | random-pure | fock | maximally-mixed
  std::size_t pairs = 200;
  std::size_t test_fields = 16;
  std::map<std::string, double> tolerances;
  std::optional<std::string> out;
  bool strict_deterministic = false;

  static ExperimentConfig defaults(const std::string& experiment);
  static ExperimentConfig from_json(const nlohmann::json& j, const std::string& experiment);
  nlohmann::json to_json() const;

  LatticeSpec lattice() const;
  GroupKind kind() const { return GroupKind::parse(group); }
  MeanConfig mean(std::uint64_t samples_override = 0) const;
  double tol(const std::string& name) const;

  /// Throws InvalidInput for unknown experiments or exceeded size caps.
  void validate() const;
};

const std::vector<std::string>& experiment_names();

struct CheckRecord {
  std::string name;
  double measured;
  double bound;
  std::string relation;  // "<=" or ">="
  bool pass;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
};

struct Report {
  ExperimentConfig config;
  std::string anchor;
  std::vector<CheckRecord> checks;
  std::vector<Table> tables;
  std::vector<nlohmann::json> records;  // convergence records and other audit data
  std::vector<std::string> notes;
  double wall_clock_seconds = 0.0;

  bool passed() const;
  /// Numeric content only; byte-identical across repeated strict runs.
  nlohmann::json payload() const;
  /// Payload plus run metadata (wall clock, version).
  nlohmann::json to_json() const;

  void check(std::string name, double measured, double bound);
  /// Records pass iff measured >= bound.
  void check_at_least(std::string name, double measured, double bound);
};

Report run_experiment(const ExperimentConfig& cfg);

}  // namespace gaugelab
