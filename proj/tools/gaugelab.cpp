// gaugelab: run one named experiment and write a JSON report.
//
//   gaugelab <experiment> [--config <path>] [--seed S] [--samples N]
//            [--out <path>] [--strict-deterministic]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gaugelab/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int config_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return 2;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge-invariant state experiments on finite lattices", "gaugelab"};
  std::string experiment, config_path, out_path;
  std::uint64_t seed = 0, samples = 0;
  bool strict = false;
  app.add_option("experiment", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(gaugelab::experiment_names()));
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Override the RNG seed");
  auto* samples_opt = app.add_option("--samples", samples, "Override the sample count");
  app.add_option("--out", out_path, "Report path (CSV tables are written alongside)");
  app.add_flag("--strict-deterministic", strict, "Single-threaded, fixed-order reduction");
  app.set_version_flag("--version", gaugelab::kVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return config_error("usage", e.what());
  }

  gaugelab::ExperimentConfig cfg;
  try {
    if (config_path.empty()) {
      cfg = gaugelab::ExperimentConfig::defaults(experiment);
    } else {
      std::ifstream in(config_path);
      cfg = gaugelab::ExperimentConfig::from_json(json::parse(in), experiment);
    }
    if (*seed_opt) cfg.seed = seed;
    if (*samples_opt) cfg.samples = samples;
    if (!out_path.empty()) cfg.out = out_path;
    if (strict) cfg.strict_deterministic = true;
    cfg.validate();
  } catch (const json::exception& e) {
    return config_error("config", e.what());
  } catch (const gaugelab::InvalidInput& e) {
    return config_error("config", e.what());
  }

  gaugelab::Report report;
  try {
    report = gaugelab::run_experiment(cfg);
  } catch (const gaugelab::InvalidInput& e) {
    return config_error("config", e.what());
  } catch (const gaugelab::NumericalError& e) {
    std::cerr << json{{"error", "numerical"}, {"message", e.what()}, {"measured", e.measured()}}.dump() << '\n';
    return 1;
  }

  const std::string text = report.to_json().dump(2) + "\n";
  if (cfg.out) {
    const fs::path out(*cfg.out);
    write_file(out, text);
    for (const auto& table : report.tables) {
      fs::path csv = out;
      csv.replace_filename(out.stem().string() + "." + table.name + ".csv");
      write_file(csv, table.to_csv());
    }
  } else {
    std::cout << text;
  }
  for (const auto& c : report.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.measured << ' ' << c.relation << ' '
              << c.bound << '\n';
  return report.passed() ? 0 : 1;
}
