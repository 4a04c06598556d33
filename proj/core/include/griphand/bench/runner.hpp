#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "griphand/bench/report.hpp"
#include "griphand/bench/scenario.hpp"

namespace griphand::bench {

enum class OutputFormat { Csv, Svg, Both };

OutputFormat parse_format(std::string_view text);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::Both;
};

/// In-memory result of one experiment.
struct ExperimentOutput {
  std::string name;
  std::string type;
  std::string csv;
  std::string svg;
  std::string summary;  // one human-readable line
};

TransmissionSweep sweep_transmission(const MechanismBundle& mechanisms,
                                     const TransmissionExperiment& experiment);
std::vector<PullCurve> pull_curves(const ScenarioSpec& scenario,
                                   const PullCurveExperiment& experiment);
alignment::GridReport run_grid(const ScenarioSpec& scenario, const GridExperiment& experiment);

ExperimentOutput evaluate(const ScenarioSpec& scenario, const Experiment& experiment);

/// Writes <out_dir>/<name>.csv and/or .svg. Files already written by this
/// call are removed if a later write fails.
std::vector<std::filesystem::path> write_outputs(const ExperimentOutput& output,
                                                 const RunOptions& options);

/// Evaluates and writes one named experiment. Error if the name is unknown.
std::vector<std::filesystem::path> run(const ScenarioSpec& scenario,
                                       std::string_view experiment_name,
                                       const RunOptions& options);

/// Evaluates every experiment (concurrently) and writes them in declaration
/// order. On any failure, all files written by this call are removed.
std::vector<ExperimentOutput> run_all(const ScenarioSpec& scenario, const RunOptions& options);

}  // namespace griphand::bench
