#include "griphand/bench/runner.hpp"

#include <fstream>
#include <future>
#include <system_error>

#include <fmt/format.h>

#include "griphand/angles.hpp"
#include "griphand/errors.hpp"

namespace griphand::bench {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  }
  out << content;
  out.close();
  if (!out) {
    throw Error(fmt::format("failed writing '{}'", path.string()));
  }
}

void remove_quietly(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
}

ExperimentOutput evaluate_grid(const ScenarioSpec& s, const GridExperiment& e) {
  const auto report = run_grid(s, e);
  return {e.name, "grid", grid_csv(report),
          grid_svg(report, fmt::format("{}: {} alignment of {}", e.name,
                                       alignment::to_string(e.strategy), e.object)),
          fmt::format("{}: {}/{} positions aligned", e.name, report.successes(), report.total())};
}

ExperimentOutput evaluate_alignment(const ScenarioSpec& s, const AlignmentExperiment& e) {
  const auto trace = alignment::simulate_alignment(e.strategy, *s.find_object(e.object),
                                                   s.aperture, e.initial, e.contact, s.material,
                                                   s.alignment_options);
  const auto pose = trace.final_pose();
  return {e.name, "alignment", trace_csv(trace),
          trace_svg(trace, fmt::format("{}: {} alignment of {}", e.name,
                                       alignment::to_string(e.strategy), e.object)),
          fmt::format("{}: {} after {} phases, residual ({}, {}) mm", e.name,
                      to_string(trace.verdict()), trace.records().size(), format_number(pose.x),
                      format_number(pose.y))};
}

ExperimentOutput evaluate_pull(const ScenarioSpec& s, const PullCurveExperiment& e) {
  const auto curves = pull_curves(s, e);
  std::string peaks;
  for (const auto& c : curves) {
    peaks += fmt::format("{}{}% -> {} N", peaks.empty() ? "" : ", ",
                         format_number(c.fraction * 100.0),
                         format_number(sizing::peak_force(c.samples)));
  }
  return {e.name, "pull_curve", pull_csv(curves),
          pull_svg(curves, fmt::format("{}: holding force pull-out", e.name)),
          fmt::format("{}: peaks {}", e.name, peaks)};
}

ExperimentOutput evaluate_arrange(const ScenarioSpec& s, const ArrangeExperiment& e) {
  const auto& screw = *s.find_screw(e.screw);
  const auto trace = screwarr::simulate_arrange(screw, e.plan, s.finger, s.material, e.options);
  return {e.name, "arrange", trace_csv(trace),
          trace_svg(trace, fmt::format("{}: arrange {} (tilt {} deg, d = {} mm)", e.name,
                                       screw.nominal, format_number(rad_to_deg(e.plan.theta_gri)),
                                       format_number(e.plan.opening_d))),
          fmt::format("{}: {} ({} phases)", e.name, to_string(trace.verdict()),
                      trace.records().size())};
}

ExperimentOutput evaluate_transmission(const ScenarioSpec& s, const TransmissionExperiment& e) {
  const auto sweep = sweep_transmission(s.mechanisms, e);
  const char* mech = e.mechanism == MechanismKind::Crank ? "slider-crank" : "parallelogram";
  return {e.name, "transmission", transmission_csv(sweep),
          transmission_svg(sweep, fmt::format("{}: {} travel and torque", e.name, mech)),
          fmt::format("{}: {} sweep, full-stroke travel {} mm", e.name, mech,
                      format_number(sweep.samples.back().travel))};
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "svg") return OutputFormat::Svg;
  if (text == "both") return OutputFormat::Both;
  throw DomainError(fmt::format("unknown output format '{}' (csv, svg or both)", text));
}

TransmissionSweep sweep_transmission(const MechanismBundle& mechanisms,
                                     const TransmissionExperiment& experiment) {
  if (experiment.samples < 2) {
    throw DomainError("a transmission sweep needs at least 2 samples");
  }
  TransmissionSweep sweep;
  sweep.mechanism = experiment.mechanism;
  sweep.force = experiment.force;
  for (std::size_t i = 0; i < experiment.samples; ++i) {
    // Exact endpoints: the last sample is pi/2 itself.
    const double alpha = i + 1 == experiment.samples
                             ? kHalfPi
                             : kHalfPi * static_cast<double>(i) /
                                   static_cast<double>(experiment.samples - 1);
    TransmissionSample s;
    s.alpha = alpha;
    if (experiment.mechanism == MechanismKind::Crank) {
      const auto& crank = mechanisms.crank;
      s.beta = mechkin::crank_beta(crank, alpha);
      s.travel = mechkin::crank_travel(crank, alpha);
      s.approx_travel = mechkin::crank_travel_approx(crank, alpha);
      const auto simplified = mechkin::crank_torque_simplified(crank, alpha, experiment.force);
      s.singular = simplified.at_singularity;
      s.torque = s.singular ? simplified.torque
                            : mechkin::crank_torque(crank, alpha, experiment.force);
    } else {
      const auto& para = mechanisms.para;
      s.beta = experiment.beta;
      s.travel = mechkin::para_travel(para, alpha);
      s.torque = mechkin::para_torque(para, {alpha, experiment.beta}, experiment.force);
      s.reference_torque = mechkin::para_virtual_work_torque(para, alpha, experiment.force);
    }
    sweep.samples.push_back(s);
  }
  return sweep;
}

std::vector<PullCurve> pull_curves(const ScenarioSpec& scenario,
                                   const PullCurveExperiment& experiment) {
  const sizing::HoldingChain chain{scenario.mechanisms.motor, scenario.mechanisms.worm,
                                   scenario.mechanisms.para};
  std::vector<PullCurve> curves;
  for (double fraction : experiment.fractions) {
    auto cfg = experiment.config;
    cfg.torque_fraction = fraction;
    curves.push_back(
        {fraction, sizing::emulate_pull_curve(chain, cfg, experiment.samples, experiment.options)});
  }
  return curves;
}

alignment::GridReport run_grid(const ScenarioSpec& scenario, const GridExperiment& experiment) {
  const auto* obj = scenario.find_object(experiment.object);
  if (!obj) {
    throw DomainError(fmt::format("unknown object '{}'", experiment.object));
  }
  return alignment::run_grid_experiment(experiment.strategy, *obj, scenario.aperture,
                                        experiment.contact, scenario.material,
                                        experiment.ring_diameters, experiment.points_per_ring,
                                        scenario.alignment_options);
}

ExperimentOutput evaluate(const ScenarioSpec& scenario, const Experiment& experiment) {
  struct Visitor {
    const ScenarioSpec& s;
    ExperimentOutput operator()(const GridExperiment& e) const { return evaluate_grid(s, e); }
    ExperimentOutput operator()(const AlignmentExperiment& e) const {
      return evaluate_alignment(s, e);
    }
    ExperimentOutput operator()(const PullCurveExperiment& e) const { return evaluate_pull(s, e); }
    ExperimentOutput operator()(const ArrangeExperiment& e) const {
      return evaluate_arrange(s, e);
    }
    ExperimentOutput operator()(const TransmissionExperiment& e) const {
      return evaluate_transmission(s, e);
    }
  };
  return std::visit(Visitor{scenario}, experiment);
}

std::vector<std::filesystem::path> write_outputs(const ExperimentOutput& output,
                                                 const RunOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  std::vector<std::filesystem::path> written;
  try {
    if (options.format != OutputFormat::Svg) {
      const auto path = options.out_dir / (output.name + ".csv");
      write_file(path, output.csv);
      written.push_back(path);
    }
    if (options.format != OutputFormat::Csv) {
      const auto path = options.out_dir / (output.name + ".svg");
      write_file(path, output.svg);
      written.push_back(path);
    }
  } catch (...) {
    remove_quietly(written);
    throw;
  }
  return written;
}

std::vector<std::filesystem::path> run(const ScenarioSpec& scenario,
                                       std::string_view experiment_name,
                                       const RunOptions& options) {
  const auto* experiment = scenario.find_experiment(experiment_name);
  if (!experiment) {
    throw DomainError(fmt::format("scenario has no experiment named '{}'", experiment_name));
  }
  return write_outputs(evaluate(scenario, *experiment), options);
}

std::vector<ExperimentOutput> run_all(const ScenarioSpec& scenario, const RunOptions& options) {
  std::vector<std::future<ExperimentOutput>> pending;
  pending.reserve(scenario.experiments.size());
  for (const auto& experiment : scenario.experiments) {
    pending.push_back(std::async(std::launch::async,
                                 [&scenario, &experiment] { return evaluate(scenario, experiment); }));
  }
  std::vector<ExperimentOutput> outputs;
  for (auto& f : pending) {
    outputs.push_back(f.get());
  }

  std::vector<std::filesystem::path> written;
  try {
    for (const auto& out : outputs) {
      auto files = write_outputs(out, options);
      written.insert(written.end(), files.begin(), files.end());
    }
  } catch (...) {
    remove_quietly(written);
    throw;
  }
  return outputs;
}

}  // namespace griphand::bench
