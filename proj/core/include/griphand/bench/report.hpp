#pragma once

// CSV tables and SVG plots for experiment results. Output is a pure function
// of the input: numbers are printed with 9 significant digits (CSV) or fixed
// 3 decimals (SVG coordinates), so reruns are byte-identical.
//
// Every SVG marks its data elements with a class attribute so they can be
// counted: class="point" (grid), class="curve" (pull and transmission),
// class="phase" (strategy traces).

#include <span>
#include <string>
#include <vector>

#include "griphand/alignment.hpp"
#include "griphand/bench/scenario.hpp"
#include "griphand/sizing.hpp"
#include "griphand/trace.hpp"

namespace griphand::bench {

struct PullCurve {
  double fraction = 0.0;
  std::vector<sizing::PullSample> samples;
};

struct TransmissionSample {
  double alpha = 0.0;  // rad
  double beta = 0.0;   // rad
  double travel = 0.0;
  double approx_travel = 0.0;  // crank only
  double torque = 0.0;
  double reference_torque = 0.0;  // parallelogram: virtual-work companion
  bool singular = false;          // crank: torque taken from the simplified limit
};

struct TransmissionSweep {
  MechanismKind mechanism = MechanismKind::Crank;
  double force = 1.0;
  std::vector<TransmissionSample> samples;
};

std::string format_number(double value);

/// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(std::string_view text);

std::string grid_csv(const alignment::GridReport& report);
std::string trace_csv(const StrategyTrace& trace);
std::string pull_csv(std::span<const PullCurve> curves);
std::string transmission_csv(const TransmissionSweep& sweep);

std::string grid_svg(const alignment::GridReport& report, std::string_view title);
std::string trace_svg(const StrategyTrace& trace, std::string_view title);
std::string pull_svg(std::span<const PullCurve> curves, std::string_view title);
std::string transmission_svg(const TransmissionSweep& sweep, std::string_view title);

}  // namespace griphand::bench
