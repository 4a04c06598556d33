#include "griphand/sizing.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "griphand/errors.hpp"

namespace griphand::sizing {

namespace {

void require(const std::vector<std::string>& problems) {
  if (!problems.empty()) {
    throw DomainError(problems.front());
  }
}

}  // namespace

std::vector<std::string> violations(const MotorSpec& motor) {
  std::vector<std::string> out;
  if (!(motor.stall_torque > 0.0)) {
    out.push_back(fmt::format("MotorSpec.stall_torque: must be > 0 (got {})", motor.stall_torque));
  }
  return out;
}

std::vector<std::string> violations(const PullTestConfig& cfg) {
  std::vector<std::string> out;
  if (!(cfg.torque_fraction > 0.0 && cfg.torque_fraction <= 1.0)) {
    out.push_back(fmt::format("PullTestConfig.torque_fraction: must be in (0, 1] (got {})",
                              cfg.torque_fraction));
  }
  if (!(cfg.mu_fingers >= 0.0)) {
    out.push_back("PullTestConfig.mu_fingers: must be >= 0");
  }
  if (!(cfg.pull_speed > 0.0)) {
    out.push_back("PullTestConfig.pull_speed: must be > 0");
  }
  return out;
}

double grip_lever(const mechkin::ParallelogramSpec& para, const mechkin::KinematicState& state) {
  return para.L * std::cos(state.beta) - para.R * std::sin(state.alpha);
}

double finger_normal_force(const MotorSpec& motor, const mechkin::WormSpec& worm,
                           const mechkin::ParallelogramSpec& para, const PullTestConfig& cfg) {
  require(violations(motor));
  require(mechkin::violations(para));
  // torque_fraction = 0 is allowed here (no grip); the config invariant only
  // matters for the pull test itself.
  if (!(cfg.torque_fraction >= 0.0 && cfg.torque_fraction <= 1.0)) {
    throw DomainError(
        fmt::format("torque fraction must be in [0, 1] (got {})", cfg.torque_fraction));
  }
  const double lever = grip_lever(para, cfg.grip_state);
  if (!(lever > 0.0)) {
    throw SingularGripError(fmt::format(
        "lever L cos(beta) - R sin(alpha) = {:.6g} mm is not positive at this pose", lever));
  }
  const auto output = mechkin::worm_output(worm, cfg.torque_fraction * motor.stall_torque);
  return output.output_torque / lever;
}

double pull_out_capacity(double normal_force, double mu_fingers, std::size_t contact_count) {
  if (!(normal_force >= 0.0) || !(mu_fingers >= 0.0)) {
    throw DomainError("normal force and friction coefficient must be >= 0");
  }
  return static_cast<double>(contact_count) * mu_fingers * normal_force;
}

std::vector<PullSample> emulate_pull_curve(const HoldingChain& chain, const PullTestConfig& cfg,
                                           std::size_t samples, const PullCurveOptions& options) {
  require(violations(cfg));
  if (samples < 2) {
    throw DomainError("a pull curve needs at least 2 samples");
  }
  if (!(options.slip_ratio >= 0.0 && options.slip_ratio <= 1.0)) {
    throw DomainError("slip ratio must be in [0, 1]");
  }
  if (!(options.ramp_share > 0.0 && options.ramp_share <= 1.0)) {
    throw DomainError("ramp share must be in (0, 1]");
  }
  if (!(options.displacement > 0.0)) {
    throw DomainError("pull displacement must be > 0");
  }

  const double normal = finger_normal_force(chain.motor, chain.worm, chain.para, cfg);
  const double peak = pull_out_capacity(normal, cfg.mu_fingers, options.contact_count);

  const auto ramp = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(options.ramp_share * static_cast<double>(samples))), 2,
      samples);
  const double step = options.displacement / static_cast<double>(samples - 1);

  std::vector<PullSample> series;
  series.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    PullSample s;
    s.displacement = step * static_cast<double>(i);
    s.time = s.displacement / cfg.pull_speed;
    if (i + 1 == ramp) {
      s.force = peak;
    } else if (i < ramp) {
      s.force = peak * static_cast<double>(i) / static_cast<double>(ramp - 1);
    } else {
      s.force = options.slip_ratio * peak;
    }
    series.push_back(s);
  }
  return series;
}

double peak_force(const std::vector<PullSample>& series) {
  double peak = 0.0;
  for (const auto& s : series) {
    peak = std::max(peak, s.force);
  }
  return peak;
}

}  // namespace griphand::sizing
