#pragma once

// Holding-force chain of the outer gripper:
//   motor torque fraction -> worm stage -> parallelogram -> finger normal
//   force -> Coulomb pull-out capacity.

#include <cstddef>
#include <string>
#include <vector>

#include "griphand/angles.hpp"
#include "griphand/mechkin.hpp"

namespace griphand::sizing {

/// stall_torque in N*mm. The default is a datasheet value for the named
/// servo and should be overridden for other motors.
struct MotorSpec {
  double stall_torque = 4100.0;
  std::string name = "XM430-W350";
};

struct PullTestConfig {
  double torque_fraction = 0.0334;
  mechkin::KinematicState grip_state{deg_to_rad(30.0), 0.0};
  double mu_fingers = 0.35;
  double pull_speed = 1.0;  // mm/s, only used to label the time axis
};

struct HoldingChain {
  MotorSpec motor;
  mechkin::WormSpec worm;
  mechkin::ParallelogramSpec para;
};

struct PullCurveOptions {
  std::size_t contact_count = 2;
  double slip_ratio = 0.8;     // post-peak sliding level as a fraction of the peak
  double ramp_share = 0.6;     // share of samples spent on the elastic ramp
  double displacement = 10.0;  // mm, total pull stroke
};

struct PullSample {
  double displacement = 0.0;  // mm
  double time = 0.0;          // s
  double force = 0.0;         // N
};

std::vector<std::string> violations(const MotorSpec& motor);
std::vector<std::string> violations(const PullTestConfig& cfg);

/// Lever arm L cos(beta) - R sin(alpha) that converts motor-side torque into
/// finger force at the grip pose.
double grip_lever(const mechkin::ParallelogramSpec& para, const mechkin::KinematicState& state);

/// F = fraction * stall * ratio * efficiency / (L cos(beta) - R sin(alpha)).
/// SingularGripError when the lever is not positive.
double finger_normal_force(const MotorSpec& motor, const mechkin::WormSpec& worm,
                           const mechkin::ParallelogramSpec& para, const PullTestConfig& cfg);

/// contact_count * mu * F_normal.
double pull_out_capacity(double normal_force, double mu_fingers, std::size_t contact_count);

/// Illustrative force-displacement curve: linear ramp whose last sample is
/// exactly the pull-out capacity, then a flat sliding level.
std::vector<PullSample> emulate_pull_curve(const HoldingChain& chain, const PullTestConfig& cfg,
                                           std::size_t samples,
                                           const PullCurveOptions& options = {});

double peak_force(const std::vector<PullSample>& series);

}  // namespace griphand::sizing
