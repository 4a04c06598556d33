#pragma once

// Transmission kinematics and statics of the two grippers.
//
// Inner gripper: slider-crank (crank R, connecting link L). Outer gripper:
// horizontally arranged parallelogram (driven crank R, finger link L) fed by a
// worm stage. Lengths are mm, forces N, torques N*mm, angles rad. The motor
// angle alpha is restricted to the opening stroke [0, pi/2]. Travel S is the
// displacement of a single finger; the jaw opening changes by 2S.

#include <string>
#include <vector>

namespace griphand::mechkin {

struct CrankSpec {
  double R = 10.0;
  double L = 10.0;
};

struct ParallelogramSpec {
  double R = 20.0;
  double L = 50.0;
};

struct WormSpec {
  double ratio = 50.0;
  double efficiency = 0.4;
  bool self_locking = true;
};

struct KinematicState {
  double alpha = 0.0;
  double beta = 0.0;
};

struct TransmissionResult {
  double travel_S = 0.0;
  double torque_M = 0.0;
  double force_F = 0.0;
};

struct WormOutput {
  double output_torque = 0.0;
  // Output-side torque the stage resists without motor effort. Infinite for a
  // self-locking worm, otherwise only what the motor is actively supplying.
  double backdrive_limit = 0.0;
};

/// Simplified inner-gripper torque 2*F*R*sin(alpha), valid on the closed
/// stroke including alpha = pi/2 where the printed form divides by zero.
struct TorqueEstimate {
  double torque = 0.0;
  bool at_singularity = false;
};

// Invariant checks; return human-readable violations (empty when valid).
std::vector<std::string> violations(const CrankSpec& spec);
std::vector<std::string> violations(const ParallelogramSpec& spec);
std::vector<std::string> violations(const WormSpec& spec);

/// Slider angle from the closure constraint sin(beta) = (R/L) sin(alpha).
/// Throws GeometryError when R*sin(alpha) > L.
double crank_beta(const CrankSpec& spec, double alpha);

/// S = R + L - R cos(alpha) - L cos(beta).
double crank_travel(const CrankSpec& spec, double alpha);

/// S = 2R(1 - cos(alpha)); exact when R == L.
double crank_travel_approx(const CrankSpec& spec, double alpha);

/// M = (F / cos(alpha)) R sin(2 alpha). DomainError at alpha >= pi/2.
double crank_torque(const CrankSpec& spec, double alpha, double force_F);

TorqueEstimate crank_torque_simplified(const CrankSpec& spec, double alpha, double force_F);

/// S = R(1 - cos(alpha)).
double para_travel(const ParallelogramSpec& spec, double alpha);

/// M = F(L cos(beta) - R sin(alpha)), sign kept as computed.
double para_torque(const ParallelogramSpec& spec, const KinematicState& state, double force_F);

/// Virtual-work torque F * dS/dalpha = F R sin(alpha) of the parallelogram
/// travel map. Diagnostic companion to para_torque.
double para_virtual_work_torque(const ParallelogramSpec& spec, double alpha, double force_F);

WormOutput worm_output(const WormSpec& spec, double motor_torque);

/// Motor angle that produces target_S of finger travel. Bracketed bisection
/// on the monotone travel map; RangeError outside [0, travel(pi/2)].
double invert_travel(const CrankSpec& spec, double target_S);
double invert_travel(const ParallelogramSpec& spec, double target_S);

TransmissionResult crank_transmission(const CrankSpec& spec, double alpha, double force_F);
TransmissionResult para_transmission(const ParallelogramSpec& spec, const KinematicState& state,
                                     double force_F);

}  // namespace griphand::mechkin
