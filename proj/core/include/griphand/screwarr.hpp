#pragma once

// Screw arrangement with the positioning fingers: pick the screw, tilt the
// hand by theta_gri, open the fingers by an extra distance d so the screw
// drops and slides into the end corner, then tilt back so it stands upright.

#include <string>
#include <vector>

#include "griphand/angles.hpp"
#include "griphand/material.hpp"
#include "griphand/trace.hpp"

namespace griphand::screwarr {

/// Piecewise positioning-finger beam. l2 is the round segment BC that twists;
/// l1 is the mount segment and takes no part in the deflection.
struct FingerGeometry {
  double l1 = 30.0;
  double l2 = 10.0;
  double l3 = 20.0;
  double l4 = 15.0;
  double beam_D = 6.0;
  double theta_f = deg_to_rad(20.0);
};

struct ScrewSpec {
  std::string nominal = "M3x8";
  double mass = 0.0009;  // kg
  double head_D = 5.5;
  double shank_d = 3.0;
  double length = 8.0;
};

struct TiltPlan {
  double theta_gri = deg_to_rad(40.0);
  double opening_d = 3.0;
};

struct DeflectionResult {
  double d_E = 0.0;
  double d_Et = 0.0;
  double d_Eb = 0.0;
  double theta_B = 0.0;
  double phi_C = 0.0;
  double phi_D = 0.0;
};

/// Segment form (default) multiplies the rotation at C by the twisting segment
/// length l2. Span form multiplies it by the distal span l3 + l4, as plain
/// superposition of a cantilever would.
enum class DeflectionForm { Segment, Span };

struct OpeningRange {
  double lower = 0.0;  // exclusive
  double upper = 0.0;  // exclusive

  bool contains(double d) const noexcept { return d > lower && d < upper; }
};

struct ArrangeOptions {
  double grip_force = 3.0;  // N, lateral load on the fingertips while holding
  DeflectionForm form = DeflectionForm::Segment;
};

std::vector<std::string> violations(const FingerGeometry& geom);
std::vector<std::string> violations(const ScrewSpec& screw);
std::vector<std::string> violations(const TiltPlan& plan);

/// Second moment of area and polar moment of the round beam, mm^4.
double second_moment(double beam_D);
double polar_moment(double beam_D);

/// Tilt above which a released screw slides: atan(mu0) + theta_f / 2, i.e.
/// the inclined-plane condition tan(theta_gri - theta_f/2) > mu0.
/// DomainError when the result reaches 90 deg.
double min_tilt_angle(double theta_f, double mu0);

/// True when the screw slides at this tilt (strict inequality).
bool slides_at(double theta_gri, double theta_f, double mu0);

DeflectionResult fingertip_deflection(const FingerGeometry& geom, const MaterialSpec& mat,
                                      double force_F, DeflectionForm form = DeflectionForm::Segment);

/// Open interval (d_E, head_D) of usable extra openings.
/// NoValidOpeningError when d_E >= head_D.
OpeningRange valid_opening_range(const DeflectionResult& defl, const ScrewSpec& screw);

/// Held -> Tilted -> DroppedSliding -> AtEndCorner -> Vertical. The release
/// is checked first (Pinched when d <= d_E, Lost when d >= head_D), then the
/// slope (Stuck when theta_gri <= min_tilt_angle).
StrategyTrace simulate_arrange(const ScrewSpec& screw, const TiltPlan& plan,
                               const FingerGeometry& geom, const MaterialSpec& mat,
                               const ArrangeOptions& options = {});

}  // namespace griphand::screwarr
