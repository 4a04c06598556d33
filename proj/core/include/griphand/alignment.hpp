#pragma once

// Friction-based alignment of cylindrical objects by the positioning
// fingers, and a quasi-static planar simulator for the two alignment
// strategies:
//
//   Stretch  closed tips enter the object's hole and open against its wall,
//            dragging the object onto the hand axis.
//   Squeeze  the holding fingers close softly along x, the positioning
//            fingers close along y, then the holding fingers close firmly.
//
// Capture model: a stretch succeeds iff the planar error is within
// (hole_d - inner_closed_width) / 2; a squeeze succeeds iff each axis error is
// within (jaw opening - outer_D) / 2 of the gripper closing on that axis.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "griphand/angles.hpp"
#include "griphand/material.hpp"
#include "griphand/trace.hpp"

namespace griphand::alignment {

inline constexpr double kStandardGravity = 9.81;

/// Geometric slack (mm) applied to capture comparisons so that points placed
/// exactly on a capture boundary are not rejected by rounding.
inline constexpr double kCaptureTolerance = 1e-9;

struct ObjectSpec {
  std::string name;
  double outer_D = 10.0;
  double hole_d = 0.0;  // 0 for solid objects
  double height_H = 10.0;
  double mass = 0.01;  // kg
  double mu_ground = 0.2;
  bool may_stick = false;  // tends to jam tilted; adds a PushOut phase
};

/// One positioning-finger contact inside the hole. theta is the contact
/// half-angle; force_F is the force of a single finger.
struct StretchContact {
  double theta = deg_to_rad(75.0);
  double force_F = 1.0;
  double gravity_g = kStandardGravity;
};

struct GripperAperture {
  double inner_closed_width = 5.2;
  double inner_max_stretch = 30.0;
  double outer_max_open = 60.0;
};

struct Direction {
  double x = 1.0;
  double y = 0.0;
};

enum class Strategy { Stretch, Squeeze };

std::string_view to_string(Strategy strategy);

struct AlignmentOptions {
  double light_object_mass = 0.1;  // kg; at or below, holders stay open
  double soft_close_force = 2.0;   // N, reporting only
  double firm_close_force = 20.0;  // N, reporting only
};

std::vector<std::string> violations(const ObjectSpec& obj);
std::vector<std::string> violations(const StretchContact& contact);
std::vector<std::string> violations(const GripperAperture& aperture);

/// 2 F sin(theta) cos(theta) > 2 mu0 F cos(theta) + mu_og m g, strictly.
bool stretch_feasible(const StretchContact& contact, const ObjectSpec& obj,
                      const MaterialSpec& mat);

/// Smallest per-finger force above which stretch_feasible holds:
/// mu_og m g / (2 cos(theta) (sin(theta) - mu0)). InfeasibleError when
/// sin(theta) <= mu0, or at theta = 90 deg with nonzero ground friction.
double min_stretch_force(double theta, const ObjectSpec& obj, const MaterialSpec& mat,
                         double gravity = kStandardGravity);

/// (hole_d - inner_closed_width) / 2. CaptureError when the closed tips do
/// not fit in the hole.
double stretch_capture_radius(const ObjectSpec& obj, const GripperAperture& aperture);

/// Half-width of the band a jaw of the given opening can sweep an object of
/// diameter outer_D into. CaptureError when the object does not fit at all.
double squeeze_half_range(double jaw_open, double outer_D);

/// Removes the pose component along `axis` (the jaw symmetry plane). axis
/// must be a unit vector. CaptureError when that component exceeds
/// half_range.
PlanarPose squeeze_step(const PlanarPose& pose, const Direction& axis, double half_range);

StrategyTrace simulate_alignment(Strategy strategy, const ObjectSpec& obj,
                                 const GripperAperture& aperture, const PlanarPose& initial,
                                 const StretchContact& contact, const MaterialSpec& mat,
                                 const AlignmentOptions& options = {});

struct GridPoint {
  std::size_t ring_index = 0;
  double ring_diameter = 0.0;
  std::size_t angle_index = 0;
  double angle = 0.0;  // rad
  PlanarPose pose;
  Verdict verdict = Verdict::Failure;
  std::string failing_phase;
};

struct GridReport {
  Strategy strategy = Strategy::Stretch;
  std::size_t points_per_ring = 0;
  std::vector<double> ring_diameters;
  std::vector<GridPoint> points;  // ring-major, angle-minor

  std::size_t successes() const;
  std::size_t successes_on_ring(std::size_t ring_index) const;
  std::size_t total() const { return points.size(); }
};

/// Runs simulate_alignment from points_per_ring evenly spaced starts on each
/// ring (radius = diameter / 2, first point on +x).
GridReport run_grid_experiment(Strategy strategy, const ObjectSpec& obj,
                               const GripperAperture& aperture, const StretchContact& contact,
                               const MaterialSpec& mat, std::span<const double> ring_diameters,
                               std::size_t points_per_ring, const AlignmentOptions& options = {});

}  // namespace griphand::alignment
