#include "griphand/alignment.hpp"

#include <cmath>

#include <fmt/format.h>

#include "griphand/angles.hpp"
#include "griphand/errors.hpp"

namespace griphand {

std::vector<std::string> violations(const MaterialSpec& mat) {
  std::vector<std::string> out;
  if (!(mat.E > 0.0)) out.push_back(fmt::format("MaterialSpec.E: must be > 0 (got {})", mat.E));
  if (!(mat.G > 0.0)) out.push_back(fmt::format("MaterialSpec.G: must be > 0 (got {})", mat.G));
  if (!(mat.mu_fingers >= 0.0)) {
    out.push_back(fmt::format("MaterialSpec.mu_fingers: must be >= 0 (got {})", mat.mu_fingers));
  }
  return out;
}

}  // namespace griphand

namespace griphand::alignment {

namespace {

// cos(theta) at or below this is treated as theta = 90 deg.
constexpr double kRightAngleCos = 1e-12;

void require(const std::vector<std::string>& problems) {
  if (!problems.empty()) {
    throw DomainError(problems.front());
  }
}

double ground_friction(const ObjectSpec& obj, double gravity) {
  return obj.mu_ground * obj.mass * gravity;
}

TraceRecord record(std::string phase, PlanarPose pose, double aperture, double force,
                   PhaseStatus status = PhaseStatus::Ok, std::string note = {}) {
  return TraceRecord{std::move(phase), pose, aperture, force, 0.0, status, std::move(note)};
}

StrategyTrace run_stretch(const ObjectSpec& obj, const GripperAperture& aperture,
                          const PlanarPose& initial, const StretchContact& contact,
                          const MaterialSpec& mat, const AlignmentOptions& options) {
  StrategyTrace trace("stretch");
  const double error = std::hypot(initial.x, initial.y);

  if (obj.hole_d <= aperture.inner_closed_width) {
    trace.add(record("InsertTips", initial, aperture.inner_closed_width, 0.0, PhaseStatus::Failed,
                     "closed tips do not fit in the hole"));
    trace.finish(Verdict::Failure);
    return trace;
  }
  const double capture = stretch_capture_radius(obj, aperture);
  if (error > capture + kCaptureTolerance) {
    trace.add(record("InsertTips", initial, aperture.inner_closed_width, 0.0, PhaseStatus::Failed,
                     fmt::format("error {:.6g} mm exceeds capture radius {:.6g} mm", error,
                                 capture)));
    trace.finish(Verdict::Failure);
    return trace;
  }
  trace.add(record("InsertTips", initial, aperture.inner_closed_width, 0.0));

  if (obj.hole_d > aperture.inner_max_stretch) {
    trace.add(record("Stretch", initial, aperture.inner_max_stretch, contact.force_F,
                     PhaseStatus::Failed, "tips cannot open wide enough to reach the hole wall"));
    trace.finish(Verdict::Failure);
    return trace;
  }
  if (!stretch_feasible(contact, obj, mat)) {
    trace.add(record("Stretch", initial, obj.hole_d, contact.force_F, PhaseStatus::Failed,
                     "tangential finger force does not overcome friction"));
    trace.finish(Verdict::Failure);
    return trace;
  }
  const PlanarPose centred{0.0, 0.0};
  trace.add(record("Stretch", centred, obj.hole_d, contact.force_F));

  if (obj.mass > options.light_object_mass) {
    if (obj.outer_D > aperture.outer_max_open) {
      trace.add(record("HoldersClose", centred, aperture.outer_max_open, 0.0, PhaseStatus::Failed,
                       "object wider than the holding-jaw opening"));
      trace.finish(Verdict::Failure);
      return trace;
    }
    trace.add(record("HoldersClose", centred, obj.outer_D, options.firm_close_force));
  }
  if (obj.may_stick) {
    trace.add(record("PushOut", centred, obj.outer_D, options.soft_close_force));
  }
  trace.finish(Verdict::Success);
  return trace;
}

StrategyTrace run_squeeze(const ObjectSpec& obj, const GripperAperture& aperture,
                          const PlanarPose& initial, const StretchContact& contact,
                          const AlignmentOptions& options) {
  StrategyTrace trace("squeeze");
  struct Step {
    const char* phase;
    Direction axis;
    double jaw_open;
    double force;
  };
  const Step steps[] = {
      {"OuterSoftClose", {1.0, 0.0}, aperture.outer_max_open, options.soft_close_force},
      {"InnerClose", {0.0, 1.0}, aperture.inner_max_stretch, contact.force_F},
  };

  PlanarPose pose = initial;
  for (const auto& step : steps) {
    try {
      pose = squeeze_step(pose, step.axis, squeeze_half_range(step.jaw_open, obj.outer_D));
    } catch (const CaptureError& e) {
      trace.add(record(step.phase, pose, step.jaw_open, step.force, PhaseStatus::Failed, e.what()));
      trace.finish(Verdict::Failure);
      return trace;
    }
    trace.add(record(step.phase, pose, obj.outer_D, step.force));
  }
  trace.add(record("OuterFirmClose", pose, obj.outer_D, options.firm_close_force));
  trace.finish(Verdict::Success);
  return trace;
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::Stretch ? "stretch" : "squeeze";
}

std::vector<std::string> violations(const ObjectSpec& obj) {
  std::vector<std::string> out;
  const std::string who = obj.name.empty() ? "ObjectSpec" : fmt::format("ObjectSpec({})", obj.name);
  if (!(obj.outer_D > 0.0)) out.push_back(fmt::format("{}.outer_D: must be > 0", who));
  if (!(obj.hole_d >= 0.0 && obj.hole_d < obj.outer_D)) {
    out.push_back(fmt::format("{}.hole_d: must satisfy 0 <= hole_d < outer_D (got {}, {})", who,
                              obj.hole_d, obj.outer_D));
  }
  if (!(obj.height_H > 0.0)) out.push_back(fmt::format("{}.height_H: must be > 0", who));
  if (!(obj.mass >= 0.0)) out.push_back(fmt::format("{}.mass: must be >= 0", who));
  if (!(obj.mu_ground >= 0.0)) out.push_back(fmt::format("{}.mu_ground: must be >= 0", who));
  return out;
}

std::vector<std::string> violations(const StretchContact& contact) {
  std::vector<std::string> out;
  if (!(contact.theta > 0.0 && contact.theta <= kHalfPi + 1e-12)) {
    out.push_back(fmt::format("StretchContact.theta: must be in (0, 90] deg (got {} deg)",
                              rad_to_deg(contact.theta)));
  }
  if (!(contact.force_F >= 0.0)) {
    out.push_back(fmt::format("StretchContact.force_F: must be >= 0 (got {})", contact.force_F));
  }
  if (!(contact.gravity_g > 0.0)) {
    out.push_back(fmt::format("StretchContact.gravity_g: must be > 0 (got {})", contact.gravity_g));
  }
  return out;
}

std::vector<std::string> violations(const GripperAperture& aperture) {
  std::vector<std::string> out;
  if (!(aperture.inner_closed_width >= 0.0 &&
        aperture.inner_closed_width < aperture.inner_max_stretch)) {
    out.push_back(fmt::format(
        "GripperAperture.inner_closed_width: must be >= 0 and < inner_max_stretch ({} vs {})",
        aperture.inner_closed_width, aperture.inner_max_stretch));
  }
  if (!(aperture.outer_max_open > 0.0)) {
    out.push_back("GripperAperture.outer_max_open: must be > 0");
  }
  return out;
}

bool stretch_feasible(const StretchContact& contact, const ObjectSpec& obj,
                      const MaterialSpec& mat) {
  require(violations(contact));
  const double s = std::sin(contact.theta);
  const double c = std::cos(contact.theta);
  const double F = contact.force_F;
  const double lhs = 2.0 * F * s * c;
  const double rhs = 2.0 * mat.mu_fingers * F * c + ground_friction(obj, contact.gravity_g);
  return lhs > rhs;
}

double min_stretch_force(double theta, const ObjectSpec& obj, const MaterialSpec& mat,
                         double gravity) {
  require(violations(StretchContact{theta, 0.0, gravity}));
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  if (s <= mat.mu_fingers) {
    throw InfeasibleError(fmt::format(
        "sin(theta) = {:.6g} does not exceed finger friction {:.6g}; no force aligns", s,
        mat.mu_fingers));
  }
  const double resist = ground_friction(obj, gravity);
  if (resist == 0.0) {
    return 0.0;
  }
  if (c <= kRightAngleCos) {
    throw InfeasibleError("at theta = 90 deg the tangential force has no horizontal component");
  }
  return resist / (2.0 * c * (s - mat.mu_fingers));
}

double stretch_capture_radius(const ObjectSpec& obj, const GripperAperture& aperture) {
  if (obj.hole_d <= aperture.inner_closed_width) {
    throw CaptureError(fmt::format("hole {} mm is not wider than the closed tips ({} mm)",
                                   obj.hole_d, aperture.inner_closed_width));
  }
  return 0.5 * (obj.hole_d - aperture.inner_closed_width);
}

double squeeze_half_range(double jaw_open, double outer_D) {
  if (jaw_open < outer_D) {
    throw CaptureError(
        fmt::format("object diameter {} mm exceeds jaw opening {} mm", outer_D, jaw_open));
  }
  return 0.5 * (jaw_open - outer_D);
}

PlanarPose squeeze_step(const PlanarPose& pose, const Direction& axis, double half_range) {
  const double norm = std::hypot(axis.x, axis.y);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw DomainError(fmt::format("squeeze axis must be a unit vector (|axis| = {})", norm));
  }
  const double along = pose.x * axis.x + pose.y * axis.y;
  if (std::abs(along) > half_range + kCaptureTolerance) {
    throw CaptureError(fmt::format("offset {:.6g} mm lies outside the jaw sweep of +/-{:.6g} mm",
                                   along, half_range));
  }
  return {pose.x - along * axis.x, pose.y - along * axis.y};
}

StrategyTrace simulate_alignment(Strategy strategy, const ObjectSpec& obj,
                                 const GripperAperture& aperture, const PlanarPose& initial,
                                 const StretchContact& contact, const MaterialSpec& mat,
                                 const AlignmentOptions& options) {
  require(violations(obj));
  require(violations(aperture));
  require(violations(contact));
  require(violations(mat));
  if (!std::isfinite(initial.x) || !std::isfinite(initial.y)) {
    throw DomainError("initial pose must be finite");
  }
  return strategy == Strategy::Stretch
             ? run_stretch(obj, aperture, initial, contact, mat, options)
             : run_squeeze(obj, aperture, initial, contact, options);
}

std::size_t GridReport::successes() const {
  std::size_t n = 0;
  for (const auto& p : points) {
    n += p.verdict == Verdict::Success ? 1 : 0;
  }
  return n;
}

std::size_t GridReport::successes_on_ring(std::size_t ring_index) const {
  std::size_t n = 0;
  for (const auto& p : points) {
    n += (p.ring_index == ring_index && p.verdict == Verdict::Success) ? 1 : 0;
  }
  return n;
}

GridReport run_grid_experiment(Strategy strategy, const ObjectSpec& obj,
                               const GripperAperture& aperture, const StretchContact& contact,
                               const MaterialSpec& mat, std::span<const double> ring_diameters,
                               std::size_t points_per_ring, const AlignmentOptions& options) {
  if (ring_diameters.empty()) {
    throw DomainError("grid experiment needs at least one ring");
  }
  if (points_per_ring == 0) {
    throw DomainError("grid experiment needs at least one point per ring");
  }
  GridReport report;
  report.strategy = strategy;
  report.points_per_ring = points_per_ring;
  report.ring_diameters.assign(ring_diameters.begin(), ring_diameters.end());
  report.points.reserve(ring_diameters.size() * points_per_ring);

  for (std::size_t ring = 0; ring < ring_diameters.size(); ++ring) {
    const double diameter = ring_diameters[ring];
    if (!(diameter >= 0.0)) {
      throw DomainError(fmt::format("ring diameter must be >= 0 (got {})", diameter));
    }
    const double radius = 0.5 * diameter;
    for (std::size_t j = 0; j < points_per_ring; ++j) {
      GridPoint point;
      point.ring_index = ring;
      point.ring_diameter = diameter;
      point.angle_index = j;
      point.angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(points_per_ring);
      point.pose = {radius * std::cos(point.angle), radius * std::sin(point.angle)};
      const auto trace =
          simulate_alignment(strategy, obj, aperture, point.pose, contact, mat, options);
      point.verdict = trace.verdict();
      point.failing_phase = trace.failing_phase().value_or("");
      report.points.push_back(std::move(point));
    }
  }
  return report;
}

}  // namespace griphand::alignment
