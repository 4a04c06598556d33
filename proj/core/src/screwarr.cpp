#include "griphand/screwarr.hpp"

#include <cmath>

#include <fmt/format.h>

#include "griphand/errors.hpp"

namespace griphand::screwarr {

namespace {

void require(const std::vector<std::string>& problems) {
  if (!problems.empty()) {
    throw DomainError(problems.front());
  }
}

double slide_threshold(double theta_f, double mu0) { return std::atan(mu0) + 0.5 * theta_f; }

}  // namespace

std::vector<std::string> violations(const FingerGeometry& geom) {
  std::vector<std::string> out;
  if (!(geom.l2 >= 0.0 && geom.l3 >= 0.0 && geom.l4 >= 0.0)) {
    out.push_back("FingerGeometry.l2/l3/l4: segment lengths must be >= 0");
  }
  if (!(geom.beam_D > 0.0)) {
    out.push_back(fmt::format("FingerGeometry.beam_D: must be > 0 (got {})", geom.beam_D));
  }
  if (!(geom.theta_f > 0.0 && geom.theta_f < kHalfPi)) {
    out.push_back(fmt::format("FingerGeometry.theta_f: must be in (0, 90) deg (got {} deg)",
                              rad_to_deg(geom.theta_f)));
  }
  return out;
}

std::vector<std::string> violations(const ScrewSpec& screw) {
  std::vector<std::string> out;
  if (!(screw.shank_d > 0.0 && screw.head_D > screw.shank_d)) {
    out.push_back(fmt::format("ScrewSpec({}).head_D: must satisfy head_D > shank_d > 0 ({} vs {})",
                              screw.nominal, screw.head_D, screw.shank_d));
  }
  if (!(screw.mass > 0.0)) {
    out.push_back(fmt::format("ScrewSpec({}).mass: must be > 0", screw.nominal));
  }
  return out;
}

std::vector<std::string> violations(const TiltPlan& plan) {
  std::vector<std::string> out;
  if (!(plan.theta_gri > 0.0 && plan.theta_gri < kHalfPi)) {
    out.push_back(fmt::format("TiltPlan.theta_gri: must be in (0, 90) deg (got {} deg)",
                              rad_to_deg(plan.theta_gri)));
  }
  if (!(plan.opening_d > 0.0)) {
    out.push_back(fmt::format("TiltPlan.opening_d: must be > 0 (got {})", plan.opening_d));
  }
  return out;
}

double second_moment(double beam_D) { return kPi * std::pow(beam_D, 4) / 64.0; }

double polar_moment(double beam_D) { return kPi * std::pow(beam_D, 4) / 32.0; }

double min_tilt_angle(double theta_f, double mu0) {
  if (!(mu0 >= 0.0)) {
    throw DomainError(fmt::format("friction coefficient must be >= 0 (got {})", mu0));
  }
  if (!(theta_f >= 0.0 && theta_f < kHalfPi)) {
    throw DomainError(
        fmt::format("fingertip angle must be in [0, 90) deg (got {} deg)", rad_to_deg(theta_f)));
  }
  const double tilt = slide_threshold(theta_f, mu0);
  if (tilt >= kHalfPi) {
    throw DomainError(fmt::format("required tilt {} deg is not reachable", rad_to_deg(tilt)));
  }
  return tilt;
}

bool slides_at(double theta_gri, double theta_f, double mu0) {
  return theta_gri > slide_threshold(theta_f, mu0);
}

DeflectionResult fingertip_deflection(const FingerGeometry& geom, const MaterialSpec& mat,
                                      double force_F, DeflectionForm form) {
  require(violations(geom));
  require(violations(mat));
  if (!(force_F >= 0.0)) {
    throw DomainError(fmt::format("fingertip force must be >= 0 (got {})", force_F));
  }
  const double F = force_F;
  const double D4 = std::pow(geom.beam_D, 4);
  const double EI = mat.E * second_moment(geom.beam_D);
  const double span = geom.l3 + geom.l4;

  DeflectionResult r;
  r.theta_B = 32.0 * F * span * geom.l2 / (mat.G * kPi * D4);
  r.d_Et = r.theta_B * span;
  r.phi_C = F * geom.l2 * geom.l2 / (2.0 * EI);
  r.phi_D = F * geom.l4 * geom.l4 / (2.0 * EI);
  const double phi_C_arm = form == DeflectionForm::Segment ? geom.l2 : span;
  r.d_Eb = F * span * span * span / (3.0 * EI) + F * std::pow(geom.l4, 3) / (3.0 * EI) +
           r.phi_C * phi_C_arm + r.phi_D * geom.l4;
  r.d_E = r.d_Et + r.d_Eb;
  return r;
}

OpeningRange valid_opening_range(const DeflectionResult& defl, const ScrewSpec& screw) {
  if (defl.d_E >= screw.head_D) {
    throw NoValidOpeningError(
        fmt::format("fingertip deflection {:.6g} mm is not below the {} head diameter {:.6g} mm",
                    defl.d_E, screw.nominal, screw.head_D));
  }
  return {defl.d_E, screw.head_D};
}

StrategyTrace simulate_arrange(const ScrewSpec& screw, const TiltPlan& plan,
                               const FingerGeometry& geom, const MaterialSpec& mat,
                               const ArrangeOptions& options) {
  require(violations(screw));
  require(violations(plan));

  const auto defl = fingertip_deflection(geom, mat, options.grip_force, options.form);
  const double held_aperture = screw.shank_d;
  const double released_aperture = screw.shank_d + plan.opening_d;

  StrategyTrace trace("arrange");
  trace.add({"Held", {}, held_aperture, options.grip_force, 0.0, PhaseStatus::Ok, {}});
  trace.add({"Tilted", {}, held_aperture, options.grip_force, plan.theta_gri, PhaseStatus::Ok, {}});

  auto fail = [&](Verdict verdict, std::string note) {
    trace.add({"DroppedSliding", {}, released_aperture, 0.0, plan.theta_gri, PhaseStatus::Failed,
               std::move(note)});
    trace.finish(verdict);
    return trace;
  };

  if (plan.opening_d <= defl.d_E) {
    return fail(Verdict::Pinched, fmt::format("opening {:.6g} mm does not exceed deflection {:.6g} mm",
                                              plan.opening_d, defl.d_E));
  }
  if (plan.opening_d >= screw.head_D) {
    return fail(Verdict::Lost, fmt::format("opening {:.6g} mm lets the {:.6g} mm head fall through",
                                           plan.opening_d, screw.head_D));
  }
  if (!slides_at(plan.theta_gri, geom.theta_f, mat.mu_fingers)) {
    return fail(Verdict::Stuck,
                fmt::format("tilt {:.6g} deg does not exceed sliding threshold {:.6g} deg",
                            rad_to_deg(plan.theta_gri),
                            rad_to_deg(slide_threshold(geom.theta_f, mat.mu_fingers))));
  }

  trace.add({"DroppedSliding", {}, released_aperture, 0.0, plan.theta_gri, PhaseStatus::Ok, {}});
  trace.add({"AtEndCorner", {}, released_aperture, 0.0, plan.theta_gri, PhaseStatus::Ok, {}});
  trace.add({"Vertical", {}, released_aperture, 0.0, 0.0, PhaseStatus::Ok, {}});
  trace.finish(Verdict::Success);
  return trace;
}

}  // namespace griphand::screwarr
