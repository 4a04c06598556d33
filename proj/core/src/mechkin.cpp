#include "griphand/mechkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "griphand/angles.hpp"
#include "griphand/errors.hpp"

namespace griphand::mechkin {

namespace {

constexpr double kStrokeSlack = 1e-12;
constexpr double kTravelTolerance = 1e-9;

double checked_stroke(double alpha) {
  if (!std::isfinite(alpha) || alpha < -kStrokeSlack || alpha > kHalfPi + kStrokeSlack) {
    throw DomainError(fmt::format("motor angle {} rad outside the stroke [0, pi/2]", alpha));
  }
  return std::clamp(alpha, 0.0, kHalfPi);
}

void require_valid(const std::vector<std::string>& problems) {
  if (!problems.empty()) {
    throw DomainError(problems.front());
  }
}

// 1 - cos(a) without cancellation near a = 0.
double versine(double a) {
  const double h = std::sin(0.5 * a);
  return 2.0 * h * h;
}

struct CrankClosure {
  double alpha;
  double sin_a;
  double k;
  double cos_beta;
};

CrankClosure close_crank(const CrankSpec& spec, double alpha) {
  if (!(spec.R > 0.0) || !(spec.L > 0.0)) {
    throw DomainError("CrankSpec: R and L must be positive");
  }
  alpha = checked_stroke(alpha);
  const double s = std::sin(alpha);
  if (spec.R * s > spec.L) {
    throw GeometryError(fmt::format(
        "slider-crank cannot close: R sin(alpha) = {} exceeds L = {}", spec.R * s, spec.L));
  }
  const double k = spec.R / spec.L;
  const double c = std::cos(alpha);
  // cos^2(beta) = 1 - k^2 sin^2(alpha), written to stay exact when k == 1.
  return {alpha, s, k, std::sqrt(std::max(0.0, c * c + (1.0 - k * k) * s * s))};
}

template <typename Travel>
double bisect_travel(Travel travel, double target_S, double full_stroke_S) {
  const double slack = kTravelTolerance * 1e-3 * std::max(1.0, full_stroke_S);
  if (!std::isfinite(target_S) || target_S < -slack || target_S > full_stroke_S + slack) {
    throw RangeError(fmt::format("travel {} mm outside achievable range [0, {}]", target_S,
                                 full_stroke_S));
  }
  if (target_S <= 0.0) {
    return 0.0;
  }
  if (target_S >= full_stroke_S) {
    return kHalfPi;
  }
  double lo = 0.0;
  double hi = kHalfPi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (travel(mid) < target_S) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lo_err = std::abs(travel(lo) - target_S);
  const double hi_err = std::abs(travel(hi) - target_S);
  const double alpha = lo_err <= hi_err ? lo : hi;
  if (std::min(lo_err, hi_err) > kTravelTolerance) {
    throw RangeError(fmt::format("travel inversion did not converge for S = {} mm", target_S));
  }
  return alpha;
}

}  // namespace

std::vector<std::string> violations(const CrankSpec& spec) {
  std::vector<std::string> out;
  if (!(spec.R > 0.0)) out.push_back(fmt::format("CrankSpec.R: must be > 0 (got {})", spec.R));
  if (!(spec.L > 0.0)) out.push_back(fmt::format("CrankSpec.L: must be > 0 (got {})", spec.L));
  if (spec.R > 0.0 && spec.L > 0.0 && spec.L < spec.R) {
    out.push_back(fmt::format("CrankSpec.L: must be >= R so the linkage closes (L = {}, R = {})",
                              spec.L, spec.R));
  }
  return out;
}

std::vector<std::string> violations(const ParallelogramSpec& spec) {
  std::vector<std::string> out;
  if (!(spec.R > 0.0)) {
    out.push_back(fmt::format("ParallelogramSpec.R: must be > 0 (got {})", spec.R));
  }
  if (!(spec.L > 0.0)) {
    out.push_back(fmt::format("ParallelogramSpec.L: must be > 0 (got {})", spec.L));
  }
  return out;
}

std::vector<std::string> violations(const WormSpec& spec) {
  std::vector<std::string> out;
  if (!(spec.ratio >= 1.0)) {
    out.push_back(fmt::format("WormSpec.ratio: must be >= 1 (got {})", spec.ratio));
  }
  if (!(spec.efficiency > 0.0 && spec.efficiency <= 1.0)) {
    out.push_back(fmt::format("WormSpec.efficiency: must be in (0, 1] (got {})", spec.efficiency));
  }
  return out;
}

double crank_beta(const CrankSpec& spec, double alpha) {
  const auto cl = close_crank(spec, alpha);
  return std::atan2(cl.k * cl.sin_a, cl.cos_beta);
}

double crank_travel(const CrankSpec& spec, double alpha) {
  const auto cl = close_crank(spec, alpha);
  // L(1 - cos(beta)) = L k^2 sin^2(alpha) / (1 + cos(beta))
  return spec.R * versine(cl.alpha) +
         spec.L * cl.k * cl.k * cl.sin_a * cl.sin_a / (1.0 + cl.cos_beta);
}

double crank_travel_approx(const CrankSpec& spec, double alpha) {
  alpha = checked_stroke(alpha);
  return 2.0 * spec.R * versine(alpha);
}

double crank_torque(const CrankSpec& spec, double alpha, double force_F) {
  alpha = checked_stroke(alpha);
  if (force_F < 0.0) {
    throw DomainError(fmt::format("finger force must be >= 0 (got {})", force_F));
  }
  const double c = std::cos(alpha);
  if (c <= kStrokeSlack) {
    throw DomainError(
        "crank torque is singular at alpha = pi/2 (cos(alpha) = 0); "
        "use crank_torque_simplified");
  }
  return (force_F / c) * spec.R * std::sin(2.0 * alpha);
}

TorqueEstimate crank_torque_simplified(const CrankSpec& spec, double alpha, double force_F) {
  alpha = checked_stroke(alpha);
  if (force_F < 0.0) {
    throw DomainError(fmt::format("finger force must be >= 0 (got {})", force_F));
  }
  return {2.0 * force_F * spec.R * std::sin(alpha), std::cos(alpha) <= kStrokeSlack};
}

double para_travel(const ParallelogramSpec& spec, double alpha) {
  alpha = checked_stroke(alpha);
  return spec.R * versine(alpha);
}

double para_torque(const ParallelogramSpec& spec, const KinematicState& state, double force_F) {
  if (force_F < 0.0) {
    throw DomainError(fmt::format("finger force must be >= 0 (got {})", force_F));
  }
  return force_F * (spec.L * std::cos(state.beta) - spec.R * std::sin(state.alpha));
}

double para_virtual_work_torque(const ParallelogramSpec& spec, double alpha, double force_F) {
  alpha = checked_stroke(alpha);
  return force_F * spec.R * std::sin(alpha);
}

WormOutput worm_output(const WormSpec& spec, double motor_torque) {
  require_valid(violations(spec));
  if (!(motor_torque >= 0.0)) {
    throw DomainError(fmt::format("motor torque must be >= 0 (got {})", motor_torque));
  }
  const double out = motor_torque * spec.ratio * spec.efficiency;
  return {out, spec.self_locking ? std::numeric_limits<double>::infinity() : out};
}

double invert_travel(const CrankSpec& spec, double target_S) {
  require_valid(violations(spec));
  return bisect_travel([&](double a) { return crank_travel(spec, a); }, target_S,
                       crank_travel(spec, kHalfPi));
}

double invert_travel(const ParallelogramSpec& spec, double target_S) {
  require_valid(violations(spec));
  return bisect_travel([&](double a) { return para_travel(spec, a); }, target_S,
                       para_travel(spec, kHalfPi));
}

TransmissionResult crank_transmission(const CrankSpec& spec, double alpha, double force_F) {
  const auto torque = crank_torque_simplified(spec, alpha, force_F);
  return {crank_travel(spec, alpha), torque.torque, force_F};
}

TransmissionResult para_transmission(const ParallelogramSpec& spec, const KinematicState& state,
                                     double force_F) {
  return {para_travel(spec, state.alpha), para_torque(spec, state, force_F), force_F};
}

}  // namespace griphand::mechkin
