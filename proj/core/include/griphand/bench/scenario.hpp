#pragma once

// Declarative scenario files. See docs/scenario.md for the JSON schema.
// Values in files carry the units named in the mandatory "units" header
// (angles in degrees by default); a loaded ScenarioSpec is always in
// mm / N / kg / rad / N*mm / MPa.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "griphand/alignment.hpp"
#include "griphand/material.hpp"
#include "griphand/mechkin.hpp"
#include "griphand/screwarr.hpp"
#include "griphand/sizing.hpp"

namespace griphand::bench {

/// Unit names declared by the file header.
struct Units {
  std::string length = "mm";
  std::string force = "N";
  std::string mass = "kg";
  std::string angle = "deg";
  std::string torque = "N*mm";
  std::string modulus = "MPa";
};

struct MechanismBundle {
  mechkin::CrankSpec crank;
  mechkin::ParallelogramSpec para;
  mechkin::WormSpec worm;
  sizing::MotorSpec motor;
};

struct GridExperiment {
  std::string name;
  std::string object;
  alignment::Strategy strategy = alignment::Strategy::Stretch;
  std::vector<double> ring_diameters{4.8, 2.4};
  std::size_t points_per_ring = 8;
  alignment::StretchContact contact;
};

struct AlignmentExperiment {
  std::string name;
  std::string object;
  alignment::Strategy strategy = alignment::Strategy::Stretch;
  PlanarPose initial;
  alignment::StretchContact contact;
};

struct PullCurveExperiment {
  std::string name;
  std::vector<double> fractions{0.0167, 0.0334};
  std::size_t samples = 101;
  sizing::PullTestConfig config;  // torque_fraction replaced per curve
  sizing::PullCurveOptions options;
};

struct ArrangeExperiment {
  std::string name;
  std::string screw;
  screwarr::TiltPlan plan;
  screwarr::ArrangeOptions options;
};

enum class MechanismKind { Crank, Parallelogram };

struct TransmissionExperiment {
  std::string name;
  MechanismKind mechanism = MechanismKind::Crank;
  std::size_t samples = 91;
  double force = 1.0;  // N
  double beta = 0.0;   // rad, parallelogram only
};

using Experiment = std::variant<GridExperiment, AlignmentExperiment, PullCurveExperiment,
                                ArrangeExperiment, TransmissionExperiment>;

std::string_view experiment_name(const Experiment& experiment);
std::string_view experiment_type(const Experiment& experiment);

struct ScenarioSpec {
  std::string description;
  Units units;
  MechanismBundle mechanisms;
  MaterialSpec material;
  screwarr::FingerGeometry finger;
  alignment::GripperAperture aperture;
  alignment::AlignmentOptions alignment_options;
  std::vector<alignment::ObjectSpec> objects;
  std::vector<std::string> placeholder_objects;  // dimensions still to be measured
  std::vector<screwarr::ScrewSpec> screws;
  std::vector<Experiment> experiments;

  const alignment::ObjectSpec* find_object(std::string_view name) const;
  const screwarr::ScrewSpec* find_screw(std::string_view name) const;
  const Experiment* find_experiment(std::string_view name) const;
};

/// Parses and validates scenario text. `source` names the origin in messages.
ScenarioSpec parse_scenario(std::string_view text, std::string_view source = "<scenario>");

ScenarioSpec load_scenario(const std::filesystem::path& path);

/// Every invariant violation in an already-parsed scenario (empty if valid).
std::vector<std::string> validate(const ScenarioSpec& scenario);

}  // namespace griphand::bench
