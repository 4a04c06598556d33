// griphand: command-line front end for the dual-gripper hand models.
//
//   griphand analyze crank|para|worm ...
//   griphand check stretch|tilt|deflection ...
//   griphand solve min-force|min-tilt|opening-range ...
//   griphand simulate <scenario.json> [--experiment NAME] --out DIR [--format csv|svg|both]
//   griphand grid <scenario.json> [--out DIR] [--format ...]
//   griphand validate <scenario.json>
//
// Angles on the command line are degrees; lengths mm, forces N, torques N*mm,
// moduli MPa. GRIPHAND_LOG=trace|debug|info|warn|error|off sets verbosity.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "griphand/alignment.hpp"
#include "griphand/angles.hpp"
#include "griphand/bench/runner.hpp"
#include "griphand/bench/scenario.hpp"
#include "griphand/errors.hpp"
#include "griphand/mechkin.hpp"
#include "griphand/screwarr.hpp"

namespace {

using namespace griphand;
using bench::format_number;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("griphand");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GRIPHAND_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept "off" when asked for.
    if (level != spdlog::level::off || std::string_view(env) == "off") {
      spdlog::set_level(level);
    } else {
      spdlog::warn("ignoring unknown GRIPHAND_LOG level '{}'", env);
    }
  }
}

void print(std::string_view key, double value) {
  fmt::print("{} = {}\n", key, format_number(value));
}

struct FingerArgs {
  double force = 3.0;
  screwarr::FingerGeometry geom;
  MaterialSpec mat;
  std::string form = "segment";
  double theta_f_deg = 20.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--force", force, "Lateral fingertip force (N)")->capture_default_str();
    cmd->add_option("--l2", geom.l2, "Torsion segment BC length (mm)")->capture_default_str();
    cmd->add_option("--l3", geom.l3, "Segment length l3 (mm)")->capture_default_str();
    cmd->add_option("--l4", geom.l4, "Tip segment length l4 (mm)")->capture_default_str();
    cmd->add_option("--beam-D", geom.beam_D, "Beam diameter at BC (mm)")->capture_default_str();
    cmd->add_option("--E", mat.E, "Young's modulus (MPa)")->capture_default_str();
    cmd->add_option("--G", mat.G, "Modulus of rigidity (MPa)")->capture_default_str();
    cmd->add_option("--form", form, "Deflection form: segment or span")
        ->check(CLI::IsMember({"segment", "span"}))
        ->capture_default_str();
  }

  screwarr::DeflectionResult evaluate() {
    geom.theta_f = deg_to_rad(theta_f_deg);
    return screwarr::fingertip_deflection(
        geom, mat, force,
        form == "span" ? screwarr::DeflectionForm::Span : screwarr::DeflectionForm::Segment);
  }
};

void print_deflection(const screwarr::DeflectionResult& d) {
  print("d_E_mm", d.d_E);
  print("d_Et_mm", d.d_Et);
  print("d_Eb_mm", d.d_Eb);
  print("theta_B_deg", rad_to_deg(d.theta_B));
  print("phi_C_deg", rad_to_deg(d.phi_C));
  print("phi_D_deg", rad_to_deg(d.phi_D));
}

int report_outputs(const std::vector<bench::ExperimentOutput>& outputs) {
  for (const auto& out : outputs) {
    fmt::print("{}\n", out.summary);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Dual-gripper hand mechanism analysis"};
  app.require_subcommand(1);
  std::optional<unsigned long long> seed;
  app.add_option("--seed", seed, "Reserved; all current models are deterministic");

  // analyze ----------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Transmission kinematics and statics");
  analyze->require_subcommand(1);

  mechkin::CrankSpec crank;
  double alpha_deg = 30.0;
  double force = 1.0;
  auto* a_crank = analyze->add_subcommand("crank", "Inner-gripper slider-crank");
  a_crank->add_option("--R", crank.R, "Crank length (mm)")->capture_default_str();
  a_crank->add_option("--L", crank.L, "Connecting link length (mm)")->capture_default_str();
  a_crank->add_option("--alpha", alpha_deg, "Motor angle (deg)")->capture_default_str();
  a_crank->add_option("--force", force, "Finger force (N)")->capture_default_str();
  a_crank->callback([&] {
    const double alpha = deg_to_rad(alpha_deg);
    print("beta_deg", rad_to_deg(mechkin::crank_beta(crank, alpha)));
    print("travel_mm", mechkin::crank_travel(crank, alpha));
    print("approx_travel_mm", mechkin::crank_travel_approx(crank, alpha));
    const auto simplified = mechkin::crank_torque_simplified(crank, alpha, force);
    if (simplified.at_singularity) {
      print("torque_Nmm", simplified.torque);
      fmt::print("note = printed torque form is singular at 90 deg; simplified 2FR sin(alpha) shown\n");
    } else {
      print("torque_Nmm", mechkin::crank_torque(crank, alpha, force));
    }
  });

  mechkin::ParallelogramSpec para;
  double beta_deg = 0.0;
  auto* a_para = analyze->add_subcommand("para", "Outer-gripper parallelogram");
  a_para->add_option("--R", para.R, "Driven crank length (mm)")->capture_default_str();
  a_para->add_option("--L", para.L, "Finger link length (mm)")->capture_default_str();
  a_para->add_option("--alpha", alpha_deg, "Motor-side angle (deg)")->capture_default_str();
  a_para->add_option("--beta", beta_deg, "Link angle (deg)")->capture_default_str();
  a_para->add_option("--force", force, "Finger force (N)")->capture_default_str();
  a_para->callback([&] {
    const double alpha = deg_to_rad(alpha_deg);
    print("travel_mm", mechkin::para_travel(para, alpha));
    print("torque_Nmm", mechkin::para_torque(para, {alpha, deg_to_rad(beta_deg)}, force));
    print("virtual_work_torque_Nmm", mechkin::para_virtual_work_torque(para, alpha, force));
  });

  mechkin::WormSpec worm;
  double motor_torque = 100.0;
  bool backdrivable = false;
  auto* a_worm = analyze->add_subcommand("worm", "Worm-gear stage");
  a_worm->add_option("--ratio", worm.ratio, "Gear ratio")->capture_default_str();
  a_worm->add_option("--efficiency", worm.efficiency, "Forward efficiency")->capture_default_str();
  a_worm->add_option("--torque", motor_torque, "Motor torque (N*mm)")->capture_default_str();
  a_worm->add_flag("--backdrivable", backdrivable, "Stage is not self-locking");
  a_worm->callback([&] {
    worm.self_locking = !backdrivable;
    const auto out = mechkin::worm_output(worm, motor_torque);
    print("output_torque_Nmm", out.output_torque);
    print("backdrive_limit_Nmm", out.backdrive_limit);
  });

  // check ------------------------------------------------------------------
  auto* check = app.add_subcommand("check", "Feasibility checks");
  check->require_subcommand(1);

  double theta_deg = 75.0;
  double mu0 = 0.3;
  alignment::ObjectSpec obj;
  double gravity = alignment::kStandardGravity;
  auto add_stretch_args = [&](CLI::App* cmd) {
    cmd->add_option("--theta", theta_deg, "Contact half-angle (deg)")->capture_default_str();
    cmd->add_option("--mu0", mu0, "Finger/object friction")->capture_default_str();
    cmd->add_option("--mu-og", obj.mu_ground, "Object/ground friction")->capture_default_str();
    cmd->add_option("--mass", obj.mass, "Object mass (kg)")->capture_default_str();
    cmd->add_option("--gravity", gravity, "Gravity (m/s^2)")->capture_default_str();
  };
  auto* c_stretch = check->add_subcommand("stretch", "Stretch alignment friction condition");
  add_stretch_args(c_stretch);
  c_stretch->add_option("--force", force, "Per-finger force (N)")->capture_default_str();
  c_stretch->callback([&] {
    const bool ok = alignment::stretch_feasible({deg_to_rad(theta_deg), force, gravity}, obj,
                                                MaterialSpec{2200.0, 800.0, mu0});
    fmt::print("feasible = {}\n", ok ? "true" : "false");
  });

  double theta_gri_deg = 40.0;
  double theta_f_deg = 20.0;
  auto* c_tilt = check->add_subcommand("tilt", "Does a released screw slide at this tilt?");
  c_tilt->add_option("--theta-gri", theta_gri_deg, "Hand tilt (deg)")->capture_default_str();
  c_tilt->add_option("--theta-f", theta_f_deg, "Fingertip interior angle (deg)")
      ->capture_default_str();
  c_tilt->add_option("--mu0", mu0, "Finger friction")->capture_default_str();
  c_tilt->callback([&] {
    const bool slides =
        screwarr::slides_at(deg_to_rad(theta_gri_deg), deg_to_rad(theta_f_deg), mu0);
    fmt::print("slides = {}\n", slides ? "true" : "false");
  });

  FingerArgs finger;
  auto* c_defl = check->add_subcommand("deflection", "Fingertip torsion + bending deflection");
  finger.attach(c_defl);
  c_defl->callback([&] { print_deflection(finger.evaluate()); });

  // solve ------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Design solvers");
  solve->require_subcommand(1);

  auto* s_force = solve->add_subcommand("min-force", "Smallest per-finger stretch force");
  add_stretch_args(s_force);
  s_force->callback([&] {
    print("min_force_N", alignment::min_stretch_force(deg_to_rad(theta_deg), obj,
                                                      MaterialSpec{2200.0, 800.0, mu0}, gravity));
  });

  auto* s_tilt = solve->add_subcommand("min-tilt", "Smallest tilt that makes a screw slide");
  s_tilt->add_option("--theta-f", theta_f_deg, "Fingertip interior angle (deg)")
      ->capture_default_str();
  s_tilt->add_option("--mu0", mu0, "Finger friction")->capture_default_str();
  s_tilt->callback([&] {
    print("min_tilt_deg",
          rad_to_deg(screwarr::min_tilt_angle(deg_to_rad(theta_f_deg), mu0)));
  });

  FingerArgs range_finger;
  double head_D = 5.5;
  auto* s_range = solve->add_subcommand("opening-range", "Valid additional opening distance d");
  range_finger.attach(s_range);
  s_range->add_option("--head-D", head_D, "Screw head diameter (mm)")->capture_default_str();
  s_range->callback([&] {
    screwarr::ScrewSpec screw;
    screw.head_D = head_D;
    const auto range = screwarr::valid_opening_range(range_finger.evaluate(), screw);
    print("d_min_exclusive_mm", range.lower);
    print("d_max_exclusive_mm", range.upper);
  });

  // scenario-driven --------------------------------------------------------
  std::string scenario_path;
  std::string experiment;
  std::string out_dir = "griphand-out";
  std::string format = "both";

  auto* simulate = app.add_subcommand("simulate", "Run scenario experiments");
  simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--experiment", experiment, "Experiment name (default: all)");
  simulate->add_option("--out", out_dir, "Output directory")->capture_default_str();
  simulate->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();
  simulate->callback([&] {
    const auto scenario = bench::load_scenario(scenario_path);
    for (const auto& name : scenario.placeholder_objects) {
      spdlog::warn("object '{}' uses placeholder dimensions", name);
    }
    const bench::RunOptions options{out_dir, bench::parse_format(format)};
    if (experiment.empty()) {
      report_outputs(bench::run_all(scenario, options));
    } else {
      for (const auto& path : bench::run(scenario, experiment, options)) {
        spdlog::info("wrote {}", path.string());
        fmt::print("{}\n", path.string());
      }
    }
  });

  std::string grid_out;
  auto* grid = app.add_subcommand("grid", "Run every grid experiment and print the verdict map");
  grid->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  grid->add_option("--out", grid_out, "Also write CSV/SVG to this directory");
  grid->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();
  grid->callback([&] {
    const auto scenario = bench::load_scenario(scenario_path);
    int count = 0;
    for (const auto& e : scenario.experiments) {
      const auto* g = std::get_if<bench::GridExperiment>(&e);
      if (!g) continue;
      ++count;
      const auto report = bench::run_grid(scenario, *g);
      fmt::print("{} ({} strategy, object {}): {}/{} aligned\n", g->name,
                 alignment::to_string(g->strategy), g->object, report.successes(),
                 report.total());
      for (std::size_t ring = 0; ring < report.ring_diameters.size(); ++ring) {
        std::string marks;
        for (const auto& p : report.points) {
          if (p.ring_index == ring) marks += p.verdict == Verdict::Success ? 'o' : 'x';
        }
        fmt::print("  ring D = {} mm: {}/{} {}\n", format_number(report.ring_diameters[ring]),
                   report.successes_on_ring(ring), report.points_per_ring, marks);
      }
      if (!grid_out.empty()) {
        bench::write_outputs(bench::evaluate(scenario, e),
                             {grid_out, bench::parse_format(format)});
      }
    }
    if (count == 0) {
      throw Error("scenario declares no grid experiments");
    }
  });

  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  validate->callback([&] {
    const auto scenario = bench::load_scenario(scenario_path);
    fmt::print("{}: OK ({} objects, {} screws, {} experiments)\n", scenario_path,
               scenario.objects.size(), scenario.screws.size(), scenario.experiments.size());
    for (const auto& name : scenario.placeholder_objects) {
      fmt::print("  note: object '{}' uses placeholder dimensions\n", name);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    spdlog::error("parse error: {}", e.what());
    return 3;
  } catch (const UnitError& e) {
    spdlog::error("unit error: {}", e.what());
    return 3;
  } catch (const ValidationError& e) {
    spdlog::error("{}", e.what());
    return 3;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("unexpected failure: {}", e.what());
    return 1;
  }
  if (seed) {
    spdlog::debug("--seed {} accepted (no stochastic models)", *seed);
  }
  return 0;
}
