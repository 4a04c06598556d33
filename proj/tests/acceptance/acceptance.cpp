// Acceptance gates. Prints one PASS/FAIL line per criterion and exits
// nonzero if any gate fails.
//
//   acceptance <path-to-griphand-cli> [scenario.json]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gen.hpp"
#include "griphand/alignment.hpp"
#include "griphand/errors.hpp"
#include "griphand/mechkin.hpp"
#include "griphand/screwarr.hpp"
#include "griphand/sizing.hpp"
#include "oracles.hpp"

using namespace griphand;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome equal_links_reduction() {
  testgen::Gen g(101);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const mechkin::CrankSpec spec{g.uniform(0.5, 100), 0};
    const mechkin::CrankSpec c{spec.R, spec.R};
    const double a = g.uniform(0, kHalfPi);
    worst = std::max(worst,
                     std::abs(mechkin::crank_travel(c, a) - mechkin::crank_travel_approx(c, a)));
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-12 && dt < 1.0,
          fmt::format("max |dS| = {:.3g} mm (< 1e-12), {:.3f} s (< 1 s)", worst, dt)};
}

Outcome virtual_work() {
  testgen::Gen g(102);
  const double h = 1e-6;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double R = g.uniform(0.5, 100);
    const mechkin::CrankSpec c{R, R};
    const double a = g.uniform(h, kHalfPi - 1e-3);
    const double F = g.uniform(0, 100);
    const double dS = oracle::central_difference(
        [&](double x) { return mechkin::crank_travel_approx(c, x); }, a, h);
    const double M = mechkin::crank_torque(c, a, F);
    worst = std::max(worst, std::abs(M - F * dS) / std::max(1.0, std::abs(M)));
  }
  return {worst < 1e-5, fmt::format("max relative gap {:.3g} (< 1e-5)", worst)};
}

Outcome round_trip() {
  testgen::Gen g(103);
  double worst_crank = 0, worst_para = 0;
  for (int i = 0; i < 1000; ++i) {
    const double R = g.uniform(1, 50);
    const mechkin::CrankSpec c{R, R * g.uniform(1, 3)};
    const mechkin::ParallelogramSpec p{g.uniform(1, 50), g.uniform(40, 100)};
    const double ac = mechkin::invert_travel(c, g.uniform(0, mechkin::crank_travel(c, kHalfPi)));
    const double ap = mechkin::invert_travel(p, g.uniform(0, mechkin::para_travel(p, kHalfPi)));
    worst_crank = std::max(worst_crank,
                           std::abs(mechkin::invert_travel(c, mechkin::crank_travel(c, ac)) - ac));
    worst_para = std::max(worst_para,
                          std::abs(mechkin::invert_travel(p, mechkin::para_travel(p, ap)) - ap));
  }
  return {worst_crank < 1e-9 && worst_para < 1e-9,
          fmt::format("max |da| crank {:.3g} rad, parallelogram {:.3g} rad (< 1e-9)", worst_crank,
                      worst_para)};
}

Outcome stretch_gate() {
  testgen::Gen g(104);
  double worst = 0;
  int edge_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const double theta = g.uniform(oracle::rad(5), oracle::rad(85));
    MaterialSpec mat;
    mat.mu_fingers = g.uniform(0, 0.95 * std::sin(theta));
    alignment::ObjectSpec obj;
    obj.outer_D = 20;
    obj.hole_d = 10;
    obj.mu_ground = g.uniform(0, 1);
    obj.mass = g.uniform(0, 1);
    const double closed = alignment::min_stretch_force(theta, obj, mat);
    auto feasible = [&](double F) {
      return alignment::stretch_feasible({theta, F, alignment::kStandardGravity}, obj, mat);
    };
    worst = std::max(worst, std::abs(oracle::threshold_force(feasible) - closed));
    if (closed > 0 && (feasible(0.999 * closed) || !feasible(1.001 * closed))) ++edge_failures;
  }
  return {worst < 1e-9 && edge_failures == 0,
          fmt::format("max |F_bisect - F*| = {:.3g} N (< 1e-9), {} bracket violations", worst,
                      edge_failures)};
}

Outcome grid_gate() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> rings{4.8, 2.4};
  alignment::GripperAperture ap;
  ap.inner_closed_width = 5.2;
  MaterialSpec mat;
  const alignment::StretchContact contact{deg_to_rad(75), 2.0, alignment::kStandardGravity};
  alignment::ObjectSpec obj;
  obj.outer_D = 30;
  obj.mass = 0.02;

  bool full = true, half = true;
  // r_c = (hole - 5.2) / 2
  for (double rc : {2.4, 2.5, 3.0, 5.0}) {
    obj.hole_d = 5.2 + 2 * rc;
    const auto r = alignment::run_grid_experiment(alignment::Strategy::Stretch, obj, ap, contact,
                                                  mat, rings, 8);
    full = full && r.successes() == 16 && r.total() == 16;
  }
  for (double rc : {1.2, 1.5, 2.0, 2.39}) {
    obj.hole_d = 5.2 + 2 * rc;
    const auto r = alignment::run_grid_experiment(alignment::Strategy::Stretch, obj, ap, contact,
                                                  mat, rings, 8);
    half = half && r.successes() == 8 && r.successes_on_ring(1) == 8;
  }

  // Squeeze: every start inside both jaw sweeps ends at the origin.
  bool squeeze = true;
  alignment::ObjectSpec peg;
  peg.outer_D = 16;
  peg.mass = 0.016;
  const auto sq = alignment::run_grid_experiment(alignment::Strategy::Squeeze, peg, ap, contact,
                                                 mat, rings, 8);
  squeeze = sq.successes() == 16;
  testgen::Gen g(105);
  const double hx = (ap.outer_max_open - peg.outer_D) / 2;
  const double hy = (ap.inner_max_stretch - peg.outer_D) / 2;
  for (int i = 0; i < 1000; ++i) {
    const PlanarPose p{g.uniform(-hx, hx), g.uniform(-hy, hy)};
    const auto t = alignment::simulate_alignment(alignment::Strategy::Squeeze, peg, ap, p, contact,
                                                 mat);
    squeeze = squeeze && t.succeeded() && t.final_pose().x == 0 && t.final_pose().y == 0;
  }
  const double dt = seconds_since(t0);
  return {full && half && squeeze && dt < 1.0,
          fmt::format("r_c >= 2.4: 16/16 {}; r_c in [1.2, 2.4): 8/16 {}; squeeze residual 0 {}; "
                      "{:.3f} s (< 1 s)",
                      full ? "yes" : "no", half ? "yes" : "no", squeeze ? "yes" : "no", dt)};
}

Outcome tilt_gate() {
  const double solved = rad_to_deg(screwarr::min_tilt_angle(deg_to_rad(20), 0.3));
  const double scan = oracle::tilt_by_scan(20, 0.3, 1e-4);
  const bool frictionless = screwarr::min_tilt_angle(deg_to_rad(20), 0.0) == deg_to_rad(10);
  const bool ok = std::abs(solved - 26.699) <= 0.01 && solved <= scan && scan - solved <= 1e-4 &&
                  frictionless;
  return {ok, fmt::format("theta* = {:.6f} deg, scan {:.4f} deg, frictionless = 10 deg {}",
                          solved, scan, frictionless ? "exact" : "NOT exact")};
}

Outcome deflection_gate() {
  testgen::Gen g(107);
  const MaterialSpec abs;
  const screwarr::FingerGeometry nominal;
  const auto d0 = screwarr::fingertip_deflection(nominal, abs, 3.0);
  const auto o0 = oracle::fingertip(3.0, abs.E, abs.G, nominal.l2, nominal.l3, nominal.l4,
                                    nominal.beam_D);
  double worst_rel = std::abs(d0.d_E - o0.d_E) / o0.d_E;
  double worst_lin = 0, worst_scale = 0;
  for (int i = 0; i < 1000; ++i) {
    screwarr::FingerGeometry geom;
    geom.l2 = g.uniform(0.5, 40);
    geom.l3 = g.uniform(0, 40);
    geom.l4 = g.uniform(0, 40);
    geom.beam_D = g.uniform(1, 12);
    const double F = g.uniform(0.1, 20);
    const auto d = screwarr::fingertip_deflection(geom, abs, F);
    const auto o = oracle::fingertip(F, abs.E, abs.G, geom.l2, geom.l3, geom.l4, geom.beam_D);
    worst_rel = std::max(worst_rel, std::abs(d.d_E - o.d_E) / o.d_E);
    const auto d2 = screwarr::fingertip_deflection(geom, abs, 2 * F);
    worst_lin = std::max(worst_lin, std::abs(d2.d_E - 2 * d.d_E) / d.d_E);
    const double k = g.uniform(0.5, 2);
    auto scaled = geom;
    scaled.beam_D *= k;
    const auto ds = screwarr::fingertip_deflection(scaled, abs, F);
    worst_scale = std::max(worst_scale, std::abs(ds.d_Et * std::pow(k, 4) - d.d_Et) / d.d_Et);
  }
  return {worst_rel < 1e-10 && worst_lin < 1e-12 && worst_scale < 1e-12,
          fmt::format("d_E(3 N) = {:.9f} mm; oracle rel err {:.3g} (< 1e-10); linearity {:.3g}; "
                      "D^-4 torsion scaling {:.3g}",
                      d0.d_E, worst_rel, worst_lin, worst_scale)};
}

Outcome screw_state_machine() {
  const MaterialSpec mat;
  const screwarr::FingerGeometry geom;
  const double dE = oracle::fingertip(3.0, mat.E, mat.G, geom.l2, geom.l3, geom.l4, geom.beam_D).d_E;
  const double tilt = oracle::tilt_by_scan(20, mat.mu_fingers, 1e-4);
  int mismatches = 0;
  std::map<Verdict, int> counts;
  const screwarr::ScrewSpec m3;
  for (int i = 0; i < 50; ++i) {
    const double theta_deg = 0.5 + 88.9 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double d = 0.05 + 7.95 * j / 49.0;
      Verdict expected = Verdict::Success;
      if (d <= dE) {
        expected = Verdict::Pinched;
      } else if (d >= m3.head_D) {
        expected = Verdict::Lost;
      } else if (theta_deg < tilt) {
        expected = Verdict::Stuck;
      }
      const auto got = screwarr::simulate_arrange(m3, {deg_to_rad(theta_deg), d}, geom, mat);
      mismatches += got.verdict() != expected;
      ++counts[got.verdict()];
    }
  }
  bool operating = true;
  const screwarr::ScrewSpec m6{"M6x12", 0.0056, 10.0, 6.0, 12.0};
  const bool dE_below = dE < 3.0;
  for (const auto& screw : {m3, m6}) {
    const auto t = screwarr::simulate_arrange(screw, {deg_to_rad(40), 3.0}, geom, mat);
    operating = operating && (!dE_below || t.succeeded());
  }
  return {mismatches == 0 && operating && counts.size() == 4,
          fmt::format("2500 cells, {} mismatches (Success {}, Stuck {}, Pinched {}, Lost {}); "
                      "d = 3 mm at 40 deg: {}",
                      mismatches, counts[Verdict::Success], counts[Verdict::Stuck],
                      counts[Verdict::Pinched], counts[Verdict::Lost],
                      operating ? "Success for M3 and M6" : "FAILED")};
}

Outcome holding_force() {
  const sizing::HoldingChain chain;
  sizing::PullTestConfig hi, lo;
  hi.torque_fraction = 0.0334;
  lo.torque_fraction = 0.0167;
  auto capacity = [&](const sizing::PullTestConfig& cfg) {
    const double F = sizing::finger_normal_force(chain.motor, chain.worm, chain.para, cfg);
    return sizing::pull_out_capacity(F, cfg.mu_fingers, 2);
  };
  const double c_hi = capacity(hi), c_lo = capacity(lo);
  const auto s_hi = sizing::emulate_pull_curve(chain, hi, 101);
  const auto s_lo = sizing::emulate_pull_curve(chain, lo, 101);
  bool ordered = true;
  for (std::size_t i = 0; i < s_hi.size(); ++i) ordered = ordered && s_lo[i].force <= s_hi[i].force;
  const bool ok = c_hi > 49.0 / 3 && c_hi < 49.0 * 3 && c_hi == 2 * c_lo &&
                  sizing::peak_force(s_hi) == c_hi && sizing::peak_force(s_lo) == c_lo && ordered;
  return {ok, fmt::format("capacity {:.4f} N at 3.34% (49 N / 3 .. 49 N x 3), {:.4f} N at 1.67%, "
                          "ratio {:.12g}, curves ordered {}",
                          c_hi, c_lo, c_hi / c_lo, ordered ? "yes" : "no")};
}

std::map<std::string, std::string> read_csvs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".csv") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    out[entry.path().filename().string()] = buf.str();
  }
  return out;
}

Outcome determinism(const std::string& cli, const std::string& scenario) {
  const fs::path root = fs::temp_directory_path() / "griphand_acceptance";
  fs::remove_all(root);
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* sub : {"a", "b"}) {
    const fs::path out = root / sub;
    const auto cmd = fmt::format("\"{}\" simulate \"{}\" --out \"{}\" --format csv >/dev/null 2>&1",
                                 cli, scenario, out.string());
    if (std::system(cmd.c_str()) != 0) {
      return {false, fmt::format("command failed: {}", cmd)};
    }
    runs.push_back(read_csvs(out));
  }
  fs::remove_all(root);
  const bool ok = !runs[0].empty() && runs[0] == runs[1];
  return {ok, fmt::format("{} CSV files, byte-identical {}", runs[0].size(), ok ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <griphand-cli> [scenario.json]\n");
    return 2;
  }
  const std::string cli = argv[1];
  const std::string scenario = argc > 2 ? argv[2] : GRIPHAND_TASKBOARD;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> gates{
      {"AC1 crank travel exact reduction at R = L", equal_links_reduction},
      {"AC2 crank torque virtual-work check", virtual_work},
      {"AC3 invert_travel round trip", round_trip},
      {"AC4 stretch threshold force", stretch_gate},
      {"AC5 alignment grid experiment", grid_gate},
      {"AC6 minimum tilt solver", tilt_gate},
      {"AC7 fingertip deflection", deflection_gate},
      {"AC8 screw arrangement state machine", screw_state_machine},
      {"AC9 holding-force model consistency", holding_force},
      {"AC10 simulate determinism", [&] { return determinism(cli, scenario); }},
  };

  int failed = 0;
  for (const auto& [name, gate] : gates) {
    Outcome o;
    try {
      o = gate();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu acceptance criteria passed\n", gates.size() - failed, gates.size());
  return failed == 0 ? 0 : 1;
}
