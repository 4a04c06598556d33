#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "griphand/bench/report.hpp"
#include "griphand/bench/runner.hpp"
#include "griphand/bench/scenario.hpp"
#include "griphand/errors.hpp"

using namespace griphand;
using namespace griphand::bench;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "units": {"length": "mm", "force": "N", "mass": "kg", "angle": "deg"},
  "mechanisms": {"crank": {"R": 8, "L": 12}}
})";

ScenarioSpec taskboard() { return load_scenario(GRIPHAND_TASKBOARD); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  double num(std::size_t row, const std::string& col) const { return std::stod(text(row, col)); }
  const std::string& text(std::size_t row, const std::string& col) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == col) return rows.at(row).at(i);
    }
    throw std::out_of_range(col);
  }
};

Table parse_csv(const std::string& csv) {
  Table t;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  t.header = split_csv_line(line);
  while (std::getline(in, line)) {
    auto row = split_csv_line(line);
    EXPECT_EQ(row.size(), t.header.size()) << line;
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::size_t count_class(const boost::property_tree::ptree& node, const std::string& cls) {
  std::size_t n = 0;
  for (const auto& [tag, child] : node) {
    if (tag == "<xmlattr>") continue;
    if (child.get<std::string>("<xmlattr>.class", "") == cls) ++n;
    n += count_class(child, cls);
  }
  return n;
}

std::size_t svg_elements(const std::string& svg, const std::string& cls) {
  std::istringstream in(svg);
  boost::property_tree::ptree tree;
  boost::property_tree::read_xml(in, tree);  // throws on malformed XML
  EXPECT_EQ(tree.count("svg"), 1u);
  return count_class(tree, cls);
}

const std::set<std::string> kVerdicts{"Success", "Failure", "Stuck", "Lost", "Pinched"};

}  // namespace

TEST(Scenario, MinimalFileLoadsWithDefaults) {
  const auto s = parse_scenario(kMinimal);
  EXPECT_DOUBLE_EQ(s.mechanisms.crank.R, 8);
  EXPECT_DOUBLE_EQ(s.mechanisms.crank.L, 12);
  EXPECT_DOUBLE_EQ(s.mechanisms.para.R, 20);
  EXPECT_DOUBLE_EQ(s.material.E, 2200);
  EXPECT_NEAR(s.finger.theta_f, deg_to_rad(20), 1e-15);
  EXPECT_TRUE(s.objects.empty());
  EXPECT_TRUE(s.experiments.empty());
}

TEST(Scenario, ShortConnectingLinkNamesField) {
  try {
    parse_scenario(R"({"units": {}, "mechanisms": {"crank": {"R": 10, "L": 5}}})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_NE(e.violations().front().find("CrankSpec.L"), std::string::npos);
  }
}

TEST(Scenario, ValidationCollectsEveryViolation) {
  try {
    parse_scenario(R"({"units": {},
      "mechanisms": {"crank": {"R": 10, "L": 5}, "worm": {"ratio": 0}},
      "objects": [{"name": "a", "outer_D": 5, "hole_d": 6}, {"name": "a", "outer_D": 5}],
      "experiments": [{"name": "g", "type": "grid", "object": "nope"}]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_GE(e.violations().size(), 4u) << e.what();
  }
}

TEST(Scenario, BrokenJsonReportsLineAndColumn) {
  try {
    parse_scenario("{\n  \"units\": {},\n  \"mechanisms\": {\n    \"crank\": {\"R\": 10,,}\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(Scenario, WrongTypeReportsFieldPath) {
  try {
    parse_scenario(R"({"units": {}, "mechanisms": {"crank": {"R": "ten"}}})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "mechanisms.crank.R");
  }
}

TEST(Scenario, UnknownKeyRejected) {
  try {
    parse_scenario(R"({"units": {}, "objects": [{"name": "x", "outer_D": 5, "colour": "red"}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "objects[0].colour");
  }
}

TEST(Scenario, UnitsHeader) {
  EXPECT_THROW(parse_scenario(R"({"mechanisms": {}})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"units": {"length": "furlong"}})"), UnitError);
  EXPECT_THROW(parse_scenario(R"({"units": {"angle": "grad"}})"), UnitError);
  const auto s = parse_scenario(R"({"units": {"length": "cm", "angle": "rad", "modulus": "GPa"},
    "mechanisms": {"crank": {"R": 1, "L": 2}}, "material": {"E": 2.2},
    "finger": {"theta_f": 0.5}})");
  EXPECT_DOUBLE_EQ(s.mechanisms.crank.R, 10);
  EXPECT_DOUBLE_EQ(s.material.E, 2200);
  EXPECT_DOUBLE_EQ(s.finger.theta_f, 0.5);
}

TEST(Scenario, TaskboardLoads) {
  const auto s = taskboard();
  for (const char* name : {"washer", "pulley", "peg_with_hole", "solid_peg"}) {
    EXPECT_NE(s.find_object(name), nullptr) << name;
  }
  EXPECT_EQ(s.placeholder_objects.size(), 4u);
  EXPECT_NE(s.find_screw("M3x8"), nullptr);
  EXPECT_NE(s.find_screw("M6x12"), nullptr);
  EXPECT_TRUE(validate(s).empty());
  EXPECT_THROW(load_scenario("does/not/exist.json"), Error);
}

TEST(Report, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Report, GridCsvRevalidates) {
  const auto s = taskboard();
  for (const char* name : {"grid_peg_with_hole", "grid_solid_peg"}) {
    const auto& e = std::get<GridExperiment>(*s.find_experiment(name));
    const auto t = parse_csv(evaluate(s, e).csv);
    ASSERT_EQ(t.rows.size(), e.ring_diameters.size() * e.points_per_ring);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double x = t.num(i, "x_mm"), y = t.num(i, "y_mm");
      EXPECT_NEAR(std::hypot(x, y), t.num(i, "radius_mm"), 1e-8);
      EXPECT_NEAR(t.num(i, "radius_mm"), t.num(i, "ring_diameter_mm") / 2, 1e-8);
      EXPECT_TRUE(kVerdicts.count(t.text(i, "verdict")));
      EXPECT_EQ(t.text(i, "verdict") == "Success", t.text(i, "failing_phase").empty());
    }
  }
}

TEST(Report, TraceCsvRevalidates) {
  const auto s = taskboard();
  for (const char* name : {"align_washer", "align_pulley", "align_solid_peg", "arrange_m3"}) {
    const auto t = parse_csv(evaluate(s, *s.find_experiment(name)).csv);
    ASSERT_FALSE(t.rows.empty());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      EXPECT_EQ(t.num(i, "step"), static_cast<double>(i));
      EXPECT_GE(t.num(i, "aperture_mm"), 0);
      EXPECT_GE(t.num(i, "force_N"), 0);
      EXPECT_GE(t.num(i, "tilt_deg"), 0);
      EXPECT_LT(t.num(i, "tilt_deg"), 90);
      // exactly one terminal verdict, on the last row
      EXPECT_EQ(t.text(i, "verdict").empty(), i + 1 != t.rows.size());
    }
    EXPECT_EQ(t.text(t.rows.size() - 1, "verdict"), "Success") << name;
  }
}

TEST(Report, ArrangeTraceEndsVertical) {
  const auto s = taskboard();
  const auto t = parse_csv(evaluate(s, *s.find_experiment("arrange_m3")).csv);
  EXPECT_EQ(t.text(t.rows.size() - 1, "phase"), "Vertical");
}

TEST(Report, PullCsvRevalidates) {
  const auto s = taskboard();
  const auto t = parse_csv(evaluate(s, *s.find_experiment("pull_curve")).csv);
  ASSERT_EQ(t.rows.size(), 202u);
  double peak_lo = 0, peak_hi = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double f = t.num(i, "fraction");
    EXPECT_GT(f, 0);
    EXPECT_LE(f, 1);
    EXPECT_GE(t.num(i, "force_N"), 0);
    (f < 0.02 ? peak_lo : peak_hi) = std::max(f < 0.02 ? peak_lo : peak_hi, t.num(i, "force_N"));
  }
  EXPECT_NEAR(peak_hi, 2 * peak_lo, 1e-6);
}

TEST(Report, TransmissionCsvRevalidates) {
  const auto s = taskboard();
  for (const char* name : {"crank_sweep", "para_sweep"}) {
    const auto t = parse_csv(evaluate(s, *s.find_experiment(name)).csv);
    ASSERT_EQ(t.rows.size(), 91u);
    double last = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double a = t.num(i, "alpha_deg");
      EXPECT_GE(a, 0);
      EXPECT_LE(a, 90);
      EXPECT_GE(t.num(i, "travel_mm"), last);
      last = t.num(i, "travel_mm");
    }
    EXPECT_EQ(t.num(90, "alpha_deg"), 90);
  }
}

TEST(Report, CsvIsDeterministic) {
  const auto s = taskboard();
  for (const auto& e : s.experiments) {
    EXPECT_EQ(evaluate(s, e).csv, evaluate(s, e).csv);
    EXPECT_EQ(evaluate(s, e).svg, evaluate(s, e).svg);
  }
}

TEST(Report, SvgWellFormedWithDeclaredElementCounts) {
  const auto s = taskboard();
  EXPECT_EQ(svg_elements(evaluate(s, *s.find_experiment("grid_peg_with_hole")).svg, "point"), 16u);
  EXPECT_EQ(svg_elements(evaluate(s, *s.find_experiment("grid_solid_peg")).svg, "point"), 16u);
  EXPECT_EQ(svg_elements(evaluate(s, *s.find_experiment("pull_curve")).svg, "curve"), 2u);
  EXPECT_EQ(svg_elements(evaluate(s, *s.find_experiment("crank_sweep")).svg, "curve"), 2u);
  for (const char* name : {"align_washer", "align_pulley", "align_solid_peg", "arrange_m3",
                           "arrange_m6"}) {
    const auto out = evaluate(s, *s.find_experiment(name));
    const auto rows = parse_csv(out.csv).rows.size();
    EXPECT_EQ(svg_elements(out.svg, "phase"), rows) << name;
  }
}

TEST(Runner, WritesFilesAndRejectsUnknownExperiment) {
  const auto s = taskboard();
  const fs::path dir = fs::temp_directory_path() / "griphand_runner_test";
  fs::remove_all(dir);
  const auto files = run(s, "arrange_m3", {dir, OutputFormat::Both});
  ASSERT_EQ(files.size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "arrange_m3.csv"));
  EXPECT_TRUE(fs::exists(dir / "arrange_m3.svg"));
  EXPECT_THROW(run(s, "missing", {dir, OutputFormat::Csv}), DomainError);
  const auto all = run_all(s, {dir, OutputFormat::Csv});
  EXPECT_EQ(all.size(), s.experiments.size());
  for (const auto& o : all) EXPECT_TRUE(fs::exists(dir / (o.name + ".csv")));
  fs::remove_all(dir);
}

TEST(Runner, FailedWriteLeavesNothingBehind) {
  const auto s = taskboard();
  const fs::path dir = fs::temp_directory_path() / "griphand_runner_fail";
  fs::remove_all(dir);
  fs::create_directories(dir / "crank_sweep.svg");  // a directory blocks the svg write
  EXPECT_THROW(run(s, "crank_sweep", {dir, OutputFormat::Both}), Error);
  EXPECT_FALSE(fs::exists(dir / "crank_sweep.csv"));
  fs::remove_all(dir);
}

TEST(Runner, Formats) {
  EXPECT_EQ(parse_format("csv"), OutputFormat::Csv);
  EXPECT_EQ(parse_format("both"), OutputFormat::Both);
  EXPECT_THROW(parse_format("png"), DomainError);
}
