#include "griphand/bench/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "griphand/angles.hpp"
#include "griphand/errors.hpp"

namespace griphand::bench {

namespace {

using nlohmann::json;

struct Scale {
  double length = 1.0;
  double force = 1.0;
  double mass = 1.0;
  double angle = 1.0;
  double torque = 1.0;
  double modulus = 1.0;
};

double unit_factor(std::string_view quantity, const std::string& unit) {
  static const std::map<std::string_view, std::map<std::string, double, std::less<>>> table = {
      {"length", {{"mm", 1.0}, {"cm", 10.0}, {"m", 1000.0}}},
      {"force", {{"N", 1.0}, {"kN", 1000.0}}},
      {"mass", {{"kg", 1.0}, {"g", 1e-3}}},
      {"angle", {{"deg", kPi / 180.0}, {"rad", 1.0}}},
      {"torque", {{"N*mm", 1.0}, {"N*m", 1000.0}}},
      {"modulus", {{"MPa", 1.0}, {"GPa", 1000.0}}},
  };
  const auto& units = table.at(quantity);
  auto it = units.find(unit);
  if (it == units.end()) {
    std::string known;
    for (const auto& [name, factor] : units) {
      known += known.empty() ? name : ", " + name;
    }
    throw UnitError(
        fmt::format("units.{}: unsupported unit '{}' (expected one of: {})", quantity, unit, known));
  }
  return it->second;
}

std::string join_path(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : fmt::format("{}.{}", base, key);
}

std::string index_path(const std::string& base, std::size_t i) {
  return fmt::format("{}[{}]", base, i);
}

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError(fmt::format("{}: {}", path, what), path);
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) {
    field_error(path.empty() ? "<root>" : path, "expected an object");
  }
}

void check_keys(const json& node, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      field_error(join_path(path, key), "unknown field");
    }
  }
}

// Typed accessors. An absent key leaves `out` at its default.
void read_number(const json& node, std::string_view key, const std::string& path, double scale,
                 double& out) {
  auto it = node.find(key);
  if (it == node.end()) {
    return;
  }
  if (!it->is_number()) {
    field_error(join_path(path, key), "expected a number");
  }
  out = it->get<double>() * scale;
}

void read_count(const json& node, std::string_view key, const std::string& path,
                std::size_t& out) {
  auto it = node.find(key);
  if (it == node.end()) {
    return;
  }
  if (!it->is_number_integer() || it->get<long long>() < 0) {
    field_error(join_path(path, key), "expected a non-negative integer");
  }
  out = it->get<std::size_t>();
}

void read_bool(const json& node, std::string_view key, const std::string& path, bool& out) {
  auto it = node.find(key);
  if (it == node.end()) {
    return;
  }
  if (!it->is_boolean()) {
    field_error(join_path(path, key), "expected true or false");
  }
  out = it->get<bool>();
}

void read_string(const json& node, std::string_view key, const std::string& path,
                 std::string& out) {
  auto it = node.find(key);
  if (it == node.end()) {
    return;
  }
  if (!it->is_string()) {
    field_error(join_path(path, key), "expected a string");
  }
  out = it->get<std::string>();
}

std::string required_string(const json& node, std::string_view key, const std::string& path) {
  if (!node.contains(key)) {
    field_error(join_path(path, key), "missing required field");
  }
  std::string out;
  read_string(node, key, path, out);
  return out;
}

std::vector<double> read_number_list(const json& node, std::string_view key,
                                     const std::string& path, double scale,
                                     std::vector<double> fallback) {
  auto it = node.find(key);
  if (it == node.end()) {
    return fallback;
  }
  const auto here = join_path(path, key);
  if (!it->is_array()) {
    field_error(here, "expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& v = (*it)[i];
    if (!v.is_number()) {
      field_error(index_path(here, i), "expected a number");
    }
    out.push_back(v.get<double>() * scale);
  }
  return out;
}

alignment::Strategy read_strategy(const json& node, const std::string& path) {
  std::string name = "stretch";
  read_string(node, "strategy", path, name);
  if (name == "stretch") return alignment::Strategy::Stretch;
  if (name == "squeeze") return alignment::Strategy::Squeeze;
  field_error(join_path(path, "strategy"), fmt::format("expected 'stretch' or 'squeeze', got '{}'", name));
}

alignment::StretchContact read_contact(const json& parent, const std::string& parent_path,
                                       const Scale& scale) {
  alignment::StretchContact contact;
  auto it = parent.find("contact");
  if (it == parent.end()) {
    return contact;
  }
  const auto path = join_path(parent_path, "contact");
  require_object(*it, path);
  check_keys(*it, path, {"theta", "force", "gravity"});
  read_number(*it, "theta", path, scale.angle, contact.theta);
  read_number(*it, "force", path, scale.force, contact.force_F);
  read_number(*it, "gravity", path, 1.0, contact.gravity_g);
  return contact;
}

Scale read_units(const json& root, Units& units) {
  auto it = root.find("units");
  if (it == root.end()) {
    field_error("units", "missing required units header");
  }
  require_object(*it, "units");
  check_keys(*it, "units", {"length", "force", "mass", "angle", "torque", "modulus"});
  read_string(*it, "length", "units", units.length);
  read_string(*it, "force", "units", units.force);
  read_string(*it, "mass", "units", units.mass);
  read_string(*it, "angle", "units", units.angle);
  read_string(*it, "torque", "units", units.torque);
  read_string(*it, "modulus", "units", units.modulus);
  return Scale{unit_factor("length", units.length), unit_factor("force", units.force),
               unit_factor("mass", units.mass),     unit_factor("angle", units.angle),
               unit_factor("torque", units.torque), unit_factor("modulus", units.modulus)};
}

void read_mechanisms(const json& root, const Scale& scale, MechanismBundle& mech) {
  auto it = root.find("mechanisms");
  if (it == root.end()) {
    return;
  }
  const std::string path = "mechanisms";
  require_object(*it, path);
  check_keys(*it, path, {"crank", "parallelogram", "worm", "motor"});
  const json& m = *it;
  if (auto c = m.find("crank"); c != m.end()) {
    const auto p = join_path(path, "crank");
    require_object(*c, p);
    check_keys(*c, p, {"R", "L"});
    read_number(*c, "R", p, scale.length, mech.crank.R);
    read_number(*c, "L", p, scale.length, mech.crank.L);
  }
  if (auto c = m.find("parallelogram"); c != m.end()) {
    const auto p = join_path(path, "parallelogram");
    require_object(*c, p);
    check_keys(*c, p, {"R", "L"});
    read_number(*c, "R", p, scale.length, mech.para.R);
    read_number(*c, "L", p, scale.length, mech.para.L);
  }
  if (auto c = m.find("worm"); c != m.end()) {
    const auto p = join_path(path, "worm");
    require_object(*c, p);
    check_keys(*c, p, {"ratio", "efficiency", "self_locking"});
    read_number(*c, "ratio", p, 1.0, mech.worm.ratio);
    read_number(*c, "efficiency", p, 1.0, mech.worm.efficiency);
    read_bool(*c, "self_locking", p, mech.worm.self_locking);
  }
  if (auto c = m.find("motor"); c != m.end()) {
    const auto p = join_path(path, "motor");
    require_object(*c, p);
    check_keys(*c, p, {"name", "stall_torque"});
    read_string(*c, "name", p, mech.motor.name);
    read_number(*c, "stall_torque", p, scale.torque, mech.motor.stall_torque);
  }
}

void read_objects(const json& root, const Scale& scale, ScenarioSpec& spec) {
  auto it = root.find("objects");
  if (it == root.end()) {
    return;
  }
  if (!it->is_array()) {
    field_error("objects", "expected an array");
  }
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& o = (*it)[i];
    const auto p = index_path("objects", i);
    require_object(o, p);
    check_keys(o, p,
               {"name", "outer_D", "hole_d", "height_H", "mass", "mu_ground", "may_stick",
                "placeholder", "note"});
    alignment::ObjectSpec obj;
    obj.name = required_string(o, "name", p);
    read_number(o, "outer_D", p, scale.length, obj.outer_D);
    read_number(o, "hole_d", p, scale.length, obj.hole_d);
    read_number(o, "height_H", p, scale.length, obj.height_H);
    read_number(o, "mass", p, scale.mass, obj.mass);
    read_number(o, "mu_ground", p, 1.0, obj.mu_ground);
    read_bool(o, "may_stick", p, obj.may_stick);
    bool placeholder = false;
    read_bool(o, "placeholder", p, placeholder);
    std::string note;
    read_string(o, "note", p, note);
    if (placeholder) {
      spec.placeholder_objects.push_back(obj.name);
    }
    spec.objects.push_back(std::move(obj));
  }
}

void read_screws(const json& root, const Scale& scale, ScenarioSpec& spec) {
  auto it = root.find("screws");
  if (it == root.end()) {
    return;
  }
  if (!it->is_array()) {
    field_error("screws", "expected an array");
  }
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& s = (*it)[i];
    const auto p = index_path("screws", i);
    require_object(s, p);
    check_keys(s, p, {"name", "mass", "head_D", "shank_d", "length"});
    screwarr::ScrewSpec screw;
    screw.nominal = required_string(s, "name", p);
    read_number(s, "mass", p, scale.mass, screw.mass);
    read_number(s, "head_D", p, scale.length, screw.head_D);
    read_number(s, "shank_d", p, scale.length, screw.shank_d);
    read_number(s, "length", p, scale.length, screw.length);
    spec.screws.push_back(std::move(screw));
  }
}

Experiment read_experiment(const json& e, const std::string& p, const Scale& scale) {
  require_object(e, p);
  const std::string name = required_string(e, "name", p);
  const std::string type = required_string(e, "type", p);

  if (type == "grid") {
    check_keys(e, p, {"name", "type", "object", "strategy", "ring_diameters", "points_per_ring",
                      "contact"});
    GridExperiment g;
    g.name = name;
    g.object = required_string(e, "object", p);
    g.strategy = read_strategy(e, p);
    g.ring_diameters = read_number_list(e, "ring_diameters", p, scale.length, g.ring_diameters);
    read_count(e, "points_per_ring", p, g.points_per_ring);
    g.contact = read_contact(e, p, scale);
    return g;
  }
  if (type == "alignment") {
    check_keys(e, p, {"name", "type", "object", "strategy", "initial", "contact"});
    AlignmentExperiment a;
    a.name = name;
    a.object = required_string(e, "object", p);
    a.strategy = read_strategy(e, p);
    const auto initial = read_number_list(e, "initial", p, scale.length, {0.0, 0.0});
    if (initial.size() != 2) {
      field_error(join_path(p, "initial"), "expected [x, y]");
    }
    a.initial = {initial[0], initial[1]};
    a.contact = read_contact(e, p, scale);
    return a;
  }
  if (type == "pull_curve") {
    check_keys(e, p, {"name", "type", "fractions", "samples", "grip_state", "mu_fingers",
                      "pull_speed", "contact_count", "slip_ratio", "ramp_share", "displacement"});
    PullCurveExperiment c;
    c.name = name;
    c.fractions = read_number_list(e, "fractions", p, 1.0, c.fractions);
    read_count(e, "samples", p, c.samples);
    if (auto gs = e.find("grip_state"); gs != e.end()) {
      const auto gp = join_path(p, "grip_state");
      require_object(*gs, gp);
      check_keys(*gs, gp, {"alpha", "beta"});
      read_number(*gs, "alpha", gp, scale.angle, c.config.grip_state.alpha);
      read_number(*gs, "beta", gp, scale.angle, c.config.grip_state.beta);
    }
    read_number(e, "mu_fingers", p, 1.0, c.config.mu_fingers);
    read_number(e, "pull_speed", p, scale.length, c.config.pull_speed);
    read_count(e, "contact_count", p, c.options.contact_count);
    read_number(e, "slip_ratio", p, 1.0, c.options.slip_ratio);
    read_number(e, "ramp_share", p, 1.0, c.options.ramp_share);
    read_number(e, "displacement", p, scale.length, c.options.displacement);
    return c;
  }
  if (type == "arrange") {
    check_keys(e, p, {"name", "type", "screw", "theta_gri", "opening_d", "grip_force",
                      "deflection_form"});
    ArrangeExperiment a;
    a.name = name;
    a.screw = required_string(e, "screw", p);
    read_number(e, "theta_gri", p, scale.angle, a.plan.theta_gri);
    read_number(e, "opening_d", p, scale.length, a.plan.opening_d);
    read_number(e, "grip_force", p, scale.force, a.options.grip_force);
    std::string form = "segment";
    read_string(e, "deflection_form", p, form);
    if (form == "segment") {
      a.options.form = screwarr::DeflectionForm::Segment;
    } else if (form == "span") {
      a.options.form = screwarr::DeflectionForm::Span;
    } else {
      field_error(join_path(p, "deflection_form"),
                  fmt::format("expected 'segment' or 'span', got '{}'", form));
    }
    return a;
  }
  if (type == "transmission") {
    check_keys(e, p, {"name", "type", "mechanism", "samples", "force", "beta"});
    TransmissionExperiment t;
    t.name = name;
    std::string mech = "crank";
    read_string(e, "mechanism", p, mech);
    if (mech == "crank") {
      t.mechanism = MechanismKind::Crank;
    } else if (mech == "parallelogram" || mech == "para") {
      t.mechanism = MechanismKind::Parallelogram;
    } else {
      field_error(join_path(p, "mechanism"),
                  fmt::format("expected 'crank' or 'parallelogram', got '{}'", mech));
    }
    read_count(e, "samples", p, t.samples);
    read_number(e, "force", p, scale.force, t.force);
    read_number(e, "beta", p, scale.angle, t.beta);
    return t;
  }
  field_error(join_path(p, "type"), fmt::format("unknown experiment type '{}'", type));
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string_view experiment_name(const Experiment& experiment) {
  return std::visit([](const auto& e) -> std::string_view { return e.name; }, experiment);
}

std::string_view experiment_type(const Experiment& experiment) {
  struct Visitor {
    std::string_view operator()(const GridExperiment&) const { return "grid"; }
    std::string_view operator()(const AlignmentExperiment&) const { return "alignment"; }
    std::string_view operator()(const PullCurveExperiment&) const { return "pull_curve"; }
    std::string_view operator()(const ArrangeExperiment&) const { return "arrange"; }
    std::string_view operator()(const TransmissionExperiment&) const { return "transmission"; }
  };
  return std::visit(Visitor{}, experiment);
}

const alignment::ObjectSpec* ScenarioSpec::find_object(std::string_view name) const {
  auto it = std::find_if(objects.begin(), objects.end(),
                         [&](const auto& o) { return o.name == name; });
  return it == objects.end() ? nullptr : &*it;
}

const screwarr::ScrewSpec* ScenarioSpec::find_screw(std::string_view name) const {
  auto it = std::find_if(screws.begin(), screws.end(),
                         [&](const auto& s) { return s.nominal == name; });
  return it == screws.end() ? nullptr : &*it;
}

const Experiment* ScenarioSpec::find_experiment(std::string_view name) const {
  auto it = std::find_if(experiments.begin(), experiments.end(),
                         [&](const auto& e) { return experiment_name(e) == name; });
  return it == experiments.end() ? nullptr : &*it;
}

std::vector<std::string> validate(const ScenarioSpec& s) {
  std::vector<std::string> out;
  auto add = [&](const std::vector<std::string>& more) {
    out.insert(out.end(), more.begin(), more.end());
  };
  add(mechkin::violations(s.mechanisms.crank));
  add(mechkin::violations(s.mechanisms.para));
  add(mechkin::violations(s.mechanisms.worm));
  add(sizing::violations(s.mechanisms.motor));
  add(violations(s.material));
  add(screwarr::violations(s.finger));
  add(alignment::violations(s.aperture));

  std::set<std::string, std::less<>> seen;
  for (const auto& obj : s.objects) {
    add(alignment::violations(obj));
    if (!seen.insert(obj.name).second) {
      out.push_back(fmt::format("objects: duplicate name '{}'", obj.name));
    }
  }
  seen.clear();
  for (const auto& screw : s.screws) {
    add(screwarr::violations(screw));
    if (!seen.insert(screw.nominal).second) {
      out.push_back(fmt::format("screws: duplicate name '{}'", screw.nominal));
    }
  }

  seen.clear();
  for (const auto& experiment : s.experiments) {
    const std::string name(experiment_name(experiment));
    const auto where = fmt::format("experiment '{}'", name);
    if (!seen.insert(name).second) {
      out.push_back(fmt::format("experiments: duplicate name '{}'", name));
    }
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, GridExperiment> ||
                        std::is_same_v<T, AlignmentExperiment>) {
            if (!s.find_object(e.object)) {
              out.push_back(fmt::format("{}: unknown object '{}'", where, e.object));
            }
            for (const auto& v : alignment::violations(e.contact)) {
              out.push_back(fmt::format("{}: {}", where, v));
            }
          }
          if constexpr (std::is_same_v<T, GridExperiment>) {
            if (e.ring_diameters.empty()) {
              out.push_back(fmt::format("{}: ring_diameters must not be empty", where));
            }
            for (double d : e.ring_diameters) {
              if (!(d >= 0.0)) {
                out.push_back(fmt::format("{}: ring diameter must be >= 0 (got {})", where, d));
              }
            }
            if (e.points_per_ring == 0) {
              out.push_back(fmt::format("{}: points_per_ring must be >= 1", where));
            }
          }
          if constexpr (std::is_same_v<T, PullCurveExperiment>) {
            if (e.fractions.empty()) {
              out.push_back(fmt::format("{}: fractions must not be empty", where));
            }
            for (double f : e.fractions) {
              if (!(f > 0.0 && f <= 1.0)) {
                out.push_back(
                    fmt::format("{}: torque fraction must be in (0, 1] (got {})", where, f));
              }
            }
            if (e.samples < 2) {
              out.push_back(fmt::format("{}: samples must be >= 2", where));
            }
            if (!(e.config.mu_fingers >= 0.0) || !(e.config.pull_speed > 0.0)) {
              out.push_back(fmt::format("{}: mu_fingers must be >= 0 and pull_speed > 0", where));
            }
            if (!(e.options.slip_ratio >= 0.0 && e.options.slip_ratio <= 1.0)) {
              out.push_back(fmt::format("{}: slip_ratio must be in [0, 1]", where));
            }
            if (!(e.options.ramp_share > 0.0 && e.options.ramp_share <= 1.0)) {
              out.push_back(fmt::format("{}: ramp_share must be in (0, 1]", where));
            }
            if (!(e.options.displacement > 0.0)) {
              out.push_back(fmt::format("{}: displacement must be > 0", where));
            }
            if (!(sizing::grip_lever(s.mechanisms.para, e.config.grip_state) > 0.0)) {
              out.push_back(fmt::format(
                  "{}: grip_state gives a non-positive lever L cos(beta) - R sin(alpha)", where));
            }
          }
          if constexpr (std::is_same_v<T, ArrangeExperiment>) {
            if (!s.find_screw(e.screw)) {
              out.push_back(fmt::format("{}: unknown screw '{}'", where, e.screw));
            }
            for (const auto& v : screwarr::violations(e.plan)) {
              out.push_back(fmt::format("{}: {}", where, v));
            }
            if (!(e.options.grip_force >= 0.0)) {
              out.push_back(fmt::format("{}: grip_force must be >= 0", where));
            }
          }
          if constexpr (std::is_same_v<T, TransmissionExperiment>) {
            if (e.samples < 2) {
              out.push_back(fmt::format("{}: samples must be >= 2", where));
            }
            if (!(e.force >= 0.0)) {
              out.push_back(fmt::format("{}: force must be >= 0", where));
            }
          }
        },
        experiment);
  }
  return out;
}

ScenarioSpec parse_scenario(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError(fmt::format("{}:{}:{}: invalid JSON: {}", source, line, column, e.what()),
                     "", line, column);
  }

  ScenarioSpec spec;
  require_object(root, "");
  check_keys(root, "",
             {"description", "units", "mechanisms", "material", "finger", "aperture", "alignment",
              "objects", "screws", "experiments"});
  read_string(root, "description", "", spec.description);
  const Scale scale = read_units(root, spec.units);
  read_mechanisms(root, scale, spec.mechanisms);

  if (auto m = root.find("material"); m != root.end()) {
    require_object(*m, "material");
    check_keys(*m, "material", {"E", "G", "mu_fingers"});
    read_number(*m, "E", "material", scale.modulus, spec.material.E);
    read_number(*m, "G", "material", scale.modulus, spec.material.G);
    read_number(*m, "mu_fingers", "material", 1.0, spec.material.mu_fingers);
  }
  if (auto f = root.find("finger"); f != root.end()) {
    require_object(*f, "finger");
    check_keys(*f, "finger", {"l1", "l2", "l3", "l4", "beam_D", "theta_f"});
    read_number(*f, "l1", "finger", scale.length, spec.finger.l1);
    read_number(*f, "l2", "finger", scale.length, spec.finger.l2);
    read_number(*f, "l3", "finger", scale.length, spec.finger.l3);
    read_number(*f, "l4", "finger", scale.length, spec.finger.l4);
    read_number(*f, "beam_D", "finger", scale.length, spec.finger.beam_D);
    read_number(*f, "theta_f", "finger", scale.angle, spec.finger.theta_f);
  }
  if (auto a = root.find("aperture"); a != root.end()) {
    require_object(*a, "aperture");
    check_keys(*a, "aperture", {"inner_closed_width", "inner_max_stretch", "outer_max_open"});
    read_number(*a, "inner_closed_width", "aperture", scale.length,
                spec.aperture.inner_closed_width);
    read_number(*a, "inner_max_stretch", "aperture", scale.length,
                spec.aperture.inner_max_stretch);
    read_number(*a, "outer_max_open", "aperture", scale.length, spec.aperture.outer_max_open);
  }
  if (auto a = root.find("alignment"); a != root.end()) {
    require_object(*a, "alignment");
    check_keys(*a, "alignment", {"light_object_mass", "soft_close_force", "firm_close_force"});
    read_number(*a, "light_object_mass", "alignment", scale.mass,
                spec.alignment_options.light_object_mass);
    read_number(*a, "soft_close_force", "alignment", scale.force,
                spec.alignment_options.soft_close_force);
    read_number(*a, "firm_close_force", "alignment", scale.force,
                spec.alignment_options.firm_close_force);
  }
  read_objects(root, scale, spec);
  read_screws(root, scale, spec);

  if (auto e = root.find("experiments"); e != root.end()) {
    if (!e->is_array()) {
      field_error("experiments", "expected an array");
    }
    for (std::size_t i = 0; i < e->size(); ++i) {
      spec.experiments.push_back(read_experiment((*e)[i], index_path("experiments", i), scale));
    }
  }

  auto problems = validate(spec);
  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(fmt::format("cannot open scenario file '{}'", path.string()), "");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

}  // namespace griphand::bench
