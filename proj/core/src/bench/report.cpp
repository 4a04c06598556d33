#include "griphand/bench/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "griphand/angles.hpp"

namespace griphand::bench {

namespace {

constexpr std::string_view kGreen = "#2ca02c";
constexpr std::string_view kRed = "#d62728";
constexpr std::string_view kPalette[] = {"#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  return fmt::format("{:.3f}", v);
}

class Svg {
 public:
  Svg(double width, double height) : width_(width), height_(height) {}

  void line(double x1, double y1, double x2, double y2, std::string_view stroke,
            std::string_view extra = {}) {
    body_ += fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"{}/>\n",
                         px(x1), px(y1), px(x2), px(y2), stroke, extra);
  }

  void text(double x, double y, std::string_view content, std::string_view anchor = "start",
            int size = 12) {
    body_ += fmt::format(
        "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"{}\">{}</text>\n", px(x), px(y),
        size, anchor, xml_escape(content));
  }

  void raw(std::string element) { body_ += "  " + element + "\n"; }

  std::string str(std::string_view title) const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\">\n",
        px(width_), px(height_), px(width_), px(height_));
    out += fmt::format("  <title>{}</title>\n", xml_escape(title));
    out += fmt::format("  <rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                       px(width_), px(height_));
    out += body_;
    out += "</svg>\n";
    return out;
  }

 private:
  double width_;
  double height_;
  std::string body_;
};

// Linear map from data range to pixel range.
struct Axis {
  double lo;
  double hi;
  double px_lo;
  double px_hi;

  double operator()(double v) const {
    const double span = hi - lo;
    return span == 0.0 ? px_lo : px_lo + (v - lo) / span * (px_hi - px_lo);
  }
};

double nice_max(double v) { return v > 0.0 ? v * 1.1 : 1.0; }

std::string polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke,
                     std::string_view label) {
  std::string points;
  for (const auto& [x, y] : pts) {
    if (!points.empty()) points += ' ';
    points += px(x) + "," + px(y);
  }
  return fmt::format(
      "<polyline class=\"curve\" data-label=\"{}\" fill=\"none\" stroke=\"{}\" "
      "stroke-width=\"2\" points=\"{}\"/>",
      xml_escape(label), stroke, points);
}

void frame(Svg& svg, double left, double top, double right, double bottom,
           std::string_view x_label, std::string_view y_label) {
  svg.line(left, bottom, right, bottom, "#333");
  svg.line(left, top, left, bottom, "#333");
  svg.text((left + right) / 2.0, bottom + 35.0, x_label, "middle");
  svg.raw(fmt::format(
      "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 {} {})\">{}</text>",
      px(left - 45.0), px((top + bottom) / 2.0), px(left - 45.0), px((top + bottom) / 2.0),
      xml_escape(y_label)));
}

void ticks(Svg& svg, const Axis& x, const Axis& y, double bottom, double left) {
  for (int i = 0; i <= 4; ++i) {
    const double xv = x.lo + (x.hi - x.lo) * i / 4.0;
    const double yv = y.lo + (y.hi - y.lo) * i / 4.0;
    svg.line(x(xv), bottom, x(xv), bottom + 5.0, "#333");
    svg.text(x(xv), bottom + 18.0, fmt::format("{:.3g}", xv), "middle", 10);
    svg.line(left - 5.0, y(yv), left, y(yv), "#333");
    svg.text(left - 8.0, y(yv) + 4.0, fmt::format("{:.3g}", yv), "end", 10);
  }
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.9g}", value);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string grid_csv(const alignment::GridReport& report) {
  std::string out =
      "strategy,ring_index,ring_diameter_mm,angle_index,angle_deg,x_mm,y_mm,radius_mm,verdict,"
      "failing_phase\n";
  for (const auto& p : report.points) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", alignment::to_string(report.strategy),
                       p.ring_index, format_number(p.ring_diameter), p.angle_index,
                       format_number(rad_to_deg(p.angle)), format_number(p.pose.x),
                       format_number(p.pose.y), format_number(std::hypot(p.pose.x, p.pose.y)),
                       to_string(p.verdict), csv_field(p.failing_phase));
  }
  return out;
}

std::string trace_csv(const StrategyTrace& trace) {
  std::string out = "strategy,step,phase,x_mm,y_mm,aperture_mm,force_N,tilt_deg,status,verdict,note\n";
  const auto& records = trace.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const bool last = i + 1 == records.size();
    const std::string verdict =
        last && trace.finished() ? std::string(to_string(trace.verdict())) : "";
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", trace.strategy(), i, r.phase,
                       format_number(r.pose.x), format_number(r.pose.y),
                       format_number(r.aperture), format_number(r.force),
                       format_number(rad_to_deg(r.tilt)), to_string(r.status), verdict,
                       csv_field(r.note));
  }
  return out;
}

std::string pull_csv(std::span<const PullCurve> curves) {
  std::string out = "fraction,sample,displacement_mm,time_s,force_N\n";
  for (const auto& curve : curves) {
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
      const auto& s = curve.samples[i];
      out += fmt::format("{},{},{},{},{}\n", format_number(curve.fraction), i,
                         format_number(s.displacement), format_number(s.time),
                         format_number(s.force));
    }
  }
  return out;
}

std::string transmission_csv(const TransmissionSweep& sweep) {
  std::string out;
  if (sweep.mechanism == MechanismKind::Crank) {
    out = "alpha_deg,beta_deg,travel_mm,approx_travel_mm,torque_Nmm,singular\n";
    for (const auto& s : sweep.samples) {
      out += fmt::format("{},{},{},{},{},{}\n", format_number(rad_to_deg(s.alpha)),
                         format_number(rad_to_deg(s.beta)), format_number(s.travel),
                         format_number(s.approx_travel), format_number(s.torque),
                         s.singular ? 1 : 0);
    }
  } else {
    out = "alpha_deg,beta_deg,travel_mm,torque_Nmm,virtual_work_torque_Nmm\n";
    for (const auto& s : sweep.samples) {
      out += fmt::format("{},{},{},{},{}\n", format_number(rad_to_deg(s.alpha)),
                         format_number(rad_to_deg(s.beta)), format_number(s.travel),
                         format_number(s.torque), format_number(s.reference_torque));
    }
  }
  return out;
}

std::string grid_svg(const alignment::GridReport& report, std::string_view title) {
  constexpr double size = 420.0;
  constexpr double centre = size / 2.0;
  constexpr double reach = 150.0;
  double max_radius = 0.0;
  for (double d : report.ring_diameters) max_radius = std::max(max_radius, d / 2.0);
  const double scale = max_radius > 0.0 ? reach / max_radius : 1.0;

  Svg svg(size, size + 40.0);
  svg.text(centre, 24.0, title, "middle", 14);
  svg.line(centre - reach - 20.0, centre, centre + reach + 20.0, centre, "#ccc");
  svg.line(centre, centre - reach - 20.0, centre, centre + reach + 20.0, "#ccc");
  for (double d : report.ring_diameters) {
    svg.raw(fmt::format(
        "<circle class=\"ring\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#999\" "
        "stroke-dasharray=\"4 3\"/>",
        px(centre), px(centre), px(d / 2.0 * scale)));
  }
  for (const auto& p : report.points) {
    const bool ok = p.verdict == Verdict::Success;
    svg.raw(fmt::format(
        "<circle class=\"point\" data-ring=\"{}\" data-angle=\"{}\" data-verdict=\"{}\" "
        "cx=\"{}\" cy=\"{}\" r=\"7\" fill=\"{}\" stroke=\"#222\"/>",
        p.ring_index, p.angle_index, to_string(p.verdict), px(centre + p.pose.x * scale),
        px(centre - p.pose.y * scale), ok ? kGreen : kRed));
  }
  svg.text(centre, size + 10.0,
           fmt::format("{} strategy: {}/{} errors eliminated",
                       alignment::to_string(report.strategy), report.successes(), report.total()),
           "middle");
  return svg.str(title);
}

std::string trace_svg(const StrategyTrace& trace, std::string_view title) {
  constexpr double box_w = 130.0;
  constexpr double gap = 20.0;
  constexpr double box_h = 60.0;
  const auto& records = trace.records();
  const double width = std::max(300.0, 40.0 + records.size() * (box_w + gap));
  Svg svg(width, 190.0);
  svg.text(20.0, 24.0, title, "start", 14);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const double x = 20.0 + i * (box_w + gap);
    const bool ok = r.status == PhaseStatus::Ok;
    svg.raw(fmt::format(
        "<rect class=\"phase\" data-step=\"{}\" data-status=\"{}\" x=\"{}\" y=\"50.000\" "
        "width=\"{}\" height=\"{}\" rx=\"6\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"{}\"/>",
        i, to_string(r.status), px(x), px(box_w), px(box_h), ok ? kGreen : kRed,
        ok ? kGreen : kRed));
    svg.text(x + box_w / 2.0, 76.0, r.phase, "middle", 12);
    svg.text(x + box_w / 2.0, 96.0,
             fmt::format("{:.3g} mm / {:.3g} N", r.aperture, r.force), "middle", 10);
    if (i + 1 < records.size()) {
      svg.line(x + box_w, 80.0, x + box_w + gap, 80.0, "#333");
    }
  }
  if (trace.finished()) {
    const auto failing = trace.failing_phase();
    svg.text(20.0, 150.0,
             fmt::format("verdict: {}{}", to_string(trace.verdict()),
                         failing ? fmt::format(" (at {})", *failing) : std::string{}),
             "start", 13);
  }
  return svg.str(title);
}

std::string pull_svg(std::span<const PullCurve> curves, std::string_view title) {
  constexpr double left = 70.0, right = 600.0, top = 50.0, bottom = 330.0;
  double max_x = 0.0;
  double max_f = 0.0;
  for (const auto& c : curves) {
    for (const auto& s : c.samples) {
      max_x = std::max(max_x, s.displacement);
      max_f = std::max(max_f, s.force);
    }
  }
  const Axis x{0.0, max_x > 0.0 ? max_x : 1.0, left, right};
  const Axis y{0.0, nice_max(max_f), bottom, top};

  Svg svg(640.0, 400.0);
  svg.text(320.0, 24.0, title, "middle", 14);
  frame(svg, left, top, right, bottom, "pull displacement (mm)", "force along pull (N)");
  ticks(svg, x, y, bottom, left);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : c.samples) pts.emplace_back(x(s.displacement), y(s.force));
    const auto colour = kPalette[i % std::size(kPalette)];
    const auto label = fmt::format("{:.3g}% max torque, peak {:.3g} N", c.fraction * 100.0,
                                   sizing::peak_force(c.samples));
    svg.raw(polyline(pts, colour, label));
    svg.line(right - 200.0, top + 10.0 + 18.0 * i, right - 180.0, top + 10.0 + 18.0 * i, colour,
             " stroke-width=\"2\"");
    svg.text(right - 175.0, top + 14.0 + 18.0 * i, label, "start", 11);
  }
  return svg.str(title);
}

std::string transmission_svg(const TransmissionSweep& sweep, std::string_view title) {
  constexpr double left = 70.0, right = 570.0, top = 50.0, bottom = 330.0;
  double max_travel = 0.0;
  double max_torque = 0.0;
  double min_torque = 0.0;
  for (const auto& s : sweep.samples) {
    max_travel = std::max(max_travel, s.travel);
    max_torque = std::max(max_torque, s.torque);
    min_torque = std::min(min_torque, s.torque);
  }
  const Axis x{0.0, 90.0, left, right};
  const Axis y_travel{0.0, nice_max(max_travel), bottom, top};
  const Axis y_torque{min_torque, nice_max(max_torque), bottom, top};

  Svg svg(640.0, 400.0);
  svg.text(320.0, 24.0, title, "middle", 14);
  frame(svg, left, top, right, bottom, "motor angle (deg)", "finger travel (mm)");
  ticks(svg, x, y_travel, bottom, left);
  svg.line(right, top, right, bottom, "#333");
  svg.text(right + 5.0, top - 8.0, fmt::format("torque N*mm (F = {:.3g} N)", sweep.force), "middle",
           10);
  for (int i = 0; i <= 4; ++i) {
    const double v = y_torque.lo + (y_torque.hi - y_torque.lo) * i / 4.0;
    svg.text(right + 8.0, y_torque(v) + 4.0, fmt::format("{:.3g}", v), "start", 10);
  }

  std::vector<std::pair<double, double>> travel_pts;
  std::vector<std::pair<double, double>> torque_pts;
  for (const auto& s : sweep.samples) {
    travel_pts.emplace_back(x(rad_to_deg(s.alpha)), y_travel(s.travel));
    torque_pts.emplace_back(x(rad_to_deg(s.alpha)), y_torque(s.torque));
  }
  svg.raw(polyline(travel_pts, kPalette[0], "travel"));
  svg.raw(polyline(torque_pts, kPalette[2], "torque"));
  return svg.str(title);
}

}  // namespace griphand::bench
