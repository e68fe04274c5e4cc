#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "uavcov/errors.hpp"
#include "uavcov/io.hpp"

namespace uavcov {

namespace {

struct Frame {
  double min_x = 0.0;
  double max_y = 0.0;
  double margin = 1.0;
  double width = 1.0;
  double height = 1.0;

  std::string pt(Vec2 p) const {
    return fmt::format("{:.4f},{:.4f}", p.x - min_x + margin, max_y - p.y + margin);
  }
  std::string xy(Vec2 p) const {
    return fmt::format("{:.4f} {:.4f}", p.x - min_x + margin, max_y - p.y + margin);
  }
};

Frame make_frame(const std::vector<Cell>& cells, const Plan& plan) {
  double lo_x = kInfinity, lo_y = kInfinity, hi_x = -kInfinity, hi_y = -kInfinity;
  auto grow = [&](Vec2 p) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  };
  for (const Cell& c : cells) {
    grow(c.end_a.position);
    grow(c.end_b.position);
  }
  for (const Leg& l : plan.uav_legs) {
    grow(l.start_site.position);
    grow(l.end_site.position);
    if (l.path) {
      // Arcs can bulge past the endpoints by up to one turning diameter.
      const double r = 2.0 * l.path->turn_radius;
      grow(l.start_site.position - Vec2{r, r});
      grow(l.start_site.position + Vec2{r, r});
      grow(l.end_site.position - Vec2{r, r});
      grow(l.end_site.position + Vec2{r, r});
    }
  }
  if (lo_x > hi_x) lo_x = hi_x = lo_y = hi_y = 0.0;
  Frame f;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  f.margin = 0.05 * span;
  f.min_x = lo_x;
  f.max_y = hi_y;
  f.width = hi_x - lo_x + 2.0 * f.margin;
  f.height = hi_y - lo_y + 2.0 * f.margin;
  return f;
}

std::string cell_polygon(const Frame& f, const Cell& c, double half_width) {
  const Vec2 a = c.end_a.position;
  const Vec2 b = c.end_b.position;
  const double len = c.length();
  const Vec2 n{-(b.y - a.y) / len * half_width, (b.x - a.x) / len * half_width};
  return fmt::format("  <polygon points=\"{} {} {} {}\"/>\n", f.pt(a + n), f.pt(b + n),
                     f.pt(b - n), f.pt(a - n));
}

std::string dubins_d(const Frame& f, const DubinsPath& p) {
  std::string d = "M " + f.xy(p.start.position);
  const std::string_view word = to_string(p.word);
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double len = p.segment_lengths[i];
    if (len <= 0.0) continue;
    if (word[i] == 'S') {
      d += " L " + f.xy(dubins_pose_at(p, s + len).position);
    } else {
      // Screen y points down, so a left turn is drawn clockwise. Halving each
      // arc keeps it below a half turn.
      const int sweep = word[i] == 'L' ? 1 : 0;
      for (double part : {0.5 * len, len}) {
        d += fmt::format(" A {:.4f} {:.4f} 0 0 {} {}", p.turn_radius, p.turn_radius, sweep,
                         f.xy(dubins_pose_at(p, s + part).position));
      }
    }
    s += len;
  }
  return d;
}

}  // namespace

std::string render_svg(const std::vector<Cell>& cells, const Plan& plan) {
  const Frame f = make_frame(cells, plan);
  const double span = std::max(f.width, f.height);
  const double stroke = 0.004 * span;

  std::string out;
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {:.4f} {:.4f}\" "
      "width=\"800\" height=\"{:.0f}\">\n",
      f.width, f.height, 800.0 * f.height / f.width);
  out += fmt::format("<!-- uavcov plan v{} -->\n", kFormatVersion);

  out += fmt::format("<g id=\"cells\" fill=\"#d9d9d9\" stroke=\"#7f7f7f\" stroke-width=\"{:.4f}\">\n",
                     0.5 * stroke);
  for (const Cell& c : cells) out += cell_polygon(f, c, 0.01 * span);
  out += "</g>\n";

  std::string mr, fw, stops;
  for (const Leg& l : plan.uav_legs) {
    if (l.kind == LegKind::Fly && l.mode == FlightMode::MultiRotor) {
      mr += fmt::format("  <polyline points=\"{} {}\"/>\n", f.pt(l.start_site.position),
                        f.pt(l.end_site.position));
    } else if (l.kind == LegKind::Fly) {
      const std::string d = l.path ? dubins_d(f, *l.path)
                                   : "M " + f.xy(l.start_site.position) + " L " +
                                         f.xy(l.end_site.position);
      fw += fmt::format("  <path d=\"{}\"/>\n", d);
    } else if (l.kind == LegKind::RechargeInPlace || l.kind == LegKind::RideAndRecharge) {
      stops += fmt::format("  <circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\"/>\n",
                           l.start_site.position.x - f.min_x + f.margin,
                           f.max_y - l.start_site.position.y + f.margin, 3.0 * stroke);
    }
  }
  if (!mr.empty()) {
    out += fmt::format(
        "<g id=\"multirotor\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"{:.4f}\">\n{}</g>\n",
        stroke, mr);
  }
  if (!fw.empty()) {
    out += fmt::format(
        "<g id=\"fixedwing\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"{:.4f}\">\n{}</g>\n",
        stroke, fw);
  }
  if (!plan.ugv_waypoints.empty()) {
    std::string pts;
    for (const UgvWaypoint& w : plan.ugv_waypoints) {
      if (!pts.empty()) pts += ' ';
      pts += f.pt(w.site.position);
    }
    out += fmt::format(
        "<g id=\"ugv\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"{:.4f}\" "
        "stroke-dasharray=\"{:.4f} {:.4f}\">\n  <polyline points=\"{}\"/>\n</g>\n",
        stroke, 4.0 * stroke, 2.0 * stroke, pts);
  }
  if (!stops.empty()) out += fmt::format("<g id=\"recharge\" fill=\"#d62728\">\n{}</g>\n", stops);
  out += "</svg>\n";
  return out;
}

void render_svg(const std::vector<Cell>& cells, const Plan& plan,
                const std::filesystem::path& path) {
  write_text(path, render_svg(cells, plan));
}

}  // namespace uavcov
