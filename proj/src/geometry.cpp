#include "uavcov/geometry.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "uavcov/errors.hpp"

namespace uavcov {

namespace {

// Arc parameters this close to a full turn come from rounding on zero-length
// arcs and are folded back to zero.
constexpr double kArcSnap = 1e-10;
constexpr double kAlignTol = 1e-12;

double mod2pi(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi - kArcSnap) r = 0.0;
  return r;
}

struct Normalized {
  double alpha, beta, d;
  double sa, sb, ca, cb, c_ab;
};

// Segment parameters in units of the turn radius: arcs as angles, the middle
// straight as a length. Returns false when the word is not admissible.
bool word_params(DubinsWord word, const Normalized& n, std::array<double, 3>& out) {
  const double a = n.alpha, b = n.beta, d = n.d;
  switch (word) {
    case DubinsWord::LSL: {
      const double tmp0 = d + n.sa - n.sb;
      const double p_sq = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb);
      if (p_sq < -1e-12) return false;
      const double tmp1 = std::atan2(n.cb - n.ca, tmp0);
      out = {mod2pi(tmp1 - a), std::sqrt(std::max(0.0, p_sq)), mod2pi(b - tmp1)};
      return true;
    }
    case DubinsWord::RSR: {
      const double tmp0 = d - n.sa + n.sb;
      const double p_sq = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa);
      if (p_sq < -1e-12) return false;
      const double tmp1 = std::atan2(n.ca - n.cb, tmp0);
      out = {mod2pi(a - tmp1), std::sqrt(std::max(0.0, p_sq)), mod2pi(tmp1 - b)};
      return true;
    }
    case DubinsWord::LSR: {
      const double p_sq = -2.0 + d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa + n.sb);
      if (p_sq < -1e-12) return false;
      const double p = std::sqrt(std::max(0.0, p_sq));
      const double tmp0 = std::atan2(-n.ca - n.cb, d + n.sa + n.sb) - std::atan2(-2.0, p);
      out = {mod2pi(tmp0 - a), p, mod2pi(tmp0 - mod2pi(b))};
      return true;
    }
    case DubinsWord::RSL: {
      const double p_sq = -2.0 + d * d + 2.0 * n.c_ab - 2.0 * d * (n.sa + n.sb);
      if (p_sq < -1e-12) return false;
      const double p = std::sqrt(std::max(0.0, p_sq));
      const double tmp0 = std::atan2(n.ca + n.cb, d - n.sa - n.sb) - std::atan2(2.0, p);
      out = {mod2pi(a - tmp0), p, mod2pi(b - tmp0)};
      return true;
    }
    case DubinsWord::RLR: {
      const double tmp0 = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb)) / 8.0;
      if (std::abs(tmp0) > 1.0) return false;
      const double phi = std::atan2(n.ca - n.cb, d - n.sa + n.sb);
      const double p = mod2pi(kTwoPi - std::acos(tmp0));
      const double t = mod2pi(a - phi + mod2pi(p / 2.0));
      out = {t, p, mod2pi(a - b - t + mod2pi(p))};
      return true;
    }
    case DubinsWord::LRL: {
      const double tmp0 = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa)) / 8.0;
      if (std::abs(tmp0) > 1.0) return false;
      const double phi = std::atan2(n.ca - n.cb, d + n.sa - n.sb);
      const double p = mod2pi(kTwoPi - std::acos(tmp0));
      const double t = mod2pi(-a - phi + p / 2.0);
      out = {t, p, mod2pi(mod2pi(b) - a - t + mod2pi(p))};
      return true;
    }
  }
  return false;
}

Normalized normalize(const Pose& start, const Pose& goal, double r) {
  const Vec2 delta = goal.position - start.position;
  const double dist = norm(delta);
  const double theta = dist > 0.0 ? mod2pi(std::atan2(delta.y, delta.x)) : 0.0;
  Normalized n{};
  n.d = dist / r;
  n.alpha = mod2pi(start.heading - theta);
  n.beta = mod2pi(goal.heading - theta);
  n.sa = std::sin(n.alpha);
  n.sb = std::sin(n.beta);
  n.ca = std::cos(n.alpha);
  n.cb = std::cos(n.beta);
  n.c_ab = std::cos(n.alpha - n.beta);
  return n;
}

// Straight-line fast path: equal headings and the goal lies ahead on the ray.
std::optional<DubinsPath> aligned_straight(const Pose& start, const Pose& goal, double r) {
  double dh = std::abs(normalize_heading(goal.heading) - normalize_heading(start.heading));
  dh = std::min(dh, kTwoPi - dh);
  if (dh > kAlignTol) return std::nullopt;
  const Vec2 delta = goal.position - start.position;
  const double len = norm(delta);
  const double cx = std::cos(start.heading), cy = std::sin(start.heading);
  const double cross = cx * delta.y - cy * delta.x;
  const double dot = cx * delta.x + cy * delta.y;
  if (std::abs(cross) > kAlignTol * std::max(1.0, len) || dot < 0.0) return std::nullopt;
  return DubinsPath{start, r, DubinsWord::LSL, {0.0, len, 0.0}, len};
}

constexpr std::array<DubinsWord, 6> kWords = {DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR,
                                              DubinsWord::RSL, DubinsWord::RLR, DubinsWord::LRL};

}  // namespace

double normalize_heading(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double Cell::traversal_heading(CellEnd entry) const {
  const Vec2 d = site(opposite(entry)).position - site(entry).position;
  return normalize_heading(std::atan2(d.y, d.x));
}

void validate_cells(const std::vector<Cell>& cells) {
  std::set<int> site_ids;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (c.index != static_cast<int>(i)) {
      throw ContractViolation("cell indices must be unique and contiguous from 0; found " +
                              std::to_string(c.index) + " at position " + std::to_string(i));
    }
    for (const Site* s : {&c.end_a, &c.end_b}) {
      if (!std::isfinite(s->position.x) || !std::isfinite(s->position.y)) {
        throw ContractViolation("cell " + std::to_string(c.index) + " has a non-finite site");
      }
      if (!site_ids.insert(s->id).second) {
        throw ContractViolation("duplicate site id " + std::to_string(s->id));
      }
    }
    if (!(c.length() > 0.0)) {
      throw ContractViolation("cell " + std::to_string(c.index) + " has zero length");
    }
  }
}

std::string_view to_string(FlightMode mode) {
  return mode == FlightMode::MultiRotor ? "multirotor" : "fixedwing";
}

std::string_view to_string(DubinsWord word) {
  switch (word) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::RLR: return "RLR";
    case DubinsWord::LRL: return "LRL";
  }
  return "?";
}

std::optional<DubinsWord> dubins_word_from_string(std::string_view name) {
  for (DubinsWord w : kWords) {
    if (to_string(w) == name) return w;
  }
  return std::nullopt;
}

std::optional<DubinsPath> dubins_word_path(const Pose& start, const Pose& goal,
                                           double turn_radius, DubinsWord word) {
  if (!(turn_radius > 0.0)) throw ContractViolation("turn radius must be positive");
  const Normalized n = normalize(start, goal, turn_radius);
  std::array<double, 3> params{};
  if (!word_params(word, n, params)) return std::nullopt;
  DubinsPath path{start, turn_radius, word, {}, 0.0};
  for (int i = 0; i < 3; ++i) path.segment_lengths[i] = params[i] * turn_radius;
  path.total_length = path.segment_lengths[0] + path.segment_lengths[1] + path.segment_lengths[2];
  return path;
}

DubinsPath dubins_shortest(const Pose& start, const Pose& goal, double turn_radius) {
  if (!(turn_radius > 0.0)) throw ContractViolation("turn radius must be positive");
  if (auto straight = aligned_straight(start, goal, turn_radius)) return *straight;

  const Normalized n = normalize(start, goal, turn_radius);
  std::optional<DubinsPath> best;
  for (DubinsWord w : kWords) {
    std::array<double, 3> params{};
    if (!word_params(w, n, params)) continue;
    const std::array<double, 3> seg = {params[0] * turn_radius, params[1] * turn_radius,
                                       params[2] * turn_radius};
    const double len = seg[0] + seg[1] + seg[2];
    if (!best || len < best->total_length) best = DubinsPath{start, turn_radius, w, seg, len};
  }
  // LSL, RSR and at least one mixed word always exist.
  return *best;
}

Pose dubins_pose_at(const DubinsPath& path, double s) {
  const std::string_view word = to_string(path.word);
  const double r = path.turn_radius;
  Vec2 p = path.start.position;
  double h = path.start.heading;
  double remaining = std::max(0.0, s);
  for (int i = 0; i < 3 && remaining > 0.0; ++i) {
    const double len = std::min(remaining, path.segment_lengths[i]);
    remaining -= len;
    const char kind = word[i];
    if (kind == 'S') {
      p = p + len * Vec2{std::cos(h), std::sin(h)};
    } else if (kind == 'L') {
      const double phi = len / r;
      p = p + Vec2{r * (std::sin(h + phi) - std::sin(h)), r * (std::cos(h) - std::cos(h + phi))};
      h += phi;
    } else {
      const double phi = len / r;
      p = p + Vec2{r * (std::sin(h) - std::sin(h - phi)), r * (std::cos(h - phi) - std::cos(h))};
      h -= phi;
    }
  }
  return {p, normalize_heading(h)};
}

double flight_distance(const Placement& from, const Placement& to, FlightMode mode,
                       const PlannerConfig& cfg) {
  if (mode == FlightMode::MultiRotor) return distance(from.position, to.position);
  if (!from.heading || !to.heading) {
    throw ContractViolation("fixed-wing flight requires headings on both endpoints");
  }
  return dubins_shortest(Pose{from.position, normalize_heading(*from.heading)},
                         Pose{to.position, normalize_heading(*to.heading)}, cfg.turn_radius)
      .total_length;
}

double flight_time(const Placement& from, const Placement& to, FlightMode mode,
                   const PlannerConfig& cfg) {
  const double len = flight_distance(from, to, mode, cfg);
  return mode == FlightMode::MultiRotor ? len : len / cfg.fixed_wing_speed;
}

double ugv_time(const Site& from, const Site& to, const PlannerConfig& cfg) {
  if (!(cfg.ugv_speed_ratio > 0.0)) throw ContractViolation("UGV speed ratio must be positive");
  return distance(from.position, to.position) / cfg.ugv_speed_ratio;
}

CoverageLeg coverage_leg(const Cell& cell, CellEnd entry, FlightMode mode,
                         const PlannerConfig& cfg) {
  const double heading = cell.traversal_heading(entry);
  const Pose in{cell.site(entry).position, heading};
  const Pose out{cell.site(opposite(entry)).position, heading};
  const double len = flight_distance(in, out, mode, cfg);
  const double t = mode == FlightMode::MultiRotor ? len : len / cfg.fixed_wing_speed;
  return {t, len, out};
}

}  // namespace uavcov
