#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "uavcov/config.hpp"

namespace uavcov {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  bool operator==(const Vec2&) const = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Wraps an angle into [0, 2*pi).
double normalize_heading(double radians);

/// One end of a boustrophedon cell. `on_road` marks sites the UGV can reach.
struct Site {
  int id = 0;
  Vec2 position;
  bool on_road = true;

  bool operator==(const Site&) const = default;
};

enum class CellEnd { A, B };

inline CellEnd opposite(CellEnd e) { return e == CellEnd::A ? CellEnd::B : CellEnd::A; }

/// A strip covered by one straight pass between its two end sites.
struct Cell {
  int index = 0;
  Site end_a;
  Site end_b;

  const Site& site(CellEnd e) const { return e == CellEnd::A ? end_a : end_b; }
  double length() const { return distance(end_a.position, end_b.position); }
  /// Heading of a pass that enters at `entry` and leaves through the other end.
  double traversal_heading(CellEnd entry) const;

  bool operator==(const Cell&) const = default;
};

/// Throws ContractViolation on degenerate cells, duplicate or non-contiguous
/// indices, duplicate site ids or non-finite coordinates.
void validate_cells(const std::vector<Cell>& cells);

struct Pose {
  Vec2 position;
  double heading = 0.0;  // radians, [0, 2*pi)

  bool operator==(const Pose&) const = default;
};

enum class FlightMode { MultiRotor, FixedWing };

std::string_view to_string(FlightMode mode);

enum class DubinsWord { LSL, RSR, LSR, RSL, RLR, LRL };

std::string_view to_string(DubinsWord word);
std::optional<DubinsWord> dubins_word_from_string(std::string_view name);

/// Shortest forward path with bounded curvature between two poses.
/// `segment_lengths` are in meters (arc lengths, not angles).
struct DubinsPath {
  Pose start;
  double turn_radius = 1.0;
  DubinsWord word = DubinsWord::LSL;
  std::array<double, 3> segment_lengths{};
  double total_length = 0.0;

  bool operator==(const DubinsPath&) const = default;
};

/// Minimum-length path over all six words. Ties resolve in word order
/// LSL, RSR, LSR, RSL, RLR, LRL.
DubinsPath dubins_shortest(const Pose& start, const Pose& goal, double turn_radius);

/// Path for one fixed word, or nullopt when the word does not connect the poses.
std::optional<DubinsPath> dubins_word_path(const Pose& start, const Pose& goal,
                                           double turn_radius, DubinsWord word);

/// Pose reached after travelling `s` meters along the path.
Pose dubins_pose_at(const DubinsPath& path, double s);

/// A leg endpoint: a bare site position, optionally with a heading.
struct Placement {
  Vec2 position;
  std::optional<double> heading;

  Placement(const Site& s) : position(s.position) {}  // NOLINT(google-explicit-constructor)
  Placement(const Pose& p) : position(p.position), heading(p.heading) {}  // NOLINT
  Placement(Vec2 p, std::optional<double> h = std::nullopt) : position(p), heading(h) {}
};

/// Flight length in meters: Euclidean for multi-rotor, Dubins for fixed-wing.
double flight_distance(const Placement& from, const Placement& to, FlightMode mode,
                       const PlannerConfig& cfg);

/// Flight time in seconds. Fixed-wing requires headings on both ends.
double flight_time(const Placement& from, const Placement& to, FlightMode mode,
                   const PlannerConfig& cfg);

/// Ground travel time (Euclidean distance at the UGV speed).
double ugv_time(const Site& from, const Site& to, const PlannerConfig& cfg);

struct CoverageLeg {
  double time = 0.0;
  double distance = 0.0;
  Pose exit_pose;
};

/// Straight pass over a cell from `entry` to the opposite end.
CoverageLeg coverage_leg(const Cell& cell, CellEnd entry, FlightMode mode,
                         const PlannerConfig& cfg);

}  // namespace uavcov
