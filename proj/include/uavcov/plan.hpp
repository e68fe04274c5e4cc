#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavcov/config.hpp"
#include "uavcov/energy.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/graph.hpp"
#include "uavcov/solver.hpp"

namespace uavcov {

enum class LegKind { Fly, Land, TakeOff, RechargeInPlace, RideAndRecharge };

std::string_view to_string(LegKind kind);
std::optional<LegKind> leg_kind_from_string(std::string_view name);

/// One step of the UAV schedule. Ground legs (land, recharge, take-off) have
/// equal start and end sites; a ride carries the UAV from `start_site` to
/// `end_site` on the UGV.
struct Leg {
  LegKind kind = LegKind::Fly;
  FlightMode mode = FlightMode::MultiRotor;  // Fly only
  Site start_site;
  Site end_site;
  int covers_cell = -1;  // index of the cell covered by this flight, or -1
  double distance = 0.0;
  double start_time = 0.0;
  double duration = 0.0;
  Level battery_before = 0;
  Level battery_after = 0;
  Level recharge_levels = 0;        // recharge kinds only
  std::optional<DubinsPath> path;   // fixed-wing flights

  bool operator==(const Leg&) const = default;
};

struct CellVisit {
  int cell = 0;
  CellEnd entry = CellEnd::A;

  bool operator==(const CellVisit&) const = default;
};

/// A site the UGV must reach. `deadline` is when the UAV starts landing there;
/// `release` is when the UAV has left it again (take-off finished or ride started).
struct UgvWaypoint {
  Site site;
  double deadline = 0.0;
  double release = 0.0;

  bool operator==(const UgvWaypoint&) const = default;
};

struct BatteryEvent {
  double time = 0.0;
  std::string event;
  Level level = 0;

  bool operator==(const BatteryEvent&) const = default;
};

/// Executable UAV/UGV schedule. `battery_trace` starts with the deployment
/// level and holds one entry per leg (the level after it).
struct Plan {
  std::vector<CellVisit> cell_order;
  std::vector<Leg> uav_legs;
  std::vector<UgvWaypoint> ugv_waypoints;
  std::vector<BatteryEvent> battery_trace;
  double total_time = 0.0;

  bool operator==(const Plan&) const = default;
};

/// Expands a finite tour into legs. Throws ContractViolation on a malformed
/// tour or one with an infinite edge.
Plan decode(const ClusteredGraph& g, const GtspTour& tour);

enum class IssueSeverity { Violation, Warning };

struct Issue {
  IssueSeverity severity = IssueSeverity::Violation;
  std::string message;
  std::optional<std::size_t> leg;
  double wait = 0.0;  // rendezvous warnings: how long the UAV would hold

  bool operator==(const Issue&) const = default;
};

/// Checks battery bounds and continuity, coverage, road gating and time
/// accounting (violations), and UGV reachability of each rendezvous
/// (warnings). The UGV starts at its first waypoint at time zero and visits
/// the waypoints in order.
std::vector<Issue> validate(const Plan& plan, const PlannerConfig& cfg);

std::size_t count_violations(const std::vector<Issue>& issues);

/// Multi-rotor plan visiting cells in input order, charging to full only when
/// the next cell would otherwise exhaust the battery.
/// Throws Infeasible when no such plan exists.
Plan baseline_plan(const std::vector<Cell>& cells, const PlannerConfig& cfg);

}  // namespace uavcov
