#include "uavcov/plan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "uavcov/errors.hpp"

namespace uavcov {

namespace {

constexpr std::array<std::string_view, 5> kLegNames = {"fly", "land", "take-off", "recharge",
                                                       "ride"};

constexpr double kTimeTolerance = 1e-6;

class Builder {
 public:
  explicit Builder(const PlannerConfig& cfg) : cfg_(cfg), battery_(cfg.levels_C) {
    plan_.battery_trace.push_back({0.0, "deploy", battery_});
  }

  Level battery() const { return battery_; }

  void visit(int cell, CellEnd entry) { plan_.cell_order.push_back({cell, entry}); }

  void fly(const Site& from, const Site& to, FlightMode mode, const LegCost& cost,
           int covers_cell, std::optional<DubinsPath> path) {
    Leg leg;
    leg.kind = LegKind::Fly;
    leg.mode = mode;
    leg.start_site = from;
    leg.end_site = to;
    leg.covers_cell = covers_cell;
    leg.distance = cost.distance;
    leg.duration = cost.time;
    leg.battery_after = battery_ - cost.levels;
    if (mode == FlightMode::FixedWing) leg.path = std::move(path);
    push(std::move(leg));
  }

  void land(const Site& at) { ground(LegKind::Land, at, cfg_.t_land, 0); }
  void take_off(const Site& at) { ground(LegKind::TakeOff, at, cfg_.t_takeoff, 0); }
  void recharge(const Site& at, Level levels) {
    ground(LegKind::RechargeInPlace, at, recharge_time(levels, cfg_), levels);
  }

  void ride(const Site& from, const Site& to, Level levels) {
    Leg leg;
    leg.kind = LegKind::RideAndRecharge;
    leg.start_site = from;
    leg.end_site = to;
    leg.duration = std::max(ugv_time(from, to, cfg_), recharge_time(levels, cfg_));
    leg.recharge_levels = levels;
    leg.battery_after = battery_ + levels;
    push(std::move(leg));
  }

  /// Land, recharge and take off at one site; the UGV waits there throughout.
  void stop(const Site& at, Level levels) {
    const double begin = now_;
    land(at);
    recharge(at, levels);
    take_off(at);
    waypoint(at, begin, now_);
  }

  void waypoint(const Site& at, double deadline, double release) {
    auto& wps = plan_.ugv_waypoints;
    if (!wps.empty() && wps.back().site.id == at.id) {
      wps.back().release = release;
      return;
    }
    wps.push_back({at, deadline, release});
  }

  double now() const { return now_; }

  Plan finish(double total_time) {
    plan_.total_time = total_time;
    return std::move(plan_);
  }

 private:
  void ground(LegKind kind, const Site& at, double duration, Level levels) {
    Leg leg;
    leg.kind = kind;
    leg.start_site = at;
    leg.end_site = at;
    leg.duration = duration;
    leg.recharge_levels = levels;
    leg.battery_after = battery_ + levels;
    push(std::move(leg));
  }

  void push(Leg leg) {
    leg.start_time = now_;
    leg.battery_before = battery_;
    battery_ = leg.battery_after;
    now_ += leg.duration;
    plan_.battery_trace.push_back({now_, std::string(to_string(leg.kind)), battery_});
    plan_.uav_legs.push_back(std::move(leg));
  }

  const PlannerConfig& cfg_;
  Plan plan_;
  Level battery_;
  double now_ = 0.0;
};

std::optional<DubinsPath> cover_path(const Cell& cell, CellEnd entry, FlightMode mode,
                                     const PlannerConfig& cfg) {
  if (mode != FlightMode::FixedWing) return std::nullopt;
  const Pose in = entry_pose(cell, entry);
  return dubins_shortest(in, coverage_leg(cell, entry, mode, cfg).exit_pose, cfg.turn_radius);
}

std::optional<DubinsPath> transit_path(const Cell& from, CellEnd from_entry, const Cell& to,
                                       CellEnd to_entry, FlightMode mode, bool after_takeoff,
                                       const PlannerConfig& cfg) {
  if (mode != FlightMode::FixedWing) return std::nullopt;
  return dubins_shortest(transit_start_pose(from, from_entry, to, to_entry, after_takeoff),
                         entry_pose(to, to_entry), cfg.turn_radius);
}

void expand_between(Builder& b, const ClusteredGraph& g, const Edge& e) {
  const PlannerConfig& cfg = g.config();
  const Cell& from = g.cells()[static_cast<std::size_t>(e.from.cell_index)];
  const Cell& to = g.cells()[static_cast<std::size_t>(e.to.cell_index)];
  const CellEnd fe = e.from.entry_end;
  const CellEnd te = e.to.entry_end;
  const Site& entry = from.site(fe);
  const Site& exit = from.site(opposite(fe));
  const Site& next = to.site(te);
  const LegGeometry& geo = g.geometry(from.index, fe, to.index, te);
  const EdgeTypeTraits tr = traits(*e.best_type);

  b.fly(entry, exit, tr.cover_mode, geo.cover(tr.cover_mode), from.index,
        cover_path(from, fe, tr.cover_mode, cfg));

  auto transit = [&](bool after_takeoff) {
    b.fly(exit, next, tr.transit_mode, geo.transit(tr.transit_mode, after_takeoff), -1,
          transit_path(from, fe, to, te, tr.transit_mode, after_takeoff, cfg));
  };

  switch (tr.family) {
    case RechargeFamily::None:
      transit(false);
      break;
    case RechargeFamily::Transit: {
      const double landing = b.now();
      b.land(exit);
      const double ride_start = b.now();
      b.waypoint(exit, landing, ride_start);
      b.ride(exit, next, e.recharge.in_transit_e);
      const double takeoff = b.now();
      b.take_off(next);
      b.waypoint(next, takeoff, b.now());
      break;
    }
    case RechargeFamily::AtEntry:
      transit(false);
      b.stop(next, e.recharge.at_entry_e2);
      break;
    case RechargeFamily::AtExit:
      b.stop(exit, e.recharge.at_exit_e1);
      transit(true);
      break;
    case RechargeFamily::ExitAndEntry:
      b.stop(exit, e.recharge.at_exit_e1);
      transit(true);
      b.stop(next, e.recharge.at_entry_e2);
      break;
  }
  if (b.battery() != e.to.level) {
    throw ContractViolation("decoded battery does not match the tour's vertex level");
  }
}

void issue(std::vector<Issue>& out, std::string message, std::optional<std::size_t> leg = {}) {
  out.push_back({IssueSeverity::Violation, std::move(message), leg, 0.0});
}

bool near(double a, double b) { return std::abs(a - b) <= kTimeTolerance; }

}  // namespace

std::string_view to_string(LegKind kind) { return kLegNames[static_cast<std::size_t>(kind)]; }

std::optional<LegKind> leg_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kLegNames.size(); ++i) {
    if (kLegNames[i] == name) return static_cast<LegKind>(i);
  }
  return std::nullopt;
}

Plan decode(const ClusteredGraph& g, const GtspTour& tour) {
  const double total = tour_cost(g, tour);
  if (!std::isfinite(total)) throw ContractViolation("cannot decode a tour with infinite edges");

  const PlannerConfig& cfg = g.config();
  Builder b(cfg);
  const std::size_t m = tour.vertices.size();
  for (std::size_t i = 1; i < m; ++i) {
    const Vertex v = g.vertex(tour.vertices[i]);
    b.visit(v.cell_index, v.entry_end);
    const std::size_t next = tour.vertices[(i + 1) % m];
    if (next == ClusteredGraph::kDepot) {
      const Edge e = g.edge(tour.vertices[i], next);
      const Cell& cell = g.cells()[static_cast<std::size_t>(v.cell_index)];
      const CoverageLeg leg = coverage_leg(cell, v.entry_end, e.final_mode, cfg);
      b.fly(cell.site(v.entry_end), cell.site(opposite(v.entry_end)), e.final_mode,
            {leg.distance, leg.time, consumption_levels(leg.distance, e.final_mode, cfg)},
            cell.index, cover_path(cell, v.entry_end, e.final_mode, cfg));
    } else {
      expand_between(b, g, g.edge(tour.vertices[i], next));
    }
  }
  return b.finish(total);
}

std::vector<Issue> validate(const Plan& plan, const PlannerConfig& cfg) {
  std::vector<Issue> out;
  const Level cap = cfg.levels_C;
  const auto& legs = plan.uav_legs;

  if (plan.battery_trace.size() != legs.size() + 1) {
    issue(out, "battery trace must hold the deployment level plus one entry per leg");
  } else {
    if (plan.battery_trace.front().level != cap) issue(out, "UAV must deploy fully charged");
    for (std::size_t i = 0; i < legs.size(); ++i) {
      if (plan.battery_trace[i + 1].level != legs[i].battery_after) {
        issue(out, "battery trace disagrees with leg", i);
      }
    }
  }

  double clock = 0.0;
  Level battery = cap;
  std::vector<int> covered(plan.cell_order.size(), 0);
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const Leg& leg = legs[i];
    if (leg.battery_before < 0 || leg.battery_before > cap || leg.battery_after < 0 ||
        leg.battery_after > cap) {
      issue(out, "battery outside [0, C]", i);
    }
    if (leg.battery_before != battery) issue(out, "battery level jumps between legs", i);
    battery = leg.battery_after;
    if (!(leg.duration >= 0.0)) issue(out, "negative duration", i);
    if (!near(leg.start_time, clock)) issue(out, "leg does not start when the previous ends", i);
    clock += leg.duration;

    switch (leg.kind) {
      case LegKind::Fly: {
        const Level used = consumption_levels(leg.distance, leg.mode, cfg);
        if (leg.battery_after != leg.battery_before - used) {
          issue(out, "flight drains a different number of levels than its length", i);
        }
        const double speed = leg.mode == FlightMode::MultiRotor ? 1.0 : cfg.fixed_wing_speed;
        if (!near(leg.duration, leg.distance / speed)) issue(out, "flight time mismatch", i);
        if (leg.covers_cell >= 0) {
          if (static_cast<std::size_t>(leg.covers_cell) >= covered.size()) {
            issue(out, "covered cell index out of range", i);
          } else {
            ++covered[static_cast<std::size_t>(leg.covers_cell)];
          }
        }
        break;
      }
      case LegKind::Land:
      case LegKind::TakeOff: {
        const double t = leg.kind == LegKind::Land ? cfg.t_land : cfg.t_takeoff;
        if (leg.battery_after != leg.battery_before) issue(out, "land/take-off changes battery", i);
        if (!near(leg.duration, t)) issue(out, "land/take-off time mismatch", i);
        if (!(leg.start_site == leg.end_site)) issue(out, "land/take-off moves the UAV", i);
        if (!leg.start_site.on_road) issue(out, "land/take-off at a site off the road", i);
        break;
      }
      case LegKind::RechargeInPlace:
      case LegKind::RideAndRecharge: {
        if (leg.recharge_levels < 0 ||
            leg.battery_after != leg.battery_before + leg.recharge_levels) {
          issue(out, "recharge amount does not match battery change", i);
        }
        double t = recharge_time(std::max(leg.recharge_levels, 0), cfg);
        if (leg.kind == LegKind::RideAndRecharge) {
          t = std::max(t, ugv_time(leg.start_site, leg.end_site, cfg));
        } else if (!(leg.start_site == leg.end_site)) {
          issue(out, "in-place recharge moves the UAV", i);
        }
        if (!near(leg.duration, t)) issue(out, "recharge time mismatch", i);
        if (!leg.start_site.on_road || !leg.end_site.on_road) {
          issue(out, "recharge at a site off the road", i);
        }
        break;
      }
    }
  }
  if (!near(clock, plan.total_time)) issue(out, "total time differs from the sum of leg times");

  std::vector<int> listed(plan.cell_order.size(), 0);
  for (const CellVisit& v : plan.cell_order) {
    if (v.cell < 0 || static_cast<std::size_t>(v.cell) >= listed.size()) {
      issue(out, "cell order names an unknown cell");
    } else {
      ++listed[static_cast<std::size_t>(v.cell)];
    }
  }
  for (std::size_t c = 0; c < covered.size(); ++c) {
    if (listed[c] != 1) issue(out, "cell " + std::to_string(c) + " listed " +
                                       std::to_string(listed[c]) + " times in the order");
    if (covered[c] != 1) {
      issue(out, "cell " + std::to_string(c) + " covered " + std::to_string(covered[c]) +
                     " times");
    }
  }

  const auto& wps = plan.ugv_waypoints;
  double depart = 0.0;
  for (std::size_t k = 0; k < wps.size(); ++k) {
    if (!wps[k].site.on_road) issue(out, "UGV waypoint off the road");
    const double arrive = k == 0 ? 0.0 : depart + ugv_time(wps[k - 1].site, wps[k].site, cfg);
    if (arrive > wps[k].deadline + kTimeTolerance) {
      const double wait = arrive - wps[k].deadline;
      out.push_back({IssueSeverity::Warning,
                     "UGV reaches site " + std::to_string(wps[k].site.id) + " after the UAV",
                     std::nullopt, wait});
    }
    depart = std::max(arrive, wps[k].release);
  }
  return out;
}

std::size_t count_violations(const std::vector<Issue>& issues) {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const Issue& i) {
    return i.severity == IssueSeverity::Violation;
  }));
}

Plan baseline_plan(const std::vector<Cell>& cells, const PlannerConfig& cfg) {
  validate(cfg);
  if (cells.empty()) throw ContractViolation("at least one cell is required");
  validate_cells(cells);

  const Level cap = cfg.levels_C;
  const FlightMode mr = FlightMode::MultiRotor;
  Builder b(cfg);
  std::optional<Site> here;

  for (const Cell& cell : cells) {
    CellEnd entry = CellEnd::A;
    if (here && distance(here->position, cell.end_b.position) <
                    distance(here->position, cell.end_a.position)) {
      entry = CellEnd::B;
    }
    const Site& in = cell.site(entry);
    const Site& out = cell.site(opposite(entry));
    const double cover_len = cell.length();
    const Level c_cover = consumption_levels(cover_len, mr, cfg);
    if (c_cover > cap) {
      throw Infeasible("a full battery cannot cover cell " + std::to_string(cell.index));
    }
    const double hop_len = here ? distance(here->position, in.position) : 0.0;
    const Level c_hop = consumption_levels(hop_len, mr, cfg);

    auto hop = [&] {
      if (here) b.fly(*here, in, mr, {hop_len, hop_len, c_hop}, -1, std::nullopt);
    };

    if (b.battery() >= c_hop + c_cover) {
      hop();
    } else if (here && here->on_road && cap >= c_hop + c_cover) {
      b.stop(*here, cap - b.battery());
      hop();
    } else {
      if (!in.on_road) {
        throw Infeasible("cell " + std::to_string(cell.index) +
                         " needs a recharge at an entry site off the road");
      }
      if (b.battery() < c_hop) {
        if (!here || !here->on_road) {
          throw Infeasible("cannot reach cell " + std::to_string(cell.index));
        }
        b.stop(*here, cap - b.battery());
      }
      if (b.battery() < c_hop) throw Infeasible("cannot reach cell " + std::to_string(cell.index));
      hop();
      b.stop(in, cap - b.battery());
    }

    b.visit(cell.index, entry);
    b.fly(in, out, mr, {cover_len, cover_len, c_cover}, cell.index, std::nullopt);
    here = out;
  }
  const double total = b.now();
  return b.finish(total);
}

}  // namespace uavcov
