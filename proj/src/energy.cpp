#include "uavcov/energy.hpp"

#include <cmath>
#include <string>

#include "uavcov/errors.hpp"

namespace uavcov {

namespace {

constexpr std::array<std::string_view, kEdgeTypeCount> kNames = {
    "M-M",   "F-F",   "M-F",   "F-M",   "M-DTU",   "F-DTU",   "M-MDU",   "F-FDU",   "M-FDU",
    "F-MDU", "M-DUM", "F-DUF", "M-DUF", "F-DUM", "M-DUMDU", "F-DUFDU", "M-DUFDU", "F-DUMDU",
};

// Relative slack so that exact multiples of the per-level distance do not
// round up because of representation error.
constexpr double kLevelSnap = 1e-9;

}  // namespace

void validate(const PlannerConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw ContractViolation(std::string("config field ") + name + " must be finite and > 0");
    }
  };
  positive(cfg.t_takeoff, "t_takeoff");
  positive(cfg.t_land, "t_land");
  positive(cfg.recharge_rate_r, "recharge_rate_r");
  positive(cfg.d_max, "d_max");
  positive(cfg.f_ratio, "f_ratio");
  positive(cfg.turn_radius, "turn_radius");
  positive(cfg.ugv_speed_ratio, "ugv_speed_ratio");
  positive(cfg.fixed_wing_speed, "fixed_wing_speed");
  if (cfg.levels_C < 1) throw ContractViolation("config field levels_C must be >= 1");
}

std::string_view to_string(EdgeType t) { return kNames[static_cast<std::size_t>(t)]; }

std::optional<EdgeType> edge_type_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kEdgeTypeCount; ++i) {
    if (kNames[i] == name) return static_cast<EdgeType>(i);
  }
  return std::nullopt;
}

Level consumption_levels(double distance, FlightMode mode, const PlannerConfig& cfg) {
  if (!(distance >= 0.0)) throw ContractViolation("distance must be non-negative");
  const double range = mode == FlightMode::MultiRotor ? cfg.d_max : cfg.d_max * cfg.f_ratio;
  const double x = distance * cfg.levels_C / range;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= kLevelSnap * std::max(1.0, x)) return static_cast<Level>(nearest);
  return static_cast<Level>(std::ceil(x));
}

double recharge_time(Level levels, const PlannerConfig& cfg) {
  if (levels < 0) throw ContractViolation("recharge amount must be non-negative");
  return cfg.recharge_rate_r * levels;
}

std::optional<RechargeSplit> recharge_split(EdgeType type, Level k_i, Level cons_cover,
                                            Level cons_transit, Level k_j,
                                            const PlannerConfig& cfg) {
  const Level cap = cfg.levels_C;
  if (k_i < 0 || k_i > cap || k_j < 0 || k_j > cap) return std::nullopt;
  const Level at_exit = k_i - cons_cover;
  if (at_exit < 0) return std::nullopt;

  RechargeSplit split;
  switch (traits(type).family) {
    case RechargeFamily::None:
      if (at_exit - cons_transit != k_j) return std::nullopt;
      return split;
    case RechargeFamily::Transit:
      // Riding costs no flight energy.
      if (k_j < at_exit) return std::nullopt;
      split.in_transit_e = k_j - at_exit;
      return split;
    case RechargeFamily::AtEntry: {
      const Level arrival = at_exit - cons_transit;
      if (arrival < 0 || arrival > k_j) return std::nullopt;
      split.at_entry_e2 = k_j - arrival;
      return split;
    }
    case RechargeFamily::AtExit: {
      const Level departure = k_j + cons_transit;
      if (departure > cap || departure < at_exit) return std::nullopt;
      split.at_exit_e1 = departure - at_exit;
      return split;
    }
    case RechargeFamily::ExitAndEntry: {
      // Charge as much as is useful at the exit, the rest at the entry.
      const Level departure = std::max(at_exit, std::min(cap, k_j + cons_transit));
      const Level arrival = departure - cons_transit;
      if (arrival < 0 || arrival > k_j) return std::nullopt;
      split.at_exit_e1 = departure - at_exit;
      split.at_entry_e2 = k_j - arrival;
      return split;
    }
  }
  return std::nullopt;
}

}  // namespace uavcov
