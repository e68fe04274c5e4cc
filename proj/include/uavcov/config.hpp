#pragma once

namespace uavcov {

/// Vehicle and battery parameters shared by every planning stage.
///
/// Units: seconds and meters. Multi-rotor flight is unit speed, so
/// `d_max` is also the multi-rotor endurance in seconds.
struct PlannerConfig {
  double t_takeoff = 5.0;          // climb from the UGV deck to the coverage plane
  double t_land = 45.0;            // descent from the coverage plane onto the UGV
  double recharge_rate_r = 2.0;    // seconds per battery level
  double d_max = 1800.0;           // multi-rotor range on a full battery
  int levels_C = 20;               // number of discrete battery levels
  double f_ratio = 3.0;            // multi-rotor / fixed-wing consumption per meter
  double turn_radius = 3.0;        // fixed-wing minimum turn radius
  double ugv_speed_ratio = 0.2;    // UGV speed relative to multi-rotor speed
  double fixed_wing_speed = 1.0;   // fixed-wing cruise speed relative to multi-rotor

  bool operator==(const PlannerConfig&) const = default;
};

/// Throws ContractViolation when a field is non-finite or not strictly positive.
void validate(const PlannerConfig& cfg);

}  // namespace uavcov
