#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "uavcov/config.hpp"
#include "uavcov/geometry.hpp"

namespace uavcov {

/// Discrete battery level in [0, C]; C is a full battery.
using Level = int;

/// Travel options between the entry of one cell and the entry of the next.
///
/// The first letter is the mode used to cover the cell. The remainder names
/// the transit: a second flight mode, `DU` for land/recharge/take-off and `T`
/// for riding the UGV.
enum class EdgeType : std::uint8_t {
  M_M,
  F_F,
  M_F,
  F_M,
  M_DTU,
  F_DTU,
  M_MDU,
  F_FDU,
  M_FDU,
  F_MDU,
  M_DUM,
  F_DUF,
  M_DUF,
  F_DUM,
  M_DUMDU,
  F_DUFDU,
  M_DUFDU,
  F_DUMDU,
};

inline constexpr std::size_t kEdgeTypeCount = 18;

/// Where (if anywhere) the UAV lands to recharge along an edge.
enum class RechargeFamily {
  None,        // pure flight
  Transit,     // land at exit, ride the UGV while charging, take off at next entry
  AtEntry,     // fly, then land/recharge/take off at the next entry
  AtExit,      // land/recharge/take off at the exit, then fly
  ExitAndEntry,
};

struct EdgeTypeTraits {
  FlightMode cover_mode;
  RechargeFamily family;
  FlightMode transit_mode;  // meaningless for RechargeFamily::Transit
};

constexpr EdgeTypeTraits traits(EdgeType t) {
  using enum FlightMode;
  using enum RechargeFamily;
  constexpr std::array<EdgeTypeTraits, kEdgeTypeCount> table = {{
      {MultiRotor, None, MultiRotor},         {FixedWing, None, FixedWing},
      {MultiRotor, None, FixedWing},          {FixedWing, None, MultiRotor},
      {MultiRotor, Transit, MultiRotor},      {FixedWing, Transit, MultiRotor},
      {MultiRotor, AtEntry, MultiRotor},      {FixedWing, AtEntry, FixedWing},
      {MultiRotor, AtEntry, FixedWing},       {FixedWing, AtEntry, MultiRotor},
      {MultiRotor, AtExit, MultiRotor},       {FixedWing, AtExit, FixedWing},
      {MultiRotor, AtExit, FixedWing},        {FixedWing, AtExit, MultiRotor},
      {MultiRotor, ExitAndEntry, MultiRotor}, {FixedWing, ExitAndEntry, FixedWing},
      {MultiRotor, ExitAndEntry, FixedWing},  {FixedWing, ExitAndEntry, MultiRotor},
  }};
  return table[static_cast<std::size_t>(t)];
}

/// True when any flight leg of the edge uses fixed-wing mode.
constexpr bool uses_fixed_wing(EdgeType t) {
  const EdgeTypeTraits tr = traits(t);
  return tr.cover_mode == FlightMode::FixedWing ||
         (tr.family != RechargeFamily::Transit && tr.transit_mode == FlightMode::FixedWing);
}

constexpr std::array<EdgeType, kEdgeTypeCount> all_edge_types() {
  std::array<EdgeType, kEdgeTypeCount> out{};
  for (std::size_t i = 0; i < kEdgeTypeCount; ++i) out[i] = static_cast<EdgeType>(i);
  return out;
}

std::string_view to_string(EdgeType t);
std::optional<EdgeType> edge_type_from_string(std::string_view name);

/// Battery levels gained at the exit site, at the next entry site and while
/// riding the UGV.
struct RechargeSplit {
  Level at_exit_e1 = 0;
  Level at_entry_e2 = 0;
  Level in_transit_e = 0;

  Level total() const { return at_exit_e1 + at_entry_e2 + in_transit_e; }
  bool operator==(const RechargeSplit&) const = default;
};

/// Levels drained by flying `distance` meters (rounded up).
Level consumption_levels(double distance, FlightMode mode, const PlannerConfig& cfg);

/// Seconds needed to add `levels` battery levels.
double recharge_time(Level levels, const PlannerConfig& cfg);

/// Minimal recharge schedule that takes the battery from `k_i` at the cell
/// entry to exactly `k_j` at the next entry, where `cons_cover` and
/// `cons_transit` are the levels drained by the coverage and transit legs.
/// Returns nullopt when no schedule keeps the battery inside [0, C].
std::optional<RechargeSplit> recharge_split(EdgeType type, Level k_i, Level cons_cover,
                                            Level cons_transit, Level k_j,
                                            const PlannerConfig& cfg);

}  // namespace uavcov
