#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oracles/edge_oracle.hpp"
#include "uavcov/graph.hpp"
#include "uavcov/io.hpp"

namespace testing_support {

inline uavcov::Cell strip(int index, uavcov::Vec2 a, uavcov::Vec2 b, bool road_a = true,
                          bool road_b = true) {
  return {index, {2 * index, a, road_a}, {2 * index + 1, b, road_b}};
}

/// Small random instance with some sites off the road and a config drawn so
/// that recharging is usually needed somewhere.
struct SmallInstance {
  std::vector<uavcov::Cell> cells;
  uavcov::PlannerConfig cfg;
};

inline SmallInstance random_small(std::uint64_t seed, std::size_t n, int levels) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SmallInstance out;
  out.cells = uavcov::gen_random(n, 60.0, 15.0, seed);
  for (auto& c : out.cells) {
    c.end_a.on_road = u(rng) < 0.7;
    c.end_b.on_road = u(rng) < 0.7;
  }
  uavcov::PlannerConfig& cfg = out.cfg;
  cfg.levels_C = levels;
  cfg.d_max = 30.0 + 70.0 * u(rng);
  cfg.f_ratio = 0.5 + 3.0 * u(rng);
  cfg.turn_radius = 1.0 + 4.0 * u(rng);
  cfg.ugv_speed_ratio = 0.1 + 0.9 * u(rng);
  cfg.fixed_wing_speed = 0.5 + 1.5 * u(rng);
  cfg.t_land = 5.0 + 40.0 * u(rng);
  cfg.t_takeoff = 1.0 + 10.0 * u(rng);
  cfg.recharge_rate_r = 0.5 + 4.0 * u(rng);
  return out;
}

inline oracle::EndPoint end_point(const uavcov::Site& s) {
  return {s.position.x, s.position.y, s.on_road};
}

inline oracle::EdgeInput edge_input(const std::vector<uavcov::Cell>& cells,
                                    const uavcov::Vertex& from, const uavcov::Vertex& to) {
  const uavcov::Cell& ci = cells[static_cast<std::size_t>(from.cell_index)];
  const uavcov::Cell& cj = cells[static_cast<std::size_t>(to.cell_index)];
  return {end_point(ci.site(from.entry_end)), end_point(ci.site(uavcov::opposite(from.entry_end))),
          end_point(cj.site(to.entry_end)), end_point(cj.site(uavcov::opposite(to.entry_end))),
          from.level, to.level};
}

}  // namespace testing_support
