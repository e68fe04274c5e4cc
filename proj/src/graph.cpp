#include "uavcov/graph.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "uavcov/errors.hpp"

namespace uavcov {

namespace {

constexpr std::uint8_t kCodeDeploy = 100;
constexpr std::uint8_t kCodeFinalMr = 101;
constexpr std::uint8_t kCodeFinalFw = 102;
constexpr std::uint8_t kCodeNone = 255;

LegCost make_leg(double dist, FlightMode mode, const PlannerConfig& cfg) {
  const double t = mode == FlightMode::MultiRotor ? dist : dist / cfg.fixed_wing_speed;
  return {dist, t, consumption_levels(dist, mode, cfg)};
}

struct Best {
  double cost = kInfinity;
  std::uint8_t code = kCodeNone;
};

Best best_type(const LegGeometry& geo, Level k_i, Level k_j, const PlannerConfig& cfg) {
  Best best;
  for (EdgeType t : all_edge_types()) {
    const double c = price_edge_type(t, geo, k_i, k_j, cfg).cost;
    if (c < best.cost) best = {c, static_cast<std::uint8_t>(t)};
  }
  return best;
}

Best best_final(const Cell& cell, CellEnd entry, Level level, const PlannerConfig& cfg) {
  Best best;
  for (FlightMode m : {FlightMode::MultiRotor, FlightMode::FixedWing}) {
    const CoverageLeg leg = coverage_leg(cell, entry, m, cfg);
    if (consumption_levels(leg.distance, m, cfg) > level) continue;
    if (leg.time < best.cost) {
      best = {leg.time, m == FlightMode::MultiRotor ? kCodeFinalMr : kCodeFinalFw};
    }
  }
  return best;
}

void require_cell_vertex(const Vertex& v, const std::vector<Cell>& cells, const char* what) {
  if (v.is_depot || v.cell_index < 0 || v.cell_index >= static_cast<int>(cells.size())) {
    throw ContractViolation(std::string(what) + " must be a cell vertex of this instance");
  }
}

}  // namespace

Pose entry_pose(const Cell& cell, CellEnd entry) {
  return {cell.site(entry).position, cell.traversal_heading(entry)};
}

Pose transit_start_pose(const Cell& from, CellEnd from_entry, const Cell& to, CellEnd to_entry,
                        bool after_takeoff) {
  const Vec2 exit = from.site(opposite(from_entry)).position;
  if (after_takeoff) return {exit, to.traversal_heading(to_entry)};
  return {exit, from.traversal_heading(from_entry)};
}

LegGeometry leg_geometry(const Cell& from, CellEnd from_entry, const Cell& to, CellEnd to_entry,
                         const PlannerConfig& cfg) {
  const Site& exit = from.site(opposite(from_entry));
  const Site& next = to.site(to_entry);
  const Pose goal = entry_pose(to, to_entry);
  LegGeometry g;
  g.cover_mr = make_leg(coverage_leg(from, from_entry, FlightMode::MultiRotor, cfg).distance,
                        FlightMode::MultiRotor, cfg);
  g.cover_fw = make_leg(coverage_leg(from, from_entry, FlightMode::FixedWing, cfg).distance,
                        FlightMode::FixedWing, cfg);
  g.transit_mr = make_leg(distance(exit.position, next.position), FlightMode::MultiRotor, cfg);
  g.transit_fw_continuing = make_leg(
      dubins_shortest(transit_start_pose(from, from_entry, to, to_entry, false), goal,
                      cfg.turn_radius)
          .total_length,
      FlightMode::FixedWing, cfg);
  g.transit_fw_after_takeoff = make_leg(
      dubins_shortest(transit_start_pose(from, from_entry, to, to_entry, true), goal,
                      cfg.turn_radius)
          .total_length,
      FlightMode::FixedWing, cfg);
  g.ugv_time = ugv_time(exit, next, cfg);
  g.exit_on_road = exit.on_road;
  g.entry_on_road = next.on_road;
  return g;
}

TypeCost price_edge_type(EdgeType type, const LegGeometry& geo, Level k_i, Level k_j,
                         const PlannerConfig& cfg) {
  const EdgeTypeTraits tr = traits(type);
  const bool lands_at_exit = tr.family == RechargeFamily::Transit ||
                             tr.family == RechargeFamily::AtExit ||
                             tr.family == RechargeFamily::ExitAndEntry;
  const bool lands_at_entry = tr.family == RechargeFamily::Transit ||
                              tr.family == RechargeFamily::AtEntry ||
                              tr.family == RechargeFamily::ExitAndEntry;
  if ((lands_at_exit && !geo.exit_on_road) || (lands_at_entry && !geo.entry_on_road)) return {};

  const bool after_takeoff =
      tr.family == RechargeFamily::AtExit || tr.family == RechargeFamily::ExitAndEntry;
  const LegCost& cover = geo.cover(tr.cover_mode);
  const LegCost no_flight{};
  const LegCost& transit = tr.family == RechargeFamily::Transit
                               ? no_flight
                               : geo.transit(tr.transit_mode, after_takeoff);

  const auto split = recharge_split(type, k_i, cover.levels, transit.levels, k_j, cfg);
  if (!split) return {};

  const double t1 = cover.time;
  const double t2 = transit.time;
  const double tl = cfg.t_land;
  const double tto = cfg.t_takeoff;
  double cost = kInfinity;
  switch (tr.family) {
    case RechargeFamily::None:
      cost = t1 + t2;
      break;
    case RechargeFamily::Transit:
      cost = t1 + tl + std::max(geo.ugv_time, recharge_time(split->in_transit_e, cfg)) + tto;
      break;
    case RechargeFamily::AtEntry:
      cost = t1 + t2 + tl + recharge_time(split->at_entry_e2, cfg) + tto;
      break;
    case RechargeFamily::AtExit:
      cost = t1 + tl + recharge_time(split->at_exit_e1, cfg) + tto + t2;
      break;
    case RechargeFamily::ExitAndEntry:
      cost = t1 + tl + recharge_time(split->at_exit_e1, cfg) + tto + t2 + tl +
             recharge_time(split->at_entry_e2, cfg) + tto;
      break;
  }
  return {cost, *split};
}

TypeCost type_cost(EdgeType type, const Vertex& from, const Vertex& to,
                   const std::vector<Cell>& cells, const PlannerConfig& cfg) {
  require_cell_vertex(from, cells, "edge source");
  require_cell_vertex(to, cells, "edge target");
  if (from.cell_index == to.cell_index) {
    throw ContractViolation("edge endpoints must lie in different clusters");
  }
  const LegGeometry geo = leg_geometry(cells[from.cell_index], from.entry_end,
                                       cells[to.cell_index], to.entry_end, cfg);
  return price_edge_type(type, geo, from.level, to.level, cfg);
}

Edge final_coverage_edge(const Vertex& v, const std::vector<Cell>& cells,
                         const PlannerConfig& cfg) {
  require_cell_vertex(v, cells, "final vertex");
  Edge e{.from = v, .to = Vertex{true}, .cost = kInfinity, .link = EdgeLink::FinalCoverage};
  const Best b = best_final(cells[v.cell_index], v.entry_end, v.level, cfg);
  e.cost = b.cost;
  e.final_mode = b.code == kCodeFinalFw ? FlightMode::FixedWing : FlightMode::MultiRotor;
  return e;
}

Edge edge_cost(const Vertex& from, const Vertex& to, const std::vector<Cell>& cells,
               const PlannerConfig& cfg) {
  if (from.is_depot && to.is_depot) {
    throw ContractViolation("edge endpoints must lie in different clusters");
  }
  if (from.is_depot) {
    require_cell_vertex(to, cells, "edge target");
    Edge e{.from = from, .to = to, .cost = kInfinity, .link = EdgeLink::Deploy};
    if (to.level == cfg.levels_C) e.cost = 0.0;
    return e;
  }
  if (to.is_depot) return final_coverage_edge(from, cells, cfg);

  require_cell_vertex(from, cells, "edge source");
  require_cell_vertex(to, cells, "edge target");
  if (from.cell_index == to.cell_index) {
    throw ContractViolation("edge endpoints must lie in different clusters");
  }
  const LegGeometry geo = leg_geometry(cells[from.cell_index], from.entry_end,
                                       cells[to.cell_index], to.entry_end, cfg);
  Edge e{.from = from, .to = to};
  for (EdgeType t : all_edge_types()) {
    const TypeCost tc = price_edge_type(t, geo, from.level, to.level, cfg);
    if (tc.cost < e.cost) {
      e.cost = tc.cost;
      e.best_type = t;
      e.recharge = tc.recharge;
    }
  }
  return e;
}

ClusteredGraph::ClusteredGraph(std::vector<Cell> cells, PlannerConfig cfg)
    : cells_(std::move(cells)), cfg_(cfg) {
  validate(cfg_);
  if (cells_.empty()) throw ContractViolation("at least one cell is required");
  validate_cells(cells_);

  levels_ = static_cast<std::size_t>(cfg_.levels_C);
  n_vertices_ = 1 + 2 * cells_.size() * levels_;

  const std::size_t ends = 2 * cells_.size();
  geometry_.resize(ends * ends);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (std::size_t j = 0; j < cells_.size(); ++j) {
      if (i == j) continue;
      for (CellEnd ei : {CellEnd::A, CellEnd::B}) {
        for (CellEnd ej : {CellEnd::A, CellEnd::B}) {
          geometry_[geo_index(static_cast<int>(i), ei, static_cast<int>(j), ej)] =
              leg_geometry(cells_[i], ei, cells_[j], ej, cfg_);
        }
      }
    }
  }

  costs_.assign(n_vertices_ * n_vertices_, kInfinity);
  codes_.assign(n_vertices_ * n_vertices_, kCodeNone);

  // Rows are independent; split them across hardware threads.
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || n_vertices_ < 256) {
    for (std::size_t u = 0; u < n_vertices_; ++u) fill_row(u);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([this, w, workers] {
        for (std::size_t u = w; u < n_vertices_; u += workers) fill_row(u);
      });
    }
  }
}

std::size_t ClusteredGraph::geo_index(int from_cell, CellEnd from_entry, int to_cell,
                                      CellEnd to_entry) const {
  const std::size_t ends = 2 * cells_.size();
  const std::size_t a = 2 * static_cast<std::size_t>(from_cell) + (from_entry == CellEnd::B);
  const std::size_t b = 2 * static_cast<std::size_t>(to_cell) + (to_entry == CellEnd::B);
  return a * ends + b;
}

const LegGeometry& ClusteredGraph::geometry(int from_cell, CellEnd from_entry, int to_cell,
                                            CellEnd to_entry) const {
  if (from_cell == to_cell) throw ContractViolation("no geometry within a single cell");
  return geometry_.at(geo_index(from_cell, from_entry, to_cell, to_entry));
}

std::size_t ClusteredGraph::vertex_id(int cell, CellEnd end, Level level) const {
  if (cell < 0 || cell >= static_cast<int>(cells_.size()) || level < 1 ||
      level > static_cast<Level>(levels_)) {
    throw ContractViolation("vertex out of range");
  }
  return cluster_begin(static_cast<std::size_t>(cell) + 1) +
         (end == CellEnd::B ? levels_ : 0) + static_cast<std::size_t>(level - 1);
}

Vertex ClusteredGraph::vertex(std::size_t id) const {
  if (id >= n_vertices_) throw ContractViolation("vertex id out of range");
  if (id == kDepot) return Vertex{true};
  const std::size_t local = (id - 1) % (2 * levels_);
  Vertex v;
  v.cell_index = static_cast<int>((id - 1) / (2 * levels_));
  v.entry_end = local < levels_ ? CellEnd::A : CellEnd::B;
  v.level = static_cast<Level>(local % levels_) + 1;
  return v;
}

void ClusteredGraph::fill_row(std::size_t from) {
  double* row_cost = costs_.data() + from * n_vertices_;
  std::uint8_t* row_code = codes_.data() + from * n_vertices_;
  if (from == kDepot) {
    for (std::size_t to = 1; to < n_vertices_; ++to) {
      if (vertex(to).level == cfg_.levels_C) {
        row_cost[to] = 0.0;
        row_code[to] = kCodeDeploy;
      }
    }
    return;
  }
  const Vertex u = vertex(from);
  const Best fin = best_final(cells_[u.cell_index], u.entry_end, u.level, cfg_);
  row_cost[kDepot] = fin.cost;
  row_code[kDepot] = fin.code;

  for (std::size_t c = 1; c < num_clusters(); ++c) {
    const int cell = static_cast<int>(c) - 1;
    if (cell == u.cell_index) continue;
    for (CellEnd end : {CellEnd::A, CellEnd::B}) {
      const LegGeometry& geo = geometry(u.cell_index, u.entry_end, cell, end);
      for (Level k = 1; k <= static_cast<Level>(levels_); ++k) {
        const std::size_t to = vertex_id(cell, end, k);
        const Best b = best_type(geo, u.level, k, cfg_);
        row_cost[to] = b.cost;
        row_code[to] = b.code;
      }
    }
  }
}

Edge ClusteredGraph::edge(std::size_t from, std::size_t to) const {
  const Vertex u = vertex(from);
  const Vertex v = vertex(to);
  if (cluster_of(from) == cluster_of(to)) return Edge{.from = u, .to = v};
  const std::size_t idx = from * n_vertices_ + to;
  const std::uint8_t code = codes_[idx];
  if (u.is_depot) return Edge{.from = u, .to = v, .cost = costs_[idx], .link = EdgeLink::Deploy};
  if (v.is_depot) {
    Edge e{.from = u, .to = v, .cost = costs_[idx], .link = EdgeLink::FinalCoverage};
    e.final_mode = code == kCodeFinalFw ? FlightMode::FixedWing : FlightMode::MultiRotor;
    return e;
  }
  Edge e{.from = u, .to = v, .cost = costs_[idx], .link = EdgeLink::Between};
  if (code < kEdgeTypeCount) {
    e.best_type = static_cast<EdgeType>(code);
    const LegGeometry& geo = geometry(u.cell_index, u.entry_end, v.cell_index, v.entry_end);
    e.recharge = price_edge_type(*e.best_type, geo, u.level, v.level, cfg_).recharge;
  }
  return e;
}

bool ClusteredGraph::uses_fixed_wing(std::size_t from, std::size_t to) const {
  const std::uint8_t code = codes_.at(from * n_vertices_ + to);
  if (code < kEdgeTypeCount) return uavcov::uses_fixed_wing(static_cast<EdgeType>(code));
  return code == kCodeFinalFw;
}

ClusteredGraph build_instance(const std::vector<Cell>& cells, const PlannerConfig& cfg) {
  return ClusteredGraph(cells, cfg);
}

}  // namespace uavcov
