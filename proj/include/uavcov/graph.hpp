#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "uavcov/config.hpp"
#include "uavcov/energy.hpp"
#include "uavcov/geometry.hpp"

namespace uavcov {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A GTSP vertex: entering `cell_index` through `entry_end` with `level`
/// battery levels. The single depot vertex closes the tour.
struct Vertex {
  bool is_depot = false;
  int cell_index = -1;
  CellEnd entry_end = CellEnd::A;
  Level level = 0;

  bool operator==(const Vertex&) const = default;
};

/// Role of an edge in the tour.
enum class EdgeLink {
  Between,        // entry of one cell to entry of the next
  Deploy,         // depot to the first cell: UAV starts there fully charged
  FinalCoverage,  // last cell covered, plan ends at its exit
};

struct Edge {
  Vertex from;
  Vertex to;
  double cost = kInfinity;
  EdgeLink link = EdgeLink::Between;
  std::optional<EdgeType> best_type;            // set for finite Between edges
  RechargeSplit recharge;
  FlightMode final_mode = FlightMode::MultiRotor;  // FinalCoverage only
};

/// Time and energy of one flight leg.
struct LegCost {
  double distance = 0.0;
  double time = 0.0;
  Level levels = 0;
};

/// Geometry of an edge between two (cell, entry end) pairs, independent of
/// battery levels. Fixed-wing transit legs end at the next cell's entry pose;
/// they start at the exit pose when flying on after coverage and, after a
/// take-off at the exit, already pointing along the next cell.
struct LegGeometry {
  LegCost cover_mr;
  LegCost cover_fw;
  LegCost transit_mr;
  LegCost transit_fw_continuing;
  LegCost transit_fw_after_takeoff;
  double ugv_time = 0.0;
  bool exit_on_road = true;
  bool entry_on_road = true;

  const LegCost& cover(FlightMode m) const {
    return m == FlightMode::MultiRotor ? cover_mr : cover_fw;
  }
  const LegCost& transit(FlightMode m, bool after_takeoff) const {
    if (m == FlightMode::MultiRotor) return transit_mr;
    return after_takeoff ? transit_fw_after_takeoff : transit_fw_continuing;
  }
};

/// Pose at the start of a fixed-wing transit from the exit of `from`.
Pose transit_start_pose(const Cell& from, CellEnd from_entry, const Cell& to, CellEnd to_entry,
                        bool after_takeoff);

/// Pose required when entering `cell` through `entry`.
Pose entry_pose(const Cell& cell, CellEnd entry);

LegGeometry leg_geometry(const Cell& from, CellEnd from_entry, const Cell& to, CellEnd to_entry,
                         const PlannerConfig& cfg);

struct TypeCost {
  double cost = kInfinity;
  RechargeSplit recharge;
};

/// Cost of one travel option given precomputed geometry.
TypeCost price_edge_type(EdgeType type, const LegGeometry& geo, Level k_i, Level k_j,
                         const PlannerConfig& cfg);

/// Cost of one travel option between two non-depot vertices of different cells.
TypeCost type_cost(EdgeType type, const Vertex& from, const Vertex& to,
                   const std::vector<Cell>& cells, const PlannerConfig& cfg);

/// Cheapest of the eighteen travel options. Ties go to the earlier type.
Edge edge_cost(const Vertex& from, const Vertex& to, const std::vector<Cell>& cells,
               const PlannerConfig& cfg);

/// Cost of covering the last cell from `v` and ending the plan there.
Edge final_coverage_edge(const Vertex& v, const std::vector<Cell>& cells,
                         const PlannerConfig& cfg);

/// Dense clustered digraph: cluster 0 holds the depot vertex, cluster c >= 1
/// holds the 2C vertices of cell c - 1, laid out as
/// [end A levels 1..C, end B levels 1..C].
class ClusteredGraph {
 public:
  static constexpr std::size_t kDepot = 0;

  /// Validates the inputs and prices every edge.
  ClusteredGraph(std::vector<Cell> cells, PlannerConfig cfg);

  const std::vector<Cell>& cells() const { return cells_; }
  const PlannerConfig& config() const { return cfg_; }

  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_clusters() const { return cells_.size() + 1; }
  std::size_t num_vertices() const { return n_vertices_; }
  std::size_t cluster_size(std::size_t cluster) const { return cluster == 0 ? 1 : 2 * levels_; }
  std::size_t cluster_begin(std::size_t cluster) const {
    return cluster == 0 ? 0 : 1 + (cluster - 1) * 2 * levels_;
  }
  std::size_t cluster_of(std::size_t vertex) const {
    return vertex == 0 ? 0 : 1 + (vertex - 1) / (2 * levels_);
  }

  std::size_t vertex_id(int cell, CellEnd end, Level level) const;
  Vertex vertex(std::size_t id) const;

  double cost(std::size_t from, std::size_t to) const { return costs_[from * n_vertices_ + to]; }
  /// Row-major N x N cost matrix with +inf for missing or infeasible edges.
  std::span<const double> costs() const { return costs_; }

  /// Full edge record; recharge amounts are recomputed from the winning type.
  Edge edge(std::size_t from, std::size_t to) const;

  /// Whether the winning option of a finite edge flies any leg in fixed-wing mode.
  bool uses_fixed_wing(std::size_t from, std::size_t to) const;

  const LegGeometry& geometry(int from_cell, CellEnd from_entry, int to_cell,
                              CellEnd to_entry) const;

 private:
  std::size_t geo_index(int from_cell, CellEnd from_entry, int to_cell, CellEnd to_entry) const;
  void fill_row(std::size_t from);

  std::vector<Cell> cells_;
  PlannerConfig cfg_;
  std::size_t levels_;
  std::size_t n_vertices_;
  std::vector<double> costs_;
  std::vector<std::uint8_t> codes_;
  std::vector<LegGeometry> geometry_;
};

/// Builds the GTSP instance for the given cells.
ClusteredGraph build_instance(const std::vector<Cell>& cells, const PlannerConfig& cfg);

}  // namespace uavcov
