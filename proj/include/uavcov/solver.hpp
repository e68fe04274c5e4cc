#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uavcov/graph.hpp"

namespace uavcov {

/// One vertex per cluster in visiting order. `vertices[0]` is always the depot;
/// the tour closes from the last vertex back to it.
struct GtspTour {
  std::vector<std::size_t> vertices;
  double cost = kInfinity;

  bool operator==(const GtspTour&) const = default;
};

enum class SolverMode { Fast, Default, Slow };

std::string_view to_string(SolverMode mode);
std::optional<SolverMode> solver_mode_from_string(std::string_view name);

/// Knobs of the large-neighbourhood search. Iteration counts derive from
/// `mode` unless `iterations` is set; the run stops early when `time_budget`
/// (seconds, shared by all restarts) runs out.
struct SolverParams {
  SolverMode mode = SolverMode::Default;
  double time_budget = 600.0;
  int restarts = 3;
  std::uint64_t rng_seed = 1;
  std::optional<std::size_t> iterations;
  double cooling_rate = 0.9987;
  double max_removal_fraction = 0.3;
};

/// Default cap on the number of cells handled by solve_exact().
inline constexpr std::size_t kExactMaxCells = 8;

/// Globally optimal tour by enumerating cluster orders, with the per-order
/// vertex choice solved by a layered dynamic program.
/// Throws InstanceTooLarge above `max_cells` and Infeasible if no finite tour exists.
GtspTour solve_exact(const ClusteredGraph& g, std::size_t max_cells = kExactMaxCells);

/// Adaptive large-neighbourhood search. Deterministic for a given seed as long
/// as the time budget is not the binding stop criterion.
/// Throws NoFeasibleTour if no restart finds a finite tour.
GtspTour solve_glns(const ClusteredGraph& g, const SolverParams& params);

/// Best vertex choice for a fixed order of cell clusters (cluster ids 1..n).
/// Among equal-cost choices the one with fewest fixed-wing legs wins.
/// The returned cost is +inf when every choice hits an infeasible edge.
GtspTour optimize_vertices(const ClusteredGraph& g, std::span<const std::size_t> cluster_order);

/// Sum of the cycle's edge costs (+inf if any edge is infeasible).
/// Throws ContractViolation if the tour is not one vertex per cluster
/// starting at the depot.
double tour_cost(const ClusteredGraph& g, const GtspTour& tour);

/// Cluster ids of the tour's cells in visiting order (depot excluded).
std::vector<std::size_t> cluster_order(const ClusteredGraph& g, const GtspTour& tour);

/// Throws ContractViolation unless the tour visits each cluster exactly once
/// and starts at the depot.
void check_tour_structure(const ClusteredGraph& g, const GtspTour& tour);

}  // namespace uavcov
