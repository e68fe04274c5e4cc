#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavcov/config.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/plan.hpp"
#include "uavcov/solver.hpp"

namespace uavcov {

inline constexpr int kFormatVersion = 1;

struct Instance {
  std::vector<Cell> cells;
  PlannerConfig config;

  bool operator==(const Instance&) const = default;
};

/// Site ids are derived from the cell index (2i for end A, 2i + 1 for end B).
std::string instance_to_json(const Instance& inst);
/// Throws ParseError with a 1-based line/column for malformed JSON, and with
/// a key path for schema errors or invalid cells/config.
Instance instance_from_json(std::string_view text);

std::string plan_to_json(const Plan& plan);
Plan plan_from_json(std::string_view text);

/// File helpers; I/O failures throw Error naming the path.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
Instance load_instance(const std::filesystem::path& path);
Plan load_plan(const std::filesystem::path& path);

/// `n` pairwise disjoint segments inside [0, extent]^2 with lengths in
/// (0, max_len]. Every site is on the road.
/// Throws SamplingExhausted after 100000 rejected draws.
std::vector<Cell> gen_random(std::size_t n, double extent, double max_len, std::uint64_t seed);

enum class SolverKind { Exact, Glns };

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> solver_kind_from_string(std::string_view name);

struct SolverChoice {
  SolverKind kind = SolverKind::Exact;
  SolverParams params;
};

/// Runs the chosen solver. Throws Infeasible when no finite tour exists.
GtspTour solve(const ClusteredGraph& g, const SolverChoice& choice);

/// Solves and decodes in one step.
Plan plan_instance(const Instance& inst, const SolverChoice& choice);

struct ReportRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  int levels_C = 0;
  double d_max = 0.0;
  std::optional<double> optimal_cost;   // nullopt: infeasible
  std::optional<double> baseline_cost;  // nullopt: infeasible
  double wall_time_s = 0.0;
  std::string solver_mode;

  bool operator==(const ReportRow&) const = default;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  /// Header comment with the format version, then one line per row.
  std::string to_csv() const;
};

ExperimentReport sweep_dmax(const Instance& inst, const std::vector<double>& d_max_values,
                            const SolverChoice& choice);
ExperimentReport sweep_levels(const Instance& inst, const std::vector<int>& levels,
                              const SolverChoice& choice);
/// `trials` random instances per cell count, seeded `seed`, `seed + 1`, ...
ExperimentReport sweep_cells(const std::vector<std::size_t>& counts, std::size_t trials,
                             std::uint64_t seed, double extent, double max_len,
                             const PlannerConfig& cfg, const SolverChoice& choice);

/// Static drawing of the cells, UAV legs, UGV route and recharge stops.
/// Identical inputs give byte-identical output.
std::string render_svg(const std::vector<Cell>& cells, const Plan& plan);
void render_svg(const std::vector<Cell>& cells, const Plan& plan,
                const std::filesystem::path& path);

}  // namespace uavcov
