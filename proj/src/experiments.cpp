#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "rng.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/io.hpp"

namespace uavcov {

namespace {

constexpr std::size_t kMaxDraws = 100'000;

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool segments_touch(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(q1, p1, p2)) || (o2 == 0 && on_segment(q2, p1, p2)) ||
         (o3 == 0 && on_segment(p1, q1, q2)) || (o4 == 0 && on_segment(p2, q1, q2));
}

std::string fmt_cost(const std::optional<double>& c) {
  return c ? fmt::format("{}", *c) : std::string("infeasible");
}

std::string mode_label(const SolverChoice& choice) {
  if (choice.kind == SolverKind::Exact) return "exact";
  return fmt::format("glns-{}", to_string(choice.params.mode));
}

ReportRow run_trial(const Instance& inst, const SolverChoice& choice, std::uint64_t seed) {
  ReportRow row;
  row.seed = seed;
  row.n = inst.cells.size();
  row.levels_C = inst.config.levels_C;
  row.d_max = inst.config.d_max;
  row.solver_mode = mode_label(choice);

  const auto start = std::chrono::steady_clock::now();
  try {
    const ClusteredGraph g(inst.cells, inst.config);
    row.optimal_cost = solve(g, choice).cost;
  } catch (const Infeasible&) {
  } catch (const NoFeasibleTour&) {
  }
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    row.baseline_cost = baseline_plan(inst.cells, inst.config).total_time;
  } catch (const Infeasible&) {
  }
  return row;
}

}  // namespace

std::vector<Cell> gen_random(std::size_t n, double extent, double max_len, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("at least one cell is required");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ContractViolation("extent must be > 0");
  if (!(max_len > 0.0) || !std::isfinite(max_len)) throw ContractViolation("max_len must be > 0");

  detail::Rng rng(seed);
  std::vector<Cell> cells;
  std::size_t draws = 0;
  while (cells.size() < n) {
    if (++draws > kMaxDraws) {
      throw SamplingExhausted("placed " + std::to_string(cells.size()) + " of " +
                              std::to_string(n) + " cells before hitting the draw limit");
    }
    const Vec2 mid{rng.uniform(0.0, extent), rng.uniform(0.0, extent)};
    const double angle = rng.uniform(0.0, std::numbers::pi);
    const double len = max_len * (1.0 - rng.uniform());
    const Vec2 half{0.5 * len * std::cos(angle), 0.5 * len * std::sin(angle)};
    const Vec2 a = mid - half;
    const Vec2 b = mid + half;
    auto inside = [extent](Vec2 p) { return p.x >= 0.0 && p.x <= extent && p.y >= 0.0 && p.y <= extent; };
    if (!inside(a) || !inside(b) || a == b) continue;
    bool clear = true;
    for (const Cell& c : cells) {
      if (segments_touch(a, b, c.end_a.position, c.end_b.position)) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    const int i = static_cast<int>(cells.size());
    cells.push_back({i, {2 * i, a, true}, {2 * i + 1, b, true}});
  }
  return cells;
}

std::string_view to_string(SolverKind kind) { return kind == SolverKind::Exact ? "exact" : "glns"; }

std::optional<SolverKind> solver_kind_from_string(std::string_view name) {
  if (name == "exact") return SolverKind::Exact;
  if (name == "glns") return SolverKind::Glns;
  return std::nullopt;
}

GtspTour solve(const ClusteredGraph& g, const SolverChoice& choice) {
  if (choice.kind == SolverKind::Exact) return solve_exact(g);
  return solve_glns(g, choice.params);
}

Plan plan_instance(const Instance& inst, const SolverChoice& choice) {
  const ClusteredGraph g(inst.cells, inst.config);
  return decode(g, solve(g, choice));
}

std::string ExperimentReport::to_csv() const {
  std::string out = fmt::format("# uavcov experiment report v{}\n", kFormatVersion);
  out += "seed,n,C,d_max,optimal_cost,baseline_cost,wall_time_s,solver_mode\n";
  for (const ReportRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{:.6f},{}\n", r.seed, r.n, r.levels_C, r.d_max,
                       fmt_cost(r.optimal_cost), fmt_cost(r.baseline_cost), r.wall_time_s,
                       r.solver_mode);
  }
  return out;
}

ExperimentReport sweep_dmax(const Instance& inst, const std::vector<double>& d_max_values,
                            const SolverChoice& choice) {
  if (!std::is_sorted(d_max_values.begin(), d_max_values.end())) {
    throw ContractViolation("D_max values must be sorted ascending");
  }
  ExperimentReport report;
  for (double d : d_max_values) {
    Instance trial = inst;
    trial.config.d_max = d;
    report.rows.push_back(run_trial(trial, choice, choice.params.rng_seed));
  }
  return report;
}

ExperimentReport sweep_levels(const Instance& inst, const std::vector<int>& levels,
                              const SolverChoice& choice) {
  ExperimentReport report;
  for (int c : levels) {
    Instance trial = inst;
    trial.config.levels_C = c;
    report.rows.push_back(run_trial(trial, choice, choice.params.rng_seed));
  }
  return report;
}

ExperimentReport sweep_cells(const std::vector<std::size_t>& counts, std::size_t trials,
                             std::uint64_t seed, double extent, double max_len,
                             const PlannerConfig& cfg, const SolverChoice& choice) {
  ExperimentReport report;
  for (std::size_t n : counts) {
    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t s = seed + t;
      const Instance inst{gen_random(n, extent, max_len, s), cfg};
      SolverChoice c = choice;
      c.params.rng_seed = s;
      report.rows.push_back(run_trial(inst, c, s));
    }
  }
  return report;
}

}  // namespace uavcov
