#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "uavcov/errors.hpp"
#include "uavcov/io.hpp"
#include "uavcov/plan.hpp"

namespace {

using namespace uavcov;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

struct SolverFlags {
  std::string solver = "exact";
  std::string mode = "default";
  std::uint64_t seed = 1;
  double time_budget = 600.0;
  int restarts = 3;

  SolverChoice choice() const {
    SolverChoice c;
    c.kind = *solver_kind_from_string(solver);
    c.params.mode = *solver_mode_from_string(mode);
    c.params.rng_seed = seed;
    c.params.time_budget = time_budget;
    c.params.restarts = restarts;
    return c;
  }
};

void add_solver_flags(CLI::App* sub, SolverFlags& f) {
  sub->add_option("--solver", f.solver, "exact or glns")
      ->check(CLI::IsMember({"exact", "glns"}))
      ->capture_default_str();
  sub->add_option("--mode", f.mode, "glns effort: fast, default or slow")
      ->check(CLI::IsMember({"fast", "default", "slow"}))
      ->capture_default_str();
  sub->add_option("--seed", f.seed, "glns random seed")->capture_default_str();
  sub->add_option("--time-budget", f.time_budget, "glns wall-clock budget in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--restarts", f.restarts, "glns restarts")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_text(out, text);
  }
}

int report_issues(const std::vector<Issue>& issues) {
  for (const Issue& i : issues) {
    const char* tag = i.severity == IssueSeverity::Violation ? "violation" : "warning";
    std::cerr << tag << ": " << i.message;
    if (i.leg) std::cerr << " (leg " << *i.leg << ")";
    if (i.severity == IssueSeverity::Warning) std::cerr << fmt::format(" [wait {:.3f} s]", i.wait);
    std::cerr << "\n";
  }
  return static_cast<int>(count_violations(issues));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware UAV coverage planning with a UGV recharging partner"};
  app.require_subcommand(1);

  std::string out;

  SolverFlags plan_flags;
  std::string plan_in;
  auto* plan_cmd = app.add_subcommand("plan", "solve an instance and write the plan as JSON");
  plan_cmd->add_option("instance", plan_in, "instance JSON")->required();
  plan_cmd->add_option("-o,--output", out, "output file (stdout if omitted)");
  add_solver_flags(plan_cmd, plan_flags);

  std::size_t gen_n = 15;
  double gen_extent = 100.0;
  double gen_max_len = 10.0;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("-n,--cells", gen_n, "number of cells")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}))
      ->capture_default_str();
  gen_cmd->add_option("--extent", gen_extent, "side of the square area in meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--max-len", gen_max_len, "maximum cell length in meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", out, "output file (stdout if omitted)");

  SolverFlags cmp_flags;
  std::string cmp_in;
  auto* cmp_cmd = app.add_subcommand("compare", "compare the optimized plan with the baseline");
  cmp_cmd->add_option("instance", cmp_in, "instance JSON")->required();
  add_solver_flags(cmp_cmd, cmp_flags);

  SolverFlags sweep_flags;
  std::string sweep_kind;
  std::string sweep_in;
  std::vector<double> sweep_values;
  std::size_t sweep_trials = 1;
  std::uint64_t sweep_seed = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep, CSV report");
  sweep_cmd->add_option("parameter", sweep_kind, "dmax, cells or levels")
      ->required()
      ->check(CLI::IsMember({"dmax", "cells", "levels"}));
  sweep_cmd->add_option("instance", sweep_in,
                        "instance JSON (for cells: only its config is used)");
  sweep_cmd->add_option("--values", sweep_values, "swept values")->delimiter(',')->required();
  sweep_cmd->add_option("--trials", sweep_trials, "random instances per cell count")
      ->capture_default_str();
  sweep_cmd->add_option("--instance-seed", sweep_seed, "first seed for random instances")
      ->capture_default_str();
  sweep_cmd->add_option("--extent", gen_extent, "area side for random instances")
      ->capture_default_str();
  sweep_cmd->add_option("--max-len", gen_max_len, "maximum cell length for random instances")
      ->capture_default_str();
  sweep_cmd->add_option("-o,--output", out, "output file (stdout if omitted)");
  add_solver_flags(sweep_cmd, sweep_flags);

  std::string render_instance;
  std::string render_plan;
  auto* render_cmd = app.add_subcommand("render", "draw a plan as SVG");
  render_cmd->add_option("instance", render_instance, "instance JSON")->required();
  render_cmd->add_option("plan", render_plan, "plan JSON")->required();
  render_cmd->add_option("-o,--output", out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (plan_cmd->parsed()) {
      const Instance inst = load_instance(plan_in);
      const Plan plan = plan_instance(inst, plan_flags.choice());
      report_issues(validate(plan, inst.config));
      emit(plan_to_json(plan), out);
    } else if (gen_cmd->parsed()) {
      emit(instance_to_json({gen_random(gen_n, gen_extent, gen_max_len, gen_seed), {}}), out);
    } else if (cmp_cmd->parsed()) {
      const Instance inst = load_instance(cmp_in);
      const double optimized = plan_instance(inst, cmp_flags.choice()).total_time;
      const double baseline = baseline_plan(inst.cells, inst.config).total_time;
      std::cout << fmt::format("optimized {:.3f} s\nbaseline  {:.3f} s\nimprovement {:.2f} %\n",
                               optimized, baseline, 100.0 * (baseline - optimized) / baseline);
    } else if (sweep_cmd->parsed()) {
      const SolverChoice choice = sweep_flags.choice();
      Instance inst;
      if (!sweep_in.empty()) {
        inst = load_instance(sweep_in);
      } else if (sweep_kind != "cells") {
        throw CLI::RequiredError("instance");
      }
      ExperimentReport report;
      if (sweep_kind == "dmax") {
        report = sweep_dmax(inst, sweep_values, choice);
      } else if (sweep_kind == "levels") {
        std::vector<int> levels;
        for (double v : sweep_values) levels.push_back(static_cast<int>(v));
        report = sweep_levels(inst, levels, choice);
      } else {
        std::vector<std::size_t> counts;
        for (double v : sweep_values) counts.push_back(static_cast<std::size_t>(v));
        report = sweep_cells(counts, sweep_trials, sweep_seed, gen_extent, gen_max_len,
                             inst.config, choice);
      }
      emit(report.to_csv(), out);
    } else if (render_cmd->parsed()) {
      const Instance inst = load_instance(render_instance);
      const Plan plan = load_plan(render_plan);
      emit(render_svg(inst.cells, plan), out);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const NoFeasibleTour& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
