#include <gtest/gtest.h>

#include <algorithm>

#include "layered_dp.hpp"
#include "oracles/brute_force.hpp"
#include "support.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/solver.hpp"

using namespace uavcov;
using testing_support::strip;

namespace {

PlannerConfig multirotor_config(double d_max, int levels) {
  PlannerConfig cfg;
  cfg.d_max = d_max;
  cfg.levels_C = levels;
  cfg.f_ratio = 0.5;
  return cfg;
}

std::vector<Cell> collinear(int n) {
  std::vector<Cell> cells;
  for (int i = 0; i < n; ++i) cells.push_back(strip(i, {20.0 * i, 0}, {20.0 * i + 10, 0}));
  return cells;
}

int recharge_edges(const ClusteredGraph& g, const GtspTour& t) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < t.vertices.size(); ++i) {
    const Edge e = g.edge(t.vertices[i], t.vertices[i + 1]);
    if (traits(*e.best_type).family != RechargeFamily::None) ++count;
  }
  return count;
}

SolverParams quick_params(std::uint64_t seed) {
  SolverParams p;
  p.rng_seed = seed;
  p.time_budget = 60.0;
  return p;
}

}  // namespace

TEST(Exact, SingleCell) {
  const ClusteredGraph g(collinear(1), PlannerConfig{});
  const GtspTour t = solve_exact(g);
  ASSERT_EQ(t.vertices.size(), 2u);
  EXPECT_EQ(t.vertices[0], ClusteredGraph::kDepot);
  EXPECT_EQ(g.vertex(t.vertices[1]).level, g.config().levels_C);
  EXPECT_EQ(t.cost, 10.0);
  EXPECT_EQ(tour_cost(g, t), 10.0);
}

TEST(Exact, TwoCollinearCells) {
  const ClusteredGraph g(collinear(2), multirotor_config(100.0, 20));
  const GtspTour t = solve_exact(g);
  EXPECT_EQ(t.cost, 30.0);
  EXPECT_EQ(tour_cost(g, t), 30.0);
  EXPECT_EQ(oracle::brute_force_tour(g), 30.0);
  EXPECT_EQ(recharge_edges(g, t), 0);
}

TEST(Exact, ThreeCellsNeedOneRecharge) {
  // 30 m of coverage plus 20 m of gaps against a 40 m battery.
  const ClusteredGraph g(collinear(3), multirotor_config(40.0, 20));
  const GtspTour t = solve_exact(g);
  EXPECT_EQ(t.cost, oracle::brute_force_tour(g));
  EXPECT_EQ(recharge_edges(g, t), 1);
}

TEST(Exact, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const auto inst = testing_support::random_small(seed, n, 3 + static_cast<int>(seed % 2));
    const ClusteredGraph g(inst.cells, inst.cfg);
    const double brute = oracle::brute_force_tour(g);
    if (brute == kInfinity) {
      EXPECT_THROW(solve_exact(g), Infeasible);
      continue;
    }
    const GtspTour t = solve_exact(g);
    EXPECT_EQ(t.cost, brute) << "seed " << seed;
    EXPECT_EQ(tour_cost(g, t), t.cost);
    EXPECT_NO_THROW(check_tour_structure(g, t));
  }
}

TEST(Exact, Errors) {
  const ClusteredGraph big(collinear(9), PlannerConfig{});
  EXPECT_THROW(solve_exact(big), InstanceTooLarge);
  EXPECT_NO_THROW(solve_exact(ClusteredGraph(collinear(3), PlannerConfig{}), 3));
  // A 10 m cell cannot be covered with an 8 m multi-rotor range.
  const ClusteredGraph hopeless(collinear(2), multirotor_config(8.0, 5));
  EXPECT_THROW(solve_exact(hopeless), Infeasible);
  EXPECT_THROW(solve_glns(hopeless, quick_params(1)), NoFeasibleTour);
}

TEST(Tour, StructureChecks) {
  const ClusteredGraph g(collinear(2), PlannerConfig{});
  const std::size_t a = g.vertex_id(0, CellEnd::A, 20), b = g.vertex_id(1, CellEnd::A, 20);
  EXPECT_THROW(tour_cost(g, {{a, b}}), ContractViolation);
  EXPECT_THROW(tour_cost(g, {{0, a}}), ContractViolation);
  EXPECT_THROW(tour_cost(g, {{0, a, g.vertex_id(0, CellEnd::B, 3)}}), ContractViolation);
  EXPECT_THROW(tour_cost(g, {{0, a, 9999}}), ContractViolation);
  EXPECT_EQ(tour_cost(g, {{0, a, b}}), g.cost(0, a) + g.cost(a, b) + g.cost(b, 0));
  EXPECT_EQ(cluster_order(g, {{0, b, a}}), (std::vector<std::size_t>{2, 1}));
}

TEST(Tour, ReversedOrderCostsTheSameWithoutRecharge) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto cells = gen_random(5, 60.0, 12.0, seed);
    const ClusteredGraph g(cells, multirotor_config(10000.0, 10));
    std::vector<std::size_t> order = {1, 2, 3, 4, 5};
    std::shuffle(order.begin(), order.end(), std::mt19937_64(seed));
    const GtspTour fwd = optimize_vertices(g, order);
    std::reverse(order.begin(), order.end());
    const GtspTour back = optimize_vertices(g, order);
    EXPECT_NEAR(fwd.cost, back.cost, 1e-9 * fwd.cost);
  }
}

TEST(OptimizeVertices, MatchesBestOverPicks) {
  const auto inst = testing_support::random_small(17, 3, 4);
  const ClusteredGraph g(inst.cells, inst.cfg);
  const std::vector<std::size_t> order = {2, 3, 1};
  const GtspTour t = optimize_vertices(g, order);
  double best = kInfinity;
  const std::size_t w = g.cluster_size(1);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < w; ++y) {
      for (std::size_t z = 0; z < w; ++z) {
        best = std::min(best, tour_cost(g, {{0, g.cluster_begin(2) + x, g.cluster_begin(3) + y,
                                             g.cluster_begin(1) + z}}));
      }
    }
  }
  EXPECT_EQ(t.cost, best);
  EXPECT_EQ(cluster_order(g, t), order);
  EXPECT_THROW(optimize_vertices(g, std::vector<std::size_t>{1, 1, 2}), ContractViolation);
}

TEST(Glns, MatchesExactOnSmallInstances) {
  int matched = 0, total = 0;
  for (std::uint64_t seed = 40; seed < 48; ++seed) {
    const auto inst = testing_support::random_small(seed, 3 + seed % 3, 3 + static_cast<int>(seed % 3));
    const ClusteredGraph g(inst.cells, inst.cfg);
    GtspTour exact;
    try {
      exact = solve_exact(g);
    } catch (const Infeasible&) {
      continue;
    }
    const GtspTour heur = solve_glns(g, quick_params(seed));
    EXPECT_GE(heur.cost, exact.cost * (1 - 1e-12));
    EXPECT_EQ(tour_cost(g, heur), heur.cost);
    ++total;
    if (heur.cost <= exact.cost * (1 + 1e-9)) ++matched;
  }
  ASSERT_GT(total, 0);
  EXPECT_GE(matched, total - 1);
}

TEST(Glns, DeterministicForSeed) {
  const auto inst = testing_support::random_small(5, 6, 4);
  const ClusteredGraph g(inst.cells, inst.cfg);
  EXPECT_EQ(solve_glns(g, quick_params(9)), solve_glns(g, quick_params(9)));
}

TEST(Glns, ZeroIterationsReturnsConstruction) {
  const ClusteredGraph g(collinear(4), multirotor_config(1000.0, 5));
  SolverParams p = quick_params(3);
  p.iterations = 0;
  const GtspTour t = solve_glns(g, p);
  EXPECT_NO_THROW(check_tour_structure(g, t));
  EXPECT_EQ(tour_cost(g, t), t.cost);
  EXPECT_LT(t.cost, kInfinity);
}

TEST(Glns, ParameterChecks) {
  const ClusteredGraph g(collinear(2), PlannerConfig{});
  SolverParams p = quick_params(1);
  p.time_budget = 0.0;
  EXPECT_THROW(solve_glns(g, p), ContractViolation);
  p = quick_params(1);
  p.cooling_rate = 1.5;
  EXPECT_THROW(solve_glns(g, p), ContractViolation);
  p = quick_params(1);
  p.max_removal_fraction = 0.0;
  EXPECT_THROW(solve_glns(g, p), ContractViolation);
}

TEST(LayeredDp, InsertionCostMatchesFullSolve) {
  for (std::uint64_t seed = 60; seed < 68; ++seed) {
    const auto inst = testing_support::random_small(seed, 5, 4);
    const ClusteredGraph g(inst.cells, inst.cfg);
    detail::LayeredDp dp(g, g.costs());
    const std::vector<std::size_t> base{4, 1, 5, 2};
    dp.prepare(base);
    for (std::size_t pos = 0; pos <= base.size(); ++pos) {
      std::vector<std::size_t> full = base;
      full.insert(full.begin() + static_cast<std::ptrdiff_t>(pos), 3);
      const double expect = dp.solve(full).cost;
      const double got = dp.insertion_cost(pos, 3);
      if (expect == kInfinity) {
        EXPECT_EQ(got, kInfinity);
      } else {
        EXPECT_NEAR(got, expect, 1e-9 * expect) << "seed " << seed << " pos " << pos;
      }
    }
  }
}

TEST(SolverMode, Names) {
  for (SolverMode m : {SolverMode::Fast, SolverMode::Default, SolverMode::Slow}) {
    EXPECT_EQ(solver_mode_from_string(to_string(m)), m);
  }
  EXPECT_FALSE(solver_mode_from_string("turbo"));
}
