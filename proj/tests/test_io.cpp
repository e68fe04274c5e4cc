#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "support.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/io.hpp"

using namespace uavcov;
using testing_support::strip;

namespace {

Instance sample_instance() {
  Instance inst;
  inst.cells = {strip(0, {0.1, 0.2}, {10.3, 0.2}), strip(1, {20, 1.0 / 3.0}, {30, 5}, false, true)};
  inst.config.d_max = 37.5;
  inst.config.levels_C = 7;
  inst.config.f_ratio = 2.25;
  inst.config.turn_radius = 1.75;
  return inst;
}

Plan sample_plan() {
  const Instance inst = sample_instance();
  return plan_instance(inst, {});
}

bool overlaps(const Cell& a, const Cell& b) {
  const auto cross = [](Vec2 o, Vec2 p, Vec2 q) {
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
  };
  const Vec2 p1 = a.end_a.position, p2 = a.end_b.position, q1 = b.end_a.position, q2 = b.end_b.position;
  const double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2), d3 = cross(p1, p2, q1),
               d4 = cross(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

TEST(InstanceJson, RoundTripIsLossless) {
  const Instance inst = sample_instance();
  const std::string text = instance_to_json(inst);
  EXPECT_EQ(instance_from_json(text), inst);
  EXPECT_EQ(instance_to_json(instance_from_json(text)), text);
}

TEST(InstanceJson, ConfigFieldsAreOptional) {
  const Instance inst = instance_from_json(R"({"version": 1, "cells": [
      {"index": 0, "a": {"x": 0, "y": 0}, "b": {"x": 4, "y": 0, "on_road": false}}]})");
  EXPECT_EQ(inst.config, PlannerConfig{});
  ASSERT_EQ(inst.cells.size(), 1u);
  EXPECT_TRUE(inst.cells[0].end_a.on_road);
  EXPECT_FALSE(inst.cells[0].end_b.on_road);
  EXPECT_EQ(inst.cells[0].end_b.id, 1);
}

TEST(InstanceJson, SyntaxErrorsReportLineAndColumn) {
  try {
    instance_from_json("{\n  \"version\": 1,\n  \"cells\": [,]\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(InstanceJson, SchemaErrorsNameTheKey) {
  const auto message = [](std::string_view text) {
    try {
      instance_from_json(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"version": 1, "cells": [], "colour": 3})").find("colour"), std::string::npos);
  EXPECT_NE(message(R"({"version": 2, "cells": []})").find("version"), std::string::npos);
  EXPECT_NE(message(R"({"version": 1, "cells": []})").find("cells"), std::string::npos);
  EXPECT_NE(message(R"({"version": 1, "config": {"levels_C": 0},
      "cells": [{"index": 0, "a": {"x": 0, "y": 0}, "b": {"x": 4, "y": 0}}]})")
                .find("config"),
            std::string::npos);
  EXPECT_NE(message(R"({"version": 1, "cells": [{"index": 0, "a": {"x": "0", "y": 0}, "b": {"x": 4, "y": 0}}]})")
                .find("cells[0].a.x"),
            std::string::npos);
  EXPECT_NE(message(R"({"version": 1, "cells": [{"index": 0, "a": {"x": 1, "y": 0}, "b": {"x": 1, "y": 0}}]})"),
            "no error");
}

TEST(PlanJson, RoundTripIsLossless) {
  const Plan plan = sample_plan();
  const std::string text = plan_to_json(plan);
  EXPECT_EQ(plan_from_json(text), plan);
  EXPECT_EQ(plan_to_json(plan_from_json(text)), text);
}

TEST(PlanJson, RoundTripKeepsFixedWingPaths) {
  Instance inst;
  inst.cells = {strip(0, {0, 0}, {10, 0}), strip(1, {10, 20}, {0, 20})};
  inst.config.d_max = 30.0;
  inst.config.levels_C = 10;
  inst.config.f_ratio = 4.0;
  inst.config.fixed_wing_speed = 1.5;
  const Plan plan = plan_instance(inst, {});
  bool has_path = false;
  for (const Leg& l : plan.uav_legs) has_path = has_path || l.path.has_value();
  EXPECT_TRUE(has_path);
  EXPECT_EQ(plan_from_json(plan_to_json(plan)), plan);
}

TEST(PlanJson, RejectsModeOnGroundLegs) {
  PlannerConfig cfg;
  cfg.d_max = 10.0;
  cfg.f_ratio = 0.5;
  const std::vector<Cell> cells = {strip(0, {0, 0}, {10, 0}), strip(1, {20, 0}, {30, 0})};
  const ClusteredGraph g(cells, cfg);
  std::string text =
      plan_to_json(decode(g, {{0, g.vertex_id(0, CellEnd::A, 20), g.vertex_id(1, CellEnd::A, 20)}}));
  EXPECT_NO_THROW(plan_from_json(text));
  const auto pos = text.find("\"kind\": \"land\"");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos, "\"mode\": \"M\", ");
  EXPECT_THROW(plan_from_json(text), ParseError);
}

TEST(Files, LoadReportsThePath) {
  const auto dir = std::filesystem::temp_directory_path() / "uavcov_io_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "inst.json", bad = dir / "bad.json";
  write_text(good, instance_to_json(sample_instance()));
  write_text(bad, "{\"version\": 1,");
  EXPECT_EQ(load_instance(good), sample_instance());
  try {
    load_instance(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(read_text(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Generator, PaperSizedInstance) {
  const auto cells = gen_random(15, 100.0, 10.0, 1);
  ASSERT_EQ(cells.size(), 15u);
  EXPECT_NO_THROW(validate_cells(cells));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    EXPECT_EQ(c.index, static_cast<int>(i));
    EXPECT_GT(c.length(), 0.0);
    EXPECT_LE(c.length(), 10.0);
    for (const Site& s : {c.end_a, c.end_b}) {
      EXPECT_GE(s.position.x, 0.0);
      EXPECT_LE(s.position.x, 100.0);
      EXPECT_GE(s.position.y, 0.0);
      EXPECT_LE(s.position.y, 100.0);
      EXPECT_TRUE(s.on_road);
    }
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(overlaps(c, cells[j]));
  }
}

TEST(Generator, DeterministicAndSeedSensitive) {
  EXPECT_EQ(gen_random(8, 50.0, 10.0, 42), gen_random(8, 50.0, 10.0, 42));
  EXPECT_NE(gen_random(8, 50.0, 10.0, 42), gen_random(8, 50.0, 10.0, 43));
  EXPECT_EQ(gen_random(1, 1.0, 0.5, 7).size(), 1u);
}

TEST(Generator, GivesUpOnImpossibleRequests) {
  EXPECT_THROW(gen_random(5000, 1.0, 1.0, 1), SamplingExhausted);
  EXPECT_THROW(gen_random(3, -1.0, 1.0, 1), ContractViolation);
}

TEST(Experiments, DmaxSweepIsNonIncreasing) {
  Instance inst;
  inst.cells = gen_random(5, 50.0, 10.0, 3);
  inst.config.levels_C = 10;
  const ExperimentReport r = sweep_dmax(inst, {10, 20, 30, 40, 50}, {});
  ASSERT_EQ(r.rows.size(), 5u);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (!r.rows[i - 1].optimal_cost) continue;
    ASSERT_TRUE(r.rows[i].optimal_cost);
    EXPECT_LE(*r.rows[i].optimal_cost, *r.rows[i - 1].optimal_cost);
  }
  for (const ReportRow& row : r.rows) EXPECT_EQ(row.solver_mode, "exact");
}

TEST(Experiments, TooShortRangeIsInfeasibleEverywhere) {
  Instance inst;
  inst.cells = {strip(0, {0, 0}, {10, 0}), strip(1, {0, 5}, {10, 5})};
  inst.config.f_ratio = 0.5;
  const ExperimentReport r = sweep_dmax(inst, {2, 4, 8}, {});
  for (const ReportRow& row : r.rows) {
    EXPECT_FALSE(row.optimal_cost);
    EXPECT_FALSE(row.baseline_cost);
  }
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.rfind("# uavcov experiment report v1\n", 0), 0u);
  EXPECT_NE(csv.find("infeasible,infeasible"), std::string::npos);
}

TEST(Experiments, CsvLayout) {
  ExperimentReport r;
  r.rows.push_back({7, 15, 20, 1800.0, 123.5, 140.25, 0.5, "glns-fast"});
  r.rows.push_back({8, 15, 20, 1800.0, std::nullopt, 99.0, 0.25, "exact"});
  EXPECT_EQ(r.to_csv(),
            "# uavcov experiment report v1\n"
            "seed,n,C,d_max,optimal_cost,baseline_cost,wall_time_s,solver_mode\n"
            "7,15,20,1800,123.5,140.25,0.500000,glns-fast\n"
            "8,15,20,1800,infeasible,99,0.250000,exact\n");
}

TEST(Experiments, LevelsAndCellsSweeps) {
  Instance inst;
  inst.cells = gen_random(4, 40.0, 8.0, 5);
  const ExperimentReport lv = sweep_levels(inst, {5, 10}, {});
  ASSERT_EQ(lv.rows.size(), 2u);
  EXPECT_EQ(lv.rows[0].levels_C, 5);
  EXPECT_EQ(lv.rows[1].levels_C, 10);
  const ExperimentReport cs = sweep_cells({2, 3}, 2, 11, 40.0, 8.0, PlannerConfig{}, {});
  ASSERT_EQ(cs.rows.size(), 4u);
  EXPECT_EQ(cs.rows[0].n, 2u);
  EXPECT_EQ(cs.rows[1].seed, 12u);
  EXPECT_EQ(cs.rows[3].n, 3u);
}

TEST(Svg, NoUgvGroupWithoutWaypoints) {
  PlannerConfig cfg;
  cfg.f_ratio = 0.5;
  const Instance inst{{strip(0, {0, 0}, {10, 0}), strip(1, {0, 5}, {10, 5})}, cfg};
  const Plan plan = plan_instance(inst, {});
  ASSERT_TRUE(plan.ugv_waypoints.empty());
  const std::string svg = render_svg(inst.cells, plan);
  EXPECT_EQ(svg.find("id=\"ugv\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"cells\""), std::string::npos);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
}

TEST(Svg, RideDrawsUgvPolyline) {
  PlannerConfig cfg;
  cfg.d_max = 10.0;
  cfg.f_ratio = 0.5;
  const std::vector<Cell> cells = {strip(0, {0, 0}, {10, 0}), strip(1, {20, 0}, {30, 0})};
  const ClusteredGraph g(cells, cfg);
  const Plan plan = decode(g, {{0, g.vertex_id(0, CellEnd::A, 20), g.vertex_id(1, CellEnd::A, 20)}});
  const std::string svg = render_svg(cells, plan);
  const auto group = svg.find("id=\"ugv\"");
  ASSERT_NE(group, std::string::npos);
  const auto poly = svg.find("points=\"", group);
  const auto end = svg.find('"', poly + 8);
  const std::string pts = svg.substr(poly + 8, end - poly - 8);
  EXPECT_GE(std::count(pts.begin(), pts.end(), ' ') + 1, 2);
}

TEST(Svg, FixedWingLegsUseArcs) {
  Instance inst;
  inst.cells = {strip(0, {0, 0}, {10, 0}), strip(1, {10, 20}, {0, 20})};
  inst.config.d_max = 30.0;
  inst.config.levels_C = 10;
  inst.config.f_ratio = 4.0;
  inst.config.fixed_wing_speed = 1.5;
  const Plan plan = plan_instance(inst, {});
  const std::string svg = render_svg(inst.cells, plan);
  const auto group = svg.find("id=\"fixedwing\"");
  ASSERT_NE(group, std::string::npos);
  EXPECT_NE(svg.find(" A ", group), std::string::npos);
  EXPECT_EQ(svg, render_svg(inst.cells, plan_instance(inst, {})));
}
