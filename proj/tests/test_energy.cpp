#include <gtest/gtest.h>

#include <random>

#include "uavcov/energy.hpp"
#include "uavcov/errors.hpp"

using namespace uavcov;

namespace {

PlannerConfig small_config() {
  PlannerConfig cfg;
  cfg.d_max = 100.0;
  cfg.levels_C = 20;
  cfg.f_ratio = 3.0;
  return cfg;
}

}  // namespace

TEST(Consumption, RoundsUp) {
  const PlannerConfig cfg = small_config();
  EXPECT_EQ(consumption_levels(12.0, FlightMode::MultiRotor, cfg), 3);
  EXPECT_EQ(consumption_levels(12.0, FlightMode::FixedWing, cfg), 1);
  EXPECT_EQ(consumption_levels(0.0, FlightMode::MultiRotor, cfg), 0);
  EXPECT_EQ(consumption_levels(0.0, FlightMode::FixedWing, cfg), 0);
}

TEST(Consumption, ExactMultiplesDoNotRoundUp) {
  PlannerConfig cfg = small_config();
  EXPECT_EQ(consumption_levels(10.0, FlightMode::MultiRotor, cfg), 2);
  cfg.d_max = 0.3;
  cfg.levels_C = 3;
  EXPECT_EQ(consumption_levels(0.1 + 0.2, FlightMode::MultiRotor, cfg), 3);
}

TEST(Consumption, RejectsNegativeDistance) {
  EXPECT_THROW(consumption_levels(-1.0, FlightMode::MultiRotor, small_config()), ContractViolation);
}

TEST(Consumption, MonotoneInDistanceRangeAndRatio) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0, 200);
  for (int i = 0; i < 500; ++i) {
    PlannerConfig cfg = small_config();
    const double a = d(rng), b = d(rng);
    const double lo = std::min(a, b), hi = std::max(a, b);
    EXPECT_LE(consumption_levels(lo, FlightMode::MultiRotor, cfg),
              consumption_levels(hi, FlightMode::MultiRotor, cfg));
    const Level before = consumption_levels(hi, FlightMode::FixedWing, cfg);
    cfg.d_max *= 1.5;
    EXPECT_LE(consumption_levels(hi, FlightMode::MultiRotor, cfg),
              consumption_levels(hi, FlightMode::MultiRotor, small_config()));
    cfg = small_config();
    cfg.f_ratio *= 2.0;
    EXPECT_LE(consumption_levels(hi, FlightMode::FixedWing, cfg), before);
  }
}

TEST(RechargeTime, LinearInLevels) {
  const PlannerConfig cfg;
  EXPECT_DOUBLE_EQ(recharge_time(4, cfg), 8.0);
  EXPECT_DOUBLE_EQ(recharge_time(0, cfg), 0.0);
  EXPECT_DOUBLE_EQ(recharge_time(20, cfg), 40.0);
  EXPECT_THROW(recharge_time(-1, cfg), ContractViolation);
}

TEST(RechargeSplit, WorkedExamples) {
  const PlannerConfig cfg;  // C = 20
  const auto mdu = recharge_split(EdgeType::M_MDU, 20, 2, 2, 20, cfg);
  ASSERT_TRUE(mdu);
  EXPECT_EQ(*mdu, (RechargeSplit{0, 4, 0}));
  const auto dtu = recharge_split(EdgeType::M_DTU, 20, 2, 0, 20, cfg);
  ASSERT_TRUE(dtu);
  EXPECT_EQ(*dtu, (RechargeSplit{0, 0, 2}));
  const auto mm = recharge_split(EdgeType::M_M, 20, 2, 2, 16, cfg);
  ASSERT_TRUE(mm);
  EXPECT_EQ(*mm, RechargeSplit{});
}

TEST(RechargeSplit, PureFlightNeedsExactLevel) {
  const PlannerConfig cfg;
  EXPECT_FALSE(recharge_split(EdgeType::M_M, 20, 2, 2, 17, cfg));
  EXPECT_FALSE(recharge_split(EdgeType::M_M, 20, 2, 2, 15, cfg));
  EXPECT_FALSE(recharge_split(EdgeType::M_M, 3, 2, 2, 1, cfg));
}

TEST(RechargeSplit, DumNeedsRoomInTheBattery) {
  const PlannerConfig cfg;
  // Leaving the exit with k_j + cons2 = 23 > C is impossible.
  EXPECT_FALSE(recharge_split(EdgeType::M_DUM, 20, 2, 3, 20, cfg));
  const auto ok = recharge_split(EdgeType::M_DUM, 20, 2, 3, 17, cfg);
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->at_exit_e1, 2);
  // Arriving above k_j would need discharge, which no edge can do.
  EXPECT_FALSE(recharge_split(EdgeType::M_DUM, 20, 2, 3, 10, cfg));
}

TEST(RechargeSplit, DumduChargesAtExitFirst) {
  const PlannerConfig cfg;
  const auto s = recharge_split(EdgeType::M_DUMDU, 10, 4, 8, 20, cfg);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->at_exit_e1, 14);
  EXPECT_EQ(s->at_entry_e2, 8);
}

// Replaying the events of a feasible split stays in [0, C] and lands on k_j;
// DUMDU totals do not depend on how the charge is split.
TEST(RechargeSplit, ReplayAndConservation) {
  PlannerConfig cfg;
  cfg.levels_C = 8;
  const Level C = cfg.levels_C;
  for (EdgeType t : all_edge_types()) {
    const RechargeFamily fam = traits(t).family;
    for (Level ki = 0; ki <= C; ++ki) {
      for (Level kj = 0; kj <= C; ++kj) {
        for (Level c1 = 0; c1 <= C + 1; ++c1) {
          for (Level c2 = 0; c2 <= C + 1; ++c2) {
            const auto s = recharge_split(t, ki, c1, c2, kj, cfg);
            if (!s) continue;
            EXPECT_GE(s->at_exit_e1, 0);
            EXPECT_GE(s->at_entry_e2, 0);
            EXPECT_GE(s->in_transit_e, 0);
            Level b = ki - c1;
            EXPECT_GE(b, 0);
            b += s->at_exit_e1;
            EXPECT_LE(b, C);
            if (fam == RechargeFamily::Transit) {
              b += s->in_transit_e;
            } else {
              b -= c2;
            }
            EXPECT_GE(b, 0);
            b += s->at_entry_e2;
            EXPECT_LE(b, C);
            EXPECT_EQ(b, kj);
            if (fam == RechargeFamily::ExitAndEntry) {
              EXPECT_EQ(s->total(), std::max(0, kj - (ki - c1 - c2)));
            }
            if (fam == RechargeFamily::None) EXPECT_EQ(s->total(), 0);
            if (fam != RechargeFamily::ExitAndEntry && fam != RechargeFamily::AtExit) {
              EXPECT_EQ(s->at_exit_e1, 0);
            }
          }
        }
      }
    }
  }
}

TEST(EdgeTypes, NamesAndTraits) {
  EXPECT_EQ(to_string(EdgeType::M_M), "M-M");
  EXPECT_EQ(to_string(EdgeType::F_DUMDU), "F-DUMDU");
  for (EdgeType t : all_edge_types()) EXPECT_EQ(edge_type_from_string(to_string(t)), t);
  EXPECT_FALSE(edge_type_from_string("M-X").has_value());
  EXPECT_FALSE(uses_fixed_wing(EdgeType::M_M));
  EXPECT_FALSE(uses_fixed_wing(EdgeType::M_DTU));
  EXPECT_TRUE(uses_fixed_wing(EdgeType::F_DTU));
  EXPECT_TRUE(uses_fixed_wing(EdgeType::M_DUFDU));
  EXPECT_EQ(traits(EdgeType::F_MDU).cover_mode, FlightMode::FixedWing);
  EXPECT_EQ(traits(EdgeType::F_MDU).transit_mode, FlightMode::MultiRotor);
  EXPECT_EQ(traits(EdgeType::M_DUF).family, RechargeFamily::AtExit);
}

TEST(Config, ValidateRejectsNonPositive) {
  PlannerConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.d_max = 0.0;
  EXPECT_THROW(validate(cfg), ContractViolation);
  cfg = {};
  cfg.levels_C = 0;
  EXPECT_THROW(validate(cfg), ContractViolation);
  cfg = {};
  cfg.ugv_speed_ratio = std::numeric_limits<double>::infinity();
  EXPECT_THROW(validate(cfg), ContractViolation);
}
