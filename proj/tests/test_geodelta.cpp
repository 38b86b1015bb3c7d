#include <gtest/gtest.h>

#include "lry/geodelta.hpp"

using namespace lry;

TEST(Geodelta, ShapeAndSupport) {
  for (int delta : {1, 2, 5}) {
    const auto inst = make_geodelta(delta);
    EXPECT_EQ(inst.grid.m(), 20 * delta);
    EXPECT_EQ(inst.grid.d(), 100);
    EXPECT_EQ(inst.grid.z(), 20);
    EXPECT_EQ(inst.n(), 4 * delta * delta);
    EXPECT_EQ(inst.grid.total_support(), Ratio(51 * delta));
    EXPECT_EQ(inst.left_support.back(), Ratio(51 * delta));
  }
}

TEST(Geodelta, SplitsAreNestedValidDistricts) {
  const auto inst = make_geodelta(3);
  ASSERT_EQ(static_cast<int>(inst.splits.increments.size()), inst.n());
  std::vector<int> seen(inst.grid.cells().size(), 0);
  for (const auto& inc : inst.splits.increments) {
    EXPECT_TRUE(district_issues(inst.grid, inc).empty());
    for (const auto& c : inc) ++seen[inst.grid.index(c)];
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  for (int k = 0; k <= inst.n(); ++k) {
    EXPECT_EQ(static_cast<int>(inst.side_cells(k, Side::L).size()), 100 * k);
    EXPECT_EQ(inst.side_support(k, Side::L) + inst.side_support(k, Side::R), Ratio(153));
  }
}

TEST(Geodelta, SideWinExamples) {
  EXPECT_EQ(geodelta_side_wins(3, 1, Side::R, Party::A), 2);
  EXPECT_EQ(geodelta_side_wins(3, 1, Side::L, Party::A), 0);
  EXPECT_EQ(geodelta_side_wins(1, 1, Side::L, Party::A), 1);
  EXPECT_EQ(geodelta_side_wins(1, 0, Side::R, Party::A), 1);
  EXPECT_EQ(geodelta_side_wins(1, 0, Side::R, Party::B), 0);
  EXPECT_THROW(geodelta_side_wins(1, 5, Side::L, Party::A), std::out_of_range);
  EXPECT_THROW(make_geodelta(0), InputError);
  EXPECT_THROW(make_geodelta(61), InputError);
}

TEST(Geodelta, TargetIsHalfDelta) {
  for (int delta : {1, 2, 5}) {
    const auto table = geodelta_win_table(make_geodelta(delta));
    EXPECT_EQ(table.target(Party::A).value(), Ratio(delta, 2));
  }
}

TEST(Geodelta, BestAndWorstPlans) {
  const auto rep = geodelta_report(4, 0);
  EXPECT_TRUE(rep.best_plan_valid);
  EXPECT_TRUE(rep.worst_plan_valid);
  EXPECT_EQ(rep.best_plan_wins_a, 4);
  EXPECT_EQ(rep.worst_plan_wins_a, 0);
}

TEST(Geodelta, DeltaTwoTruthfulTable) {
  const auto table = geodelta_win_table(make_geodelta(2));
  EXPECT_EQ(table.a_option1[1], 0);
  EXPECT_EQ(table.a_option2[1], 1);
  EXPECT_EQ(table.a_option1[2], 1);
  EXPECT_EQ(table.a_option2[2], 1);
}

TEST(Geodelta, TruthfulOutcomeAndGap) {
  for (int delta : {2, 5}) {
    const auto rep = geodelta_report(delta, 0);
    EXPECT_EQ(rep.run.outcome.kind, OutcomeKind::BothIndifferent) << delta;
    EXPECT_EQ(rep.run.outcome.k, delta) << delta;
    EXPECT_EQ(rep.worst_wins_a, 1) << delta;
    EXPECT_EQ(rep.gap, Ratio(delta, 2) - Ratio(1)) << delta;
  }
}

TEST(Geodelta, AllCutAssumptionGivesCoinFlip) {
  const auto inst = make_geodelta(3);
  const auto table = geodelta_win_table(inst, geodelta_side_wins_if_all_cut);
  EXPECT_EQ(table.a_option1[2], 0);
  EXPECT_EQ(table.a_option2[2], 1);
  EXPECT_EQ(table.a_option1[3], 1);
  EXPECT_EQ(table.a_option2[3], 0);
  const auto rep = geodelta_report(inst, 0);
  EXPECT_EQ(rep.all_cut_run.outcome.kind, OutcomeKind::CoinFlip);
  EXPECT_EQ(rep.all_cut_run.outcome.k, 3);  // between the 2- and 3-splits
  EXPECT_EQ(rep.all_cut_worst_wins_a, 0);
  EXPECT_EQ(rep.all_cut_gap, Ratio(3, 2));
}

TEST(Geodelta, WitnessCheckIsClean) {
  for (int delta : {1, 2, 3}) {
    const auto check = geodelta_witness_check(make_geodelta(delta));
    EXPECT_TRUE(check.failures.empty()) << (check.failures.empty() ? "" : check.failures.front());
    EXPECT_EQ(check.sides_checked, 4 * (4 * delta * delta + 1));
  }
}

TEST(Geodelta, ForcedDistrictsPinTheBlock) {
  const auto inst = make_geodelta(2);
  // B districts L_2: the edge strip and then the block are forced.
  const auto forced = inst.forced_districts(2, Side::L);
  EXPECT_EQ(count_wins(inst.grid, forced, Party::A), 1);
  EXPECT_EQ(geodelta_side_wins(inst, 2, Side::L, Party::B), 1);
}

TEST(Geodelta, ShrunkLayoutMatchesExhaustiveSearch) {
  for (int delta : {1, 2}) {
    const auto inst = make_geodelta(delta, GeodeltaLayout::shrunk());
    const auto cross = geodelta_crosscheck(inst, 24);
    EXPECT_TRUE(cross.mismatches.empty()) << (cross.mismatches.empty() ? "" : cross.mismatches.front());
    EXPECT_EQ(cross.sides_without_plan, 0);
    EXPECT_GT(cross.sides_compared, 0);
  }
}

TEST(Geodelta, LayoutCheck) {
  EXPECT_NO_THROW(GeodeltaLayout::full().check());
  EXPECT_NO_THROW(GeodeltaLayout::shrunk().check());
  EXPECT_THROW((GeodeltaLayout{20, 100, 5, 10, 4}.check()), InputError);
}
