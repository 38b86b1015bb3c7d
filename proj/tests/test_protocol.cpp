#include <gtest/gtest.h>

#include "lry/examples.hpp"
#include "lry/protocol.hpp"

using namespace lry;

namespace {
using P = Preference;

ValidProfile example() { return ValidProfile::make(example_two_gap_profile()); }

PreferenceTable table_of(std::initializer_list<PreferencePair> rows) { return {std::vector<PreferencePair>(rows)}; }

// Opposed preferences with a crossing at (k - 1, k) and nothing else.
PreferenceTable crossing_at(int n, int k) {
  PreferenceTable t;
  for (int i = 0; i <= n; ++i) t.entries.push_back(i < k ? PreferencePair{P::Option2, P::Option1} : PreferencePair{P::Option1, P::Option2});
  return t;
}
}  // namespace

TEST(Preferences, ExampleSwitchBetweenFiveAndSix) {
  const auto prefs = optimal_preferences(example());
  EXPECT_EQ(prefs.entries[5], (PreferencePair{P::Option2, P::Option1}));
  EXPECT_EQ(prefs.entries[6], (PreferencePair{P::Option1, P::Option2}));
}

TEST(Preferences, BoundaryRowsAreFixed) {
  const auto prefs = optimal_preferences(example());
  EXPECT_EQ(prefs.entries.front(), (PreferencePair{P::Option2, P::Option1}));
  EXPECT_EQ(prefs.entries.back(), (PreferencePair{P::Option1, P::Option2}));
}

TEST(Preferences, EqualTotalsMakeBothIndifferent) {
  // Two districts at 0.3 each: A(L_1) = A(R_1) = 0, so k = 1 is a tie for both.
  const auto p = ValidProfile::make(SplitProfile{2, {Ratio(3, 10), Ratio(3, 10)}});
  EXPECT_EQ(total_wins(p, Party::A, left(1)), total_wins(p, Party::A, right(1)));
  const auto prefs = optimal_preferences(p);
  EXPECT_EQ(prefs.entries[1], (PreferencePair{P::Indifferent, P::Indifferent}));
}

TEST(Classify, ExampleIsCoinFlipAtSix) {
  EXPECT_EQ(classify_outcome(optimal_preferences(example())), (Classification{OutcomeKind::CoinFlip, 6}));
}

TEST(Classify, AgreementWins) {
  auto t = crossing_at(5, 2);
  t.entries[3] = {P::Option1, P::Option1};
  EXPECT_EQ(classify_outcome(t), (Classification{OutcomeKind::Agreement, 3}));
}

TEST(Classify, DeferredAdoptsTheOtherPreference) {
  auto t = crossing_at(5, 4);
  t.entries[2] = {P::Indifferent, P::Option2};
  EXPECT_EQ(classify_outcome(t), (Classification{OutcomeKind::Deferred, 2}));
  SplitProfile s{5, {}};
  s.segments_a.assign(5, Ratio(31, 100));
  const auto run = resolve_protocol(ValidProfile::make(s), t, 0);
  ASSERT_EQ(run.candidates.size(), 1u);
  EXPECT_EQ(run.resolved().assignment, (Assignment{2, Option::Option2}));
}

TEST(Classify, AgreementTakesPrecedenceOverEarlierDeferral) {
  auto t = crossing_at(5, 5);
  t.entries[1] = {P::Indifferent, P::Option1};
  t.entries[4] = {P::Option2, P::Option2};
  EXPECT_EQ(classify_outcome(t).kind, OutcomeKind::Agreement);
}

TEST(Classify, NoRuleMatchesIsAViolation) {
  PreferenceTable t;
  t.entries.assign(4, {P::Option2, P::Option1});
  EXPECT_THROW(classify_outcome(t), ProtocolViolation);
  EXPECT_THROW(classify_outcome(table_of({{P::Option1, P::Option2}})), InputError);
}

TEST(Candidates, ExampleFourOptions) {
  const auto opts = coinflip_options(example(), 6);
  const int a[4] = {3, 4, 5, 2}, b[4] = {7, 6, 5, 8};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(opts[i].wins_a, a[i]) << i;
    EXPECT_EQ(opts[i].wins_b, b[i]) << i;
    EXPECT_EQ(opts[i].wins_a + opts[i].wins_b, 10);
  }
  EXPECT_EQ(opts[0].assignment, (Assignment{5, Option::Option1}));
  EXPECT_EQ(opts[3].assignment, (Assignment{6, Option::Option2}));
  EXPECT_THROW(coinflip_options(example(), 0), std::out_of_range);
}

TEST(Resolve, SeedSelectsCandidate) {
  const auto p = example();
  const auto prefs = optimal_preferences(p);
  const int a[4] = {3, 4, 5, 2};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto run = resolve_protocol(p, prefs, seed);
    EXPECT_EQ(run.chosen, seed % 4);
    EXPECT_EQ(run.resolved().wins_a, a[seed % 4]);
    EXPECT_EQ(run.seed, seed);
  }
  EXPECT_EQ(resolve_protocol(p, prefs, 3).resolved().wins_b, 8);
  EXPECT_EQ(resolve_protocol(p, prefs, 2).resolved().wins_b, 5);
}

TEST(Resolve, BothIndifferentUsesParity) {
  const auto p = ValidProfile::make(SplitProfile{2, {Ratio(3, 10), Ratio(3, 10)}});
  const auto prefs = optimal_preferences(p);
  EXPECT_EQ(classify_outcome(prefs), (Classification{OutcomeKind::BothIndifferent, 1}));
  EXPECT_EQ(resolve_protocol(p, prefs, 4).resolved().assignment.option, Option::Option1);
  EXPECT_EQ(resolve_protocol(p, prefs, 5).resolved().assignment.option, Option::Option2);
}

TEST(Resolve, TableSizeMustMatch) {
  EXPECT_THROW(resolve_protocol(example(), crossing_at(4, 2), 0), InputError);
}

TEST(Fairness, ExampleWorstCandidateIsTight) {
  const auto p = example();
  const auto run = resolve_protocol(p, optimal_preferences(p), 3);
  const auto f = fairness_report(p, run);
  const auto& a = f.of(Party::A);
  EXPECT_EQ(a.wins, 2);
  EXPECT_EQ(a.geo.value(), Ratio(4));
  EXPECT_EQ(a.delta_geo, Ratio(2));
  EXPECT_EQ(a.delta_geo_k, Ratio(3, 2));
  EXPECT_EQ(a.max_delta_geo, Ratio(2));
  EXPECT_EQ(a.min_delta_geo, Ratio(-1));
  EXPECT_TRUE(f.all_bounds_hold());
}

TEST(Fairness, MismatchedRunIsRejected) {
  const auto p = example();
  auto run = resolve_protocol(p, optimal_preferences(p), 0);
  run.candidates[0].wins_a += 1;
  EXPECT_THROW(fairness_report(p, run), InputError);
}
