#include <gtest/gtest.h>

#include "lry/examples.hpp"
#include "lry/sweep.hpp"

using namespace lry;

TEST(CheckProfile, ExampleHasNoViolations) {
  const auto check = check_profile(ValidProfile::make(example_two_gap_profile()));
  EXPECT_TRUE(check.violations.empty());
  EXPECT_GT(check.checks, 100u);
  ASSERT_TRUE(check.outcome.has_value());
  EXPECT_EQ(check.outcome->kind, OutcomeKind::CoinFlip);
}

TEST(RandomProfile, AlwaysValidAndWithinBounds) {
  Rng rng(11);
  std::uint64_t rejections = 0;
  for (int i = 0; i < 500; ++i) {
    const auto p = random_profile(rng, 12, &rejections);
    EXPECT_GE(p.n(), 1);
    EXPECT_LE(p.n(), 12);
    EXPECT_TRUE(validate_profile(p.raw()).ok());
  }
}

TEST(Sweep, SmallSweepIsClean) {
  const auto report = property_sweep(300, 12, 5);
  EXPECT_TRUE(report.clean());
  EXPECT_EQ(report.count, 300u);
  std::uint64_t total = 0;
  for (const auto& [kind, n] : report.outcomes) total += n;
  EXPECT_EQ(total, 300u);
}

TEST(Sweep, SameSeedSameReport) {
  const auto a = property_sweep(200, 10, 9);
  const auto b = property_sweep(200, 10, 9);
  EXPECT_EQ(a.checks, b.checks);
  EXPECT_EQ(a.rejections, b.rejections);
  EXPECT_EQ(a.outcomes, b.outcomes);
}

TEST(Sweep, RejectsBadParameters) {
  EXPECT_THROW(property_sweep(0, 10, 1), InputError);
  EXPECT_THROW(property_sweep(10, 1, 1), InputError);
}

TEST(Sweep, ExplicitProfiles) {
  const auto report = property_sweep(std::vector<ValidProfile>{ValidProfile::make(example_two_gap_profile())});
  EXPECT_TRUE(report.clean());
  EXPECT_EQ(report.outcomes.at("coin_flip"), 1u);
}

TEST(Sweep, InjectedViolationIsRecordedWithReproducer) {
  SweepReport report;
  ProfileCheck check;
  check.violations.push_back({"conservation", "synthetic"});
  SplitProfile big{5, std::vector<Ratio>(5, Ratio(31, 100))};
  SplitProfile small{1, {Ratio(3, 10)}};
  record(report, 0, check, big);
  record(report, 1, check, small);
  EXPECT_FALSE(report.clean());
  EXPECT_EQ(report.violations.size(), 2u);
  EXPECT_EQ(report.reproducers.at("conservation").profile.n, 1);
}
