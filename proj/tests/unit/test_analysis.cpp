#include <gtest/gtest.h>

#include <cmath>

#include "vcpc/analysis.hpp"
#include "vcpc/error.hpp"

using namespace vcpc;

TEST(Quality, DirectionsAndErrors) {
  EXPECT_DOUBLE_EQ(quality(Objective::PositiveCost, 6, 5), 1.2);
  EXPECT_DOUBLE_EQ(quality(Objective::NegativeEnergy, -80, -100), 0.8);
  EXPECT_THROW(quality(Objective::PositiveCost, 1, 0), ScoringError);
  EXPECT_THROW(quality(Objective::NegativeEnergy, -1, 0), ScoringError);
  EXPECT_THROW(quality(Objective::NegativeEnergy, -1, 2), ScoringError);
  EXPECT_TRUE(meets_target(Objective::PositiveCost, 1.2, 1.2));
  EXPECT_FALSE(meets_target(Objective::PositiveCost, 1.21, 1.2));
  EXPECT_TRUE(meets_target(Objective::NegativeEnergy, 0.8, 0.8));
  EXPECT_FALSE(meets_target(Objective::NegativeEnergy, 0.79, 0.8));
}

TEST(FirstReaching, Examples) {
  const std::vector<TrajectoryPoint> t{{1, 10}, {5, 6}, {9, 5}};
  EXPECT_EQ(first_reaching(t, 5, 1.2, Objective::PositiveCost), 5u);
  EXPECT_EQ(first_reaching(t, 5, 1.0, Objective::PositiveCost), 9u);
  EXPECT_FALSE(first_reaching(t, 5, 0.9, Objective::PositiveCost).has_value());
  const std::vector<TrajectoryPoint> sg{{0, -10}, {300, -80}, {900, -95}};
  EXPECT_EQ(first_reaching(sg, -100, 0.8, Objective::NegativeEnergy), 300u);
  EXPECT_EQ(first_reaching(sg, -100, 0.9, Objective::NegativeEnergy), 900u);
}

TEST(FirstReaching, MonotoneInLeniency) {
  const std::vector<TrajectoryPoint> t{{0, 40}, {3, 20}, {8, 14}, {20, 12}, {50, 11}};
  std::size_t last = 0;
  for (double q = 1.0; q <= 4.0; q += 0.05) {
    const auto hit = first_reaching(t, 10, q, Objective::PositiveCost);
    if (!hit) continue;
    if (last) EXPECT_LE(*hit, last);
    last = *hit;
  }
}

TEST(Summaries, CensoredMean) {
  const std::vector<std::optional<std::size_t>> hits{10, std::nullopt, 20, 30};
  const auto s = summarise_hits(0.8, hits);
  EXPECT_EQ(s.runs, 4u);
  EXPECT_EQ(s.reached, 3u);
  EXPECT_DOUBLE_EQ(s.mean_iterations, 20);
  EXPECT_DOUBLE_EQ(s.std_iterations, 10);
  EXPECT_DOUBLE_EQ(s.not_reached_fraction(), 0.25);
  const std::vector<std::optional<std::size_t>> none{std::nullopt};
  EXPECT_TRUE(std::isnan(summarise_hits(0.8, none).mean_iterations));
}

TEST(Curve, MultiRun) {
  const std::vector<std::vector<TrajectoryPoint>> runs{{{0, 10}, {4, 5}}, {{0, 7}, {8, 6}}};
  const double targets[] = {1.2, 1.0};
  const auto c = iterations_to_quality(runs, 5, Provenance::Greedy, targets, Objective::PositiveCost);
  ASSERT_EQ(c.targets.size(), 2u);
  EXPECT_EQ(c.targets[0].reached, 2u);
  EXPECT_DOUBLE_EQ(c.targets[0].mean_iterations, 6);
  EXPECT_EQ(c.targets[1].reached, 1u);
  EXPECT_EQ(c.per_run[1][1], std::nullopt);
  EXPECT_EQ(c.provenance, Provenance::Greedy);
}

TEST(Tts, Landmark) {
  const auto t = estimate_tts(2000, 1024, 2.7e9, 10);
  EXPECT_NEAR(t.seconds, 1.48e-5, 0.01e-5);
  EXPECT_DOUBLE_EQ(t.cycles_per_iteration, 20);
  EXPECT_DOUBLE_EQ(estimate_tts(5, 2, 5, 0).seconds, 1.0);
  EXPECT_LT(estimate_tts(2000, 1024, 1e300).seconds, 1e-290);
}

TEST(Tts, Linearity) {
  const double base = estimate_tts(1000, 512, 1e9).seconds;
  EXPECT_DOUBLE_EQ(estimate_tts(3000, 512, 1e9).seconds, 3 * base);
  EXPECT_DOUBLE_EQ(estimate_tts(1000, 512, 4e9).seconds, base / 4);
}

TEST(Tts, Errors) {
  EXPECT_THROW(estimate_tts(0, 10, 1e9), DomainError);
  EXPECT_THROW(estimate_tts(1, 0, 1e9), DomainError);
  EXPECT_THROW(estimate_tts(1, 10, 0), DomainError);
  EXPECT_THROW(estimate_tts(1, 10, 1e9, -1), DomainError);
  EXPECT_DOUBLE_EQ(group_adjusted_iterations(100, 4), 25);
  EXPECT_THROW(group_adjusted_iterations(100, 0), DomainError);
}

TEST(MeanStd, Sample) {
  const double v[] = {1, 2, 3, 4};
  const auto ms = mean_std(v);
  EXPECT_DOUBLE_EQ(ms.mean, 2.5);
  EXPECT_NEAR(ms.std, std::sqrt(5.0 / 3.0), 1e-12);
  const double one[] = {7};
  EXPECT_EQ(mean_std(one).std, 0.0);
}

TEST(Provenance, Names) {
  EXPECT_EQ(to_string(Provenance::BruteForce), "brute-force");
  EXPECT_EQ(to_string(Provenance::LongPt), "long-PT");
}
