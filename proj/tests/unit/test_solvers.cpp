#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "vcpc/colouring.hpp"
#include "vcpc/error.hpp"
#include "vcpc/solvers.hpp"

using namespace vcpc;

namespace {

EnergyModel ferro_pair() {
  ModelBuilder b(2);
  b.add_pair(0, 1, -4).add_linear(0, 2).add_linear(1, 2);
  return std::move(b).build();
}

}  // namespace

TEST(Schedule, Linear) {
  EXPECT_EQ(linear_schedule(0, 1, 3), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(linear_schedule(2, 2, 5), std::vector<double>(5, 2.0));
  EXPECT_EQ(linear_schedule(4, 9, 1), std::vector<double>{4});
  const auto s = linear_schedule(0.01, 1.1, 100);
  EXPECT_EQ(s.front(), 0.01);
  EXPECT_EQ(s.back(), 1.1);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_NEAR(s[i] - s[i - 1], 1.09 / 99, 1e-12);
  EXPECT_THROW(linear_schedule(0, 1, 0), ConfigError);
}

TEST(Schedule, Geometric) {
  const auto s = geometric_schedule(0.1, 10, 3);
  EXPECT_EQ(s.front(), 0.1);
  EXPECT_NEAR(s[1], 1.0, 1e-12);
  EXPECT_EQ(s.back(), 10.0);
  EXPECT_THROW(geometric_schedule(0, 1, 3), ConfigError);
}

TEST(SwapProb, Cases) {
  EXPECT_EQ(metropolis_swap_prob(0, 123), 1.0);
  EXPECT_NEAR(metropolis_swap_prob(1, -std::log(2.0)), 0.5, 1e-15);
  EXPECT_EQ(metropolis_swap_prob(0.5, 4), 1.0);
}

TEST(Configs, Validation) {
  SaConfig sa;
  sa.beta_start = 2;
  sa.beta_end = 1;
  EXPECT_THROW(sa.validate(), ConfigError);
  sa = {};
  sa.steps = 0;
  EXPECT_THROW(sa.validate(), ConfigError);
  PtConfig pt;
  pt.replicas = 1;
  EXPECT_THROW(pt.validate(), ConfigError);
  pt = {};
  pt.swap_interval = 0;
  EXPECT_THROW(pt.validate(), ConfigError);
}

TEST(UpdateGroup, UsesPreUpdateSnapshot) {
  // Anti-aligned pair: both want to flip towards the other, but within one
  // group both drives come from the same snapshot.
  ModelBuilder b(2);
  b.add_pair(0, 1, 10).add_linear(0, -6).add_linear(1, -6);
  const auto m = std::move(b).build();
  State s{0, 0};
  Rng rng(1);
  std::vector<double> scratch;
  const std::vector<VarIndex> group{0, 1};
  update_group(m, group, 1e6, s, rng, scratch);
  // Sequential updates would stop at (1, 0).
  EXPECT_EQ(s, (State{1, 1}));
}

TEST(UpdateGroup, EnergyDeltaIsExactForIndependentSets) {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto m = oracle::random_model(12, 3, 20, rng);
    const auto plan = plan_groups(m);
    State s = oracle::random_bits(12, rng);
    double e = eval_energy(m, s);
    std::vector<double> scratch;
    for (int it = 0; it < 50; ++it) {
      e += update_group(m, plan.groups[rng.below(plan.num_groups())], 0.7, s, rng, scratch);
      ASSERT_NEAR(e, eval_energy(m, s), 1e-9);
    }
  }
}

TEST(Sa, FindsFerromagneticGround) {
  const auto m = ferro_pair();
  SaConfig cfg;
  cfg.beta_start = 0.1;
  cfg.beta_end = 20;
  cfg.steps = 50;
  cfg.iters_per_step = 4;
  cfg.seed = 5;
  const auto r = run_sa(m, plan_groups(m), cfg);
  EXPECT_EQ(r.best_energy, 0.0);
  EXPECT_TRUE(r.best_state == (State{0, 0}) || r.best_state == (State{1, 1}));
}

TEST(Sa, AllClampedIsConstant) {
  const auto m = ferro_pair();
  ClampMask clamp(2);
  clamp.set(0, VarStatus::ClampedOne);
  clamp.set(1, VarStatus::ClampedZero);
  const auto plan = plan_groups(m, clamp);
  SaConfig cfg;
  cfg.steps = 10;
  const auto r = run_sa(m, plan, cfg);
  EXPECT_EQ(r.best_energy, 2.0);
  ASSERT_EQ(r.trajectory.size(), 1u);
  EXPECT_EQ(r.trajectory[0].best_energy, 2.0);
}

TEST(Sa, EmptyPlanWithFreeVarsThrows) {
  const auto m = ferro_pair();
  GroupPlan plan;
  plan.num_vars = 2;
  plan.clamp = ClampMask(2);
  EXPECT_THROW(run_sa(m, plan, SaConfig{}), ConfigError);
}

TEST(Sa, DeterministicAcrossThreadCounts) {
  Rng rng(2);
  const auto m = oracle::random_model(30, 3, 60, rng);
  const auto plan = plan_groups(m);
  SaConfig cfg;
  cfg.steps = 20;
  cfg.iters_per_step = 10;
  cfg.repeats = 6;
  cfg.seed = 99;
  const auto a = run_sa(m, plan, cfg);
  cfg.threads = 4;
  const auto b = run_sa(m, plan, cfg);
  EXPECT_EQ(a.best_state, b.best_state);
  ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    EXPECT_EQ(a.trajectory[i].iteration, b.trajectory[i].iteration);
    EXPECT_EQ(a.trajectory[i].best_energy, b.trajectory[i].best_energy);
  }
}

TEST(Sa, TrajectoryIsMonotoneAndConsistent) {
  Rng rng(12);
  const auto m = oracle::random_model(15, 3, 30, rng);
  SaConfig cfg;
  cfg.steps = 30;
  cfg.iters_per_step = 5;
  cfg.repeats = 3;
  const auto r = run_sa(m, plan_groups(m), cfg);
  for (const auto& rep : r.repeats) {
    EXPECT_EQ(rep.trajectory.front().iteration, 0u);
    for (std::size_t i = 1; i < rep.trajectory.size(); ++i)
      EXPECT_LT(rep.trajectory[i].best_energy, rep.trajectory[i - 1].best_energy);
    EXPECT_NEAR(eval_energy(m, rep.best_state), rep.best_energy, 1e-9);
  }
  EXPECT_EQ(r.trajectory.back().best_energy, r.best_energy);
  EXPECT_EQ(r.total_iterations, 150u);
}

TEST(Sa, ColdLimitFindsBruteForceMinimum) {
  Rng rng(31);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 4 + rng.below(9);
    const auto m = oracle::random_model(n, 3, 2 * n, rng);
    const auto truth = oracle::brute_force_min(m);
    SaConfig cfg;
    cfg.beta_start = 0.05;
    cfg.beta_end = 50;
    cfg.steps = 200;
    cfg.iters_per_step = 20;
    cfg.repeats = 4;
    cfg.seed = static_cast<std::uint64_t>(t);
    const auto r = run_sa(m, plan_groups(m), cfg);
    if (std::abs(r.best_energy - truth.energy) < 1e-9) ++hits;
  }
  EXPECT_GE(hits, 95);
}

TEST(Pt, IdenticalBetasAlwaysSwap) {
  const auto m = ferro_pair();
  PtConfig cfg;
  cfg.replicas = 2;
  cfg.beta_start = cfg.beta_end = 1.0;
  cfg.iters = 100;
  cfg.swap_interval = 10;
  const auto r = run_pt(m, plan_groups(m), cfg);
  EXPECT_EQ(r.repeats[0].accepted_swaps, 10u);
}

TEST(Pt, FindsGroundOnSmallModels) {
  Rng rng(44);
  for (int t = 0; t < 20; ++t) {
    const auto m = oracle::random_model(10, 3, 20, rng);
    PtConfig cfg;
    cfg.beta_start = 0.1;
    cfg.beta_end = 5;
    cfg.replicas = 8;
    cfg.iters = 2000;
    cfg.swap_interval = 10;
    cfg.seed = static_cast<std::uint64_t>(t);
    const auto r = run_pt(m, plan_groups(m), cfg);
    EXPECT_NEAR(r.best_energy, oracle::brute_force_min(m).energy, 1e-9);
  }
}

TEST(Pt, SamplesBoltzmannAtFixedBeta) {
  Rng rng(6);
  const auto m = oracle::random_model(4, 2, 6, rng);
  const double beta = 0.8;
  PtConfig cfg;
  cfg.replicas = 2;
  cfg.beta_start = cfg.beta_end = beta;
  cfg.iters = 200000;
  cfg.swap_interval = 50;
  std::vector<double> counts(16, 0.0);
  double total = 0;
  run_pt(m, plan_groups(m), cfg, [&](std::size_t, std::size_t, std::span<const State> reps) {
    for (const auto& s : reps) {
      std::size_t idx = 0;
      for (std::size_t v = 0; v < 4; ++v) idx |= static_cast<std::size_t>(s[v]) << v;
      counts[idx] += 1;
      total += 1;
    }
  });
  for (auto& c : counts) c /= total;
  EXPECT_LT(oracle::total_variation(counts, exact_boltzmann(m, beta)), 0.02);
}

TEST(Trajectory, ValueAtAndMerge) {
  std::vector<TrajectoryPoint> t{{0, 10}, {5, 6}, {9, 5}};
  EXPECT_EQ(trajectory_value_at(t, 0), 10);
  EXPECT_EQ(trajectory_value_at(t, 7), 6);
  EXPECT_EQ(trajectory_value_at(t, 100), 5);
  std::vector<RepeatResult> reps(2);
  reps[0].trajectory = {{0, 10}, {4, 3}};
  reps[1].trajectory = {{0, 8}, {2, 7}, {6, 1}};
  const auto merged = merge_trajectories(reps);
  ASSERT_EQ(merged.size(), 4u);
  EXPECT_EQ(merged[0].best_energy, 8);
  EXPECT_EQ(merged[1].iteration, 2u);
  EXPECT_EQ(merged[2].best_energy, 3);
  EXPECT_EQ(merged[3].best_energy, 1);
}
