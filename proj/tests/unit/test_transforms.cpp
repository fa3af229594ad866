#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vcpc/error.hpp"
#include "vcpc/hitting_set.hpp"
#include "vcpc/spinglass.hpp"
#include "vcpc/transforms.hpp"

using namespace vcpc;

namespace {

IsingInstance complete(std::size_t n, double w = 1.0) {
  std::vector<IsingInstance::Coupling> c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.push_back({static_cast<VarIndex>(i), static_cast<VarIndex>(j), w});
  return IsingInstance::make(n, c);
}

}  // namespace

TEST(Rosenberg, EightCases) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int y = 0; y < 2; ++y) {
        const double p = rosenberg_penalty(a, b, y);
        if (y == a * b)
          EXPECT_EQ(p, 0.0);
        else
          EXPECT_GE(p, 1.0);
      }
}

TEST(Quadratise, AuxCounts) {
  EXPECT_EQ(quadratise(EnergyModel(3, {{1.0, {0, 1, 2}}})).aux_count(), 1u);
  EXPECT_EQ(quadratise(EnergyModel(5, {{1.0, {0, 1, 2, 3, 4}}})).aux_count(), 3u);
  EXPECT_EQ(quadratise(EnergyModel(3, {{1.0, {0, 1}}})).aux_count(), 0u);
  // {0,1,2} and {0,1,3} share the (0,1) product.
  const auto shared = quadratise(EnergyModel(4, {{1.0, {0, 1, 2}}, {-2.0, {0, 1, 3}}}));
  EXPECT_EQ(shared.aux_count(), 1u);
  EXPECT_LE(shared.model.max_order(), 2u);
}

TEST(Quadratise, RejectsNonPositiveStrength) {
  EnergyModel m(3, {{1.0, {0, 1, 2}}});
  EXPECT_THROW(quadratise(m, 0.0), DomainError);
  EXPECT_THROW(quadratise(m, -1.0), DomainError);
  EXPECT_EQ(quadratise(m, 4.0).strengths, std::vector<double>{4.0});
}

TEST(Quadratise, ConsistentExtensionPreservesEnergy) {
  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const auto m = oracle::random_model(n, 5, 2 * n, rng);
    const auto q = quadratise(m);
    EXPECT_LE(q.model.max_order(), 2u);
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
      const auto s = state_from_index(z, n);
      const auto ext = extend_state(q, s);
      ASSERT_NEAR(eval_energy(q.model, ext), eval_energy(m, s), 1e-9);
      ASSERT_EQ(project_state(q, ext), s);
    }
  }
}

TEST(Quadratise, MinimaProjectToOriginalMinima) {
  Rng rng(7);
  int checked = 0;
  while (checked < 50) {
    const std::size_t n = 3 + rng.below(8);
    const auto m = oracle::random_model(n, 4, 2 * n, rng);
    const auto q = quadratise(m);
    if (q.model.num_vars() > 20) continue;
    const auto hubo = oracle::brute_force_min(m);
    const auto quad = oracle::brute_force_min(q.model);
    EXPECT_NEAR(quad.energy, hubo.energy, 1e-9);
    for (const auto& s : quad.argmins) EXPECT_NEAR(eval_energy(m, project_state(q, s)), hubo.energy, 1e-9);
    ++checked;
  }
}

TEST(Quadratise, HittingSetGrowth) {
  const auto h = gen_hypergraph(100, 100, 5, 1);
  const auto q = quadratise(encode_hitting_set(h));
  EXPECT_GT(q.model.num_vars(), 200u);
}

TEST(QuboToIsing, RoundTripEnergies) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto q = oracle::random_qubo(8, 0.6, rng);
    const auto form = qubo_to_ising(q);
    for (std::uint64_t z = 0; z < 256; ++z) {
      const auto s = state_from_index(z, 8);
      ASSERT_NEAR(ising_energy(form.ising, s) + form.offset, eval_energy(q, s), 1e-9);
    }
  }
  EXPECT_THROW(qubo_to_ising(EnergyModel(3, {{1.0, {0, 1, 2}}})), DomainError);
}

TEST(Sparsify, CopiesNeeded) {
  EXPECT_EQ(copies_needed(3, 3), 1u);
  EXPECT_EQ(copies_needed(4, 3), 2u);
  EXPECT_EQ(copies_needed(10, 4), 4u);
  EXPECT_EQ(copies_needed(99, 9), 14u);
}

TEST(Sparsify, CompleteFiveBudgetThree) {
  const auto k5 = complete(5);
  const auto sg = sparsify(k5, 3);
  EXPECT_EQ(sg.num_physical(), 10u);
  EXPECT_EQ(max_degree(sg.physical), 3u);
  const auto gm = growth_metrics(k5, sg.physical);
  EXPECT_DOUBLE_EQ(gm.r_n, 2.0);
  EXPECT_DOUBLE_EQ(gm.r_s, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(gm.m_original, 1.0);
}

TEST(Sparsify, WithinBudgetIsIdentity) {
  const auto g = gen_er({30, 0.1}, 2);
  const auto sg = sparsify(g, max_degree(g) + 1);
  EXPECT_EQ(sg.num_physical(), g.n);
  const auto gm = growth_metrics(g, sg.physical);
  EXPECT_DOUBLE_EQ(gm.r_n, 1.0);
  EXPECT_DOUBLE_EQ(gm.r_s, 1.0);
  EXPECT_DOUBLE_EQ(gm.m_new, gm.m_original);
}

TEST(Sparsify, DegreeBudgetAndChains) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_er({40, 0.4}, seed);
    for (std::size_t k = 3; k <= 10; ++k) {
      const auto sg = sparsify(g, k);
      EXPECT_LE(max_degree(sg.physical), k);
      std::size_t total = 0;
      for (const auto& chain : sg.chains) {
        total += chain.size();
        for (std::size_t c = 0; c + 1 < chain.size(); ++c) {
          bool linked = false;
          for (const auto& e : sg.physical.couplings)
            if (std::min(e.i, e.j) == std::min(chain[c], chain[c + 1]) &&
                std::max(e.i, e.j) == std::max(chain[c], chain[c + 1]) && e.weight == sg.lambda)
              linked = true;
          EXPECT_TRUE(linked);
        }
      }
      EXPECT_EQ(total, sg.num_physical());
      EXPECT_EQ(sg.physical.num_edges(), g.num_edges() + (sg.num_physical() - g.n));
    }
  }
}

TEST(Sparsify, LandmarkDenseEr) {
  const auto g = gen_er({100, 1.0}, 1);
  EXPECT_GT(sparsify(g, 9).num_physical(), 1000u);
}

TEST(Sparsify, StrongChainsPreserveGroundStates) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 20; ++seed) {
    const auto g = gen_er({6 + seed % 5, 0.7}, seed);
    double total = 0;
    for (const auto& c : g.couplings) total += std::abs(c.weight);
    const auto sg = sparsify(g, 3, 2 * total);
    if (sg.num_physical() > 22 || g.num_edges() == 0) continue;
    const auto truth = oracle::ising_ground_energy(g);
    const auto phys = oracle::brute_force_min(ising_to_qubo(sg.physical));
    for (const auto& s : phys.argmins) {
      EXPECT_TRUE(chains_consistent(sg, s));
      EXPECT_DOUBLE_EQ(ising_energy(g, logical_state(sg, s)), truth);
    }
    ++checked;
  }
}

TEST(Sparsify, Errors) {
  const auto g = complete(5);
  EXPECT_THROW(sparsify(g, 2), DomainError);
  EXPECT_THROW(sparsify(g, 3, 0.0), DomainError);
}

TEST(Sparsify, LambdaDefaults) {
  const auto g = complete(5, -2.0);
  EXPECT_DOUBLE_EQ(default_lambda(g, 4), 2 * 2.0 * 3);
  EXPECT_DOUBLE_EQ(safe_lambda(g), 1 + 8.0);
}

TEST(Density, ErMatchesP) {
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) sum += graph_density(gen_er({60, 0.3}, seed));
  const double pairs = 60.0 * 59.0 / 2.0;
  EXPECT_NEAR(sum / 100, 0.3, 4 * std::sqrt(0.3 * 0.7 / (100 * pairs)));
  EXPECT_DOUBLE_EQ(graph_density(complete(6)), 1.0);
}

TEST(Sweep, MonotoneInBudget) {
  const auto g = gen_er({50, 0.5}, 4);
  const std::size_t budgets[] = {3, 4, 6, 8, 12, 20, 60};
  const auto pts = sparsify_sweep(g, budgets);
  ASSERT_EQ(pts.size(), 7u);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_LE(pts[i].physical_nodes, pts[i - 1].physical_nodes);
    EXPECT_LE(pts[i].r_s, pts[i - 1].r_s);
  }
  EXPECT_DOUBLE_EQ(pts.back().r_n, 1.0);
  EXPECT_DOUBLE_EQ(pts.back().r_s, 1.0);
}
