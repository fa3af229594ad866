#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "vcpc/energy_model.hpp"
#include "vcpc/error.hpp"
#include "vcpc/hitting_set.hpp"

using namespace vcpc;

namespace {

// 13 (1 - s0)(1 - s1) + 13 (1 - s1)(1 - s2) + 9 (s0 + s1 + s2), expanded by hand.
EnergyModel two_edge_model() {
  ModelBuilder b(3);
  b.add_constant(26);
  b.add_linear(0, -13 + 9).add_linear(1, -26 + 9).add_linear(2, -13 + 9);
  b.add_pair(0, 1, 13).add_pair(1, 2, 13);
  return std::move(b).build();
}

EnergyModel two_spin_qubo() {
  ModelBuilder b(2);
  b.add_pair(0, 1, -4).add_linear(0, 2).add_linear(1, 2);
  return std::move(b).build();
}

}  // namespace

TEST(EvalEnergy, HandExpandedHittingSet) {
  const auto m = two_edge_model();
  EXPECT_DOUBLE_EQ(eval_energy(m, State{0, 0, 0}), 26.0);
  EXPECT_DOUBLE_EQ(eval_energy(m, State{0, 1, 0}), 9.0);
}

TEST(EvalEnergy, MatchesLibraryEncoding) {
  Hypergraph h{3, {{0, 1}, {1, 2}}};
  const auto lib = encode_hitting_set(h, 13, 9);
  const auto hand = two_edge_model();
  for (std::uint64_t z = 0; z < 8; ++z) {
    const auto s = state_from_index(z, 3);
    EXPECT_DOUBLE_EQ(eval_energy(lib, s), eval_energy(hand, s));
  }
}

TEST(EvalEnergy, EmptyModelIsZero) {
  EnergyModel m(4);
  EXPECT_EQ(eval_energy(m, State{1, 0, 1, 1}), 0.0);
}

TEST(EvalEnergy, LengthMismatchThrows) {
  EXPECT_THROW(eval_energy(two_edge_model(), State{0, 1}), DimensionError);
}

TEST(EnergyModel, NormalisesTerms) {
  EnergyModel m(3, {{2.0, {1, 0}}, {3.0, {0, 1}}, {1.0, {2, 2}}, {0.0, {0, 2}}, {-1.0, {}}});
  EXPECT_EQ(m.num_terms(), 2u);
  EXPECT_DOUBLE_EQ(m.constant(), -1.0);
  EXPECT_EQ(m.max_order(), 2u);
  EXPECT_DOUBLE_EQ(eval_energy(m, State{1, 1, 1}), 5.0 + 1.0 - 1.0);
}

TEST(EnergyModel, CancellingTermsAreDropped) {
  EnergyModel m(2, {{2.0, {0, 1}}, {-2.0, {1, 0}}});
  EXPECT_EQ(m.num_terms(), 0u);
  EXPECT_EQ(m.incident_terms(0).size(), 0u);
}

TEST(EnergyModel, OutOfRangeVariableThrows) {
  EXPECT_THROW(EnergyModel(2, {{1.0, {0, 2}}}), IndexError);
}

TEST(UpdateDrive, SpecExamples) {
  EXPECT_DOUBLE_EQ(update_drive(two_edge_model(), State{0, 0, 0}, 1), 17.0);
  EXPECT_DOUBLE_EQ(update_drive(two_edge_model(), State{1, 0, 0}, 1), 4.0);
  EXPECT_DOUBLE_EQ(update_drive(two_spin_qubo(), State{0, 1}, 0), 2.0);
  EnergyModel isolated(3, {{1.0, {0, 1}}});
  EXPECT_EQ(update_drive(isolated, State{1, 1, 0}, 2), 0.0);
}

TEST(UpdateDrive, MatchesDifferenceOracleOnRandomHubos) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(10);
    const auto m = oracle::random_model(n, 5, 3 * n, rng);
    for (int probe = 0; probe < 10; ++probe) {
      const auto s = oracle::random_bits(n, rng);
      const auto k = static_cast<VarIndex>(rng.below(n));
      EXPECT_NEAR(update_drive(m, s, k), oracle::drive_by_difference(m, s, k), 1e-9);
    }
  }
}

TEST(UpdateDrive, IndexOutOfRangeThrows) {
  EXPECT_THROW(update_drive(two_spin_qubo(), State{0, 0}, 2), IndexError);
}

TEST(Pbit, SymmetricAndSaturating) {
  EXPECT_DOUBLE_EQ(logistic(0.0), 0.5);
  EXPECT_EQ(pbit_update(0.0, 3.0, 0.4999), 1);
  EXPECT_EQ(pbit_update(0.0, 3.0, 0.5), 0);
  EXPECT_EQ(pbit_update(100.0, 0.0, 0.4999), 1);
  EXPECT_EQ(pbit_update(100.0, 0.0, 0.5), 0);
  EXPECT_EQ(pbit_update(1e6, 1.0, 0.999999), 1);
  EXPECT_EQ(pbit_update(-1e6, 1.0, 0.0), 0);
  EXPECT_TRUE(std::isfinite(logistic(-1e308)));
  EXPECT_DOUBLE_EQ(logistic(1e308), 1.0);
}

TEST(Pbit, EmpiricalFrequencyMatchesLogistic) {
  Rng rng(3);
  const double drive = 0.7, beta = 1.3;
  int ones = 0;
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) ones += pbit_update(drive, beta, rng.uniform());
  EXPECT_NEAR(static_cast<double>(ones) / trials, logistic(beta * drive), 0.005);
}

TEST(ExactBoltzmann, SpecExamples) {
  EnergyModel m(1, {{1.0, {0}}});
  auto p = exact_boltzmann(m, 0.0);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
  p = exact_boltzmann(m, std::log(3.0));
  EXPECT_NEAR(p[0], 0.75, 1e-12);
  EXPECT_NEAR(p[1], 0.25, 1e-12);
  EnergyModel c(3, {{5.0, {}}});
  for (double v : exact_boltzmann(c, 2.0)) EXPECT_NEAR(v, 0.125, 1e-12);
}

TEST(ExactBoltzmann, CapacityLimit) {
  EXPECT_THROW(exact_boltzmann(EnergyModel(kMaxEnumerationVars + 1), 1.0), CapacityError);
}

TEST(ExactBoltzmann, LargeEnergiesStayNormalised) {
  EnergyModel m(2, {{1e4, {0}}, {-1e4, {1}}});
  const auto p = exact_boltzmann(m, 10.0);
  double total = 0;
  for (double v : p) total += v;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(p[2], 1.0, 1e-12);
}

TEST(HuboFile, RoundTrip) {
  Rng rng(5);
  const auto m = oracle::random_model(6, 4, 15, rng).shifted(2.5);
  std::stringstream ss;
  save_hubo(ss, m);
  const auto back = load_hubo(ss);
  ASSERT_EQ(back.num_vars(), m.num_vars());
  for (std::uint64_t z = 0; z < 64; ++z) {
    const auto s = state_from_index(z, 6);
    EXPECT_DOUBLE_EQ(eval_energy(back, s), eval_energy(m, s));
  }
}

TEST(HuboFile, RejectsGarbage) {
  std::stringstream bad("hubo 2\n1.0 0 5\n");
  EXPECT_THROW(load_hubo(bad), Error);
  std::stringstream nohdr("1.0 0\n");
  EXPECT_THROW(load_hubo(nohdr), Error);
}
