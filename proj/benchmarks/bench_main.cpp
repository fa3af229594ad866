#include <benchmark/benchmark.h>

#include "vcpc/colouring.hpp"
#include "vcpc/hitting_set.hpp"
#include "vcpc/solvers.hpp"
#include "vcpc/spinglass.hpp"
#include "vcpc/tsp.hpp"

namespace {

using namespace vcpc;

EnergyModel hs_model(std::size_t n) { return encode_hitting_set(gen_hypergraph(n, n, 5, 1)); }

void BM_UpdateDriveHubo(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto model = hs_model(n);
  Rng rng(2);
  State s(n);
  for (auto& b : s) b = rng.coin();
  VarIndex v = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(update_drive(model, s, v));
    v = static_cast<VarIndex>((v + 1) % n);
  }
}
BENCHMARK(BM_UpdateDriveHubo)->Arg(100)->Arg(1000);

void BM_UpdateDriveDenseQubo(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto model = ising_to_qubo(gen_er({n, 1.0}, 3));
  Rng rng(4);
  State s(n);
  for (auto& b : s) b = rng.coin();
  VarIndex v = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(update_drive(model, s, v));
    v = static_cast<VarIndex>((v + 1) % n);
  }
}
BENCHMARK(BM_UpdateDriveDenseQubo)->Arg(100)->Arg(1000);

// One SA iteration updates a whole independent group.
void BM_SaGroupIteration(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto model = hs_model(n);
  const auto plan = plan_groups(model);
  Rng rng(5);
  State s = random_state(plan.clamp, rng);
  std::vector<double> scratch;
  std::size_t g = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(update_group(model, plan.groups[g], 1.0, s, rng, scratch));
    g = (g + 1) % plan.groups.size();
  }
  st.counters["groups"] = static_cast<double>(plan.num_groups());
}
BENCHMARK(BM_SaGroupIteration)->Arg(100)->Arg(1000);

void BM_ColourHittingSet(benchmark::State& st) {
  const auto model = hs_model(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(plan_groups(model).num_groups());
}
BENCHMARK(BM_ColourHittingSet)->Arg(200)->Arg(1000);

void BM_ColourTsp(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::vector<Point> pts;
  Rng rng(6);
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform() * 1000, rng.uniform() * 1000});
  const auto enc = encode_tsp(TspInstance::from_points("bench", EdgeWeightType::Euc2D, pts), 1000);
  for (auto _ : st) benchmark::DoNotOptimize(plan_groups(enc.model, enc.clamp).num_groups());
}
BENCHMARK(BM_ColourTsp)->Arg(14)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
