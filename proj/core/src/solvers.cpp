#include "vcpc/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vcpc/error.hpp"
#include "vcpc/parallel.hpp"

namespace vcpc {

void SaConfig::validate() const {
  if (!(beta_start <= beta_end)) throw ConfigError("SA requires beta_start <= beta_end");
  if (beta_start < 0.0) throw ConfigError("SA inverse temperatures must be non-negative");
  if (steps == 0 || iters_per_step == 0 || repeats == 0)
    throw ConfigError("SA steps, iters and repeats must all be >= 1");
  if (spacing == Spacing::Geometric && beta_start <= 0.0)
    throw ConfigError("geometric spacing needs beta_start > 0");
}

void PtConfig::validate() const {
  if (replicas < 2) throw ConfigError("PT requires at least 2 replicas");
  if (!(beta_start <= beta_end)) throw ConfigError("PT requires beta_start <= beta_end");
  if (beta_start < 0.0) throw ConfigError("PT inverse temperatures must be non-negative");
  if (iters == 0 || repeats == 0) throw ConfigError("PT iters and repeats must be >= 1");
  if (swap_interval == 0) throw ConfigError("PT swap interval must be >= 1");
  if (spacing == Spacing::Geometric && beta_start <= 0.0)
    throw ConfigError("geometric spacing needs beta_start > 0");
}

std::vector<double> linear_schedule(double start, double end, std::size_t n) {
  if (n == 0) throw ConfigError("schedule length must be >= 1");
  std::vector<double> out(n, start);
  if (n == 1) return out;
  const double span = end - start;
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = start + span * static_cast<double>(i) / static_cast<double>(n - 1);
  out[n - 1] = end;
  return out;
}

std::vector<double> geometric_schedule(double start, double end, std::size_t n) {
  if (n == 0) throw ConfigError("schedule length must be >= 1");
  if (!(start > 0.0 && end > 0.0)) throw ConfigError("geometric schedule needs positive endpoints");
  std::vector<double> out(n, start);
  if (n == 1) return out;
  const double ratio = std::log(end / start);
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = start * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
  out[n - 1] = end;
  return out;
}

std::vector<double> make_schedule(double start, double end, std::size_t n, Spacing spacing) {
  return spacing == Spacing::Linear ? linear_schedule(start, end, n)
                                    : geometric_schedule(start, end, n);
}

double metropolis_swap_prob(double delta_beta, double delta_e) {
  const double x = delta_beta * delta_e;
  if (!(x < 0.0)) return 1.0;
  return std::exp(x);
}

double update_group(const EnergyModel& model, std::span<const VarIndex> group, double beta,
                    State& state, Rng& rng, std::vector<double>& scratch) {
  scratch.resize(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) scratch[i] = update_drive(model, state, group[i]);
  double delta = 0.0;
  for (std::size_t i = 0; i < group.size(); ++i) {
    const VarIndex v = group[i];
    const std::uint8_t next = pbit_update(scratch[i], beta, rng.uniform());
    if (next != state[v]) {
      // drive = E(0) - E(1)
      delta += next ? -scratch[i] : scratch[i];
      state[v] = next;
    }
  }
  return delta;
}

State random_state(const ClampMask& clamp, Rng& rng) {
  State s(clamp.size(), 0);
  for (std::size_t v = 0; v < s.size(); ++v) s[v] = rng.coin() ? 1 : 0;
  clamp.apply(s);
  return s;
}

double trajectory_value_at(std::span<const TrajectoryPoint> trajectory, std::size_t iteration) {
  if (trajectory.empty()) throw DomainError("empty trajectory");
  auto it = std::upper_bound(trajectory.begin(), trajectory.end(), iteration,
                             [](std::size_t t, const TrajectoryPoint& p) { return t < p.iteration; });
  if (it == trajectory.begin()) return std::numeric_limits<double>::infinity();
  return std::prev(it)->best_energy;
}

std::vector<TrajectoryPoint> merge_trajectories(std::span<const RepeatResult> repeats) {
  std::vector<TrajectoryPoint> all;
  for (const auto& r : repeats) all.insert(all.end(), r.trajectory.begin(), r.trajectory.end());
  std::stable_sort(all.begin(), all.end(), [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
    return a.iteration < b.iteration;
  });
  std::vector<TrajectoryPoint> out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size();) {
    const std::size_t it = all[i].iteration;
    double level = best;
    while (i < all.size() && all[i].iteration == it) level = std::min(level, all[i++].best_energy);
    if (level < best || out.empty()) {
      best = level;
      out.push_back({it, best});
    }
  }
  return out;
}

namespace {

void check_plan(const EnergyModel& model, const GroupPlan& plan) {
  if (plan.num_vars != model.num_vars() || plan.clamp.size() != model.num_vars())
    throw ConfigError("group plan was built for a different model");
  if (plan.groups.empty() && plan.clamp.num_free() > 0)
    throw ConfigError("empty group plan for a model with free variables");
}

std::size_t pick_group(const GroupPlan& plan, GroupSelection sel, std::size_t iteration, Rng& rng) {
  if (sel == GroupSelection::RoundRobin) return iteration % plan.groups.size();
  return static_cast<std::size_t>(rng.below(plan.groups.size()));
}

void record(RepeatResult& r, const State& s, double energy, std::size_t iteration) {
  if (energy < r.best_energy) {
    r.best_energy = energy;
    r.best_state = s;
    r.best_iteration = iteration;
    r.trajectory.push_back({iteration, energy});
  }
}

SolveResult assemble(std::vector<RepeatResult> repeats, const GroupPlan& plan, std::uint64_t seed,
                     std::size_t total_iterations) {
  SolveResult out;
  out.seed = seed;
  out.total_iterations = total_iterations;
  out.num_groups = plan.num_groups();
  out.avg_group_size = plan.avg_group_size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < repeats.size(); ++r)
    if (repeats[r].best_energy < repeats[best].best_energy) best = r;
  out.best_state = repeats[best].best_state;
  out.best_energy = repeats[best].best_energy;
  out.trajectory = merge_trajectories(repeats);
  out.repeats = std::move(repeats);
  return out;
}

}  // namespace

SolveResult run_sa(const EnergyModel& model, const GroupPlan& plan, const SaConfig& cfg,
                   const IterationObserver& observer) {
  cfg.validate();
  check_plan(model, plan);
  const auto betas = make_schedule(cfg.beta_start, cfg.beta_end, cfg.steps, cfg.spacing);
  std::vector<RepeatResult> repeats(cfg.repeats);

  parallel_for(cfg.repeats, cfg.threads, [&](std::size_t r) {
    RepeatResult& out = repeats[r];
    out.seed = derive_seed(cfg.seed, {r});
    Rng rng(out.seed);
    State state = random_state(plan.clamp, rng);
    double energy = eval_energy(model, state);
    out.best_state = state;
    out.best_energy = energy;
    out.trajectory.push_back({0, energy});
    std::vector<double> scratch;
    std::size_t iteration = 0;
    for (double beta : betas) {
      for (std::size_t i = 0; i < cfg.iters_per_step; ++i) {
        if (!plan.groups.empty()) {
          const auto g = pick_group(plan, cfg.selection, iteration, rng);
          energy += update_group(model, plan.groups[g], beta, state, rng, scratch);
        }
        ++iteration;
        record(out, state, energy, iteration);
        if (observer) observer(r, iteration, std::span<const State>(&state, 1));
      }
    }
  });
  return assemble(std::move(repeats), plan, cfg.seed, cfg.total_iterations());
}

SolveResult run_pt(const EnergyModel& model, const GroupPlan& plan, const PtConfig& cfg,
                   const IterationObserver& observer) {
  cfg.validate();
  check_plan(model, plan);
  const auto betas = make_schedule(cfg.beta_start, cfg.beta_end, cfg.replicas, cfg.spacing);
  std::vector<RepeatResult> repeats(cfg.repeats);

  parallel_for(cfg.repeats, cfg.threads, [&](std::size_t r) {
    RepeatResult& out = repeats[r];
    out.seed = derive_seed(cfg.seed, {r});
    Rng swap_rng(derive_seed(out.seed, {cfg.replicas}));
    std::vector<Rng> rngs;
    std::vector<State> states;
    std::vector<double> energies;
    rngs.reserve(cfg.replicas);
    for (std::size_t p = 0; p < cfg.replicas; ++p) {
      rngs.emplace_back(derive_seed(out.seed, {p}));
      states.push_back(random_state(plan.clamp, rngs.back()));
      energies.push_back(eval_energy(model, states.back()));
    }
    const auto lowest = std::min_element(energies.begin(), energies.end()) - energies.begin();
    out.best_state = states[lowest];
    out.best_energy = energies[lowest];
    out.trajectory.push_back({0, out.best_energy});

    std::vector<double> scratch;
    for (std::size_t iteration = 1; iteration <= cfg.iters; ++iteration) {
      if (!plan.groups.empty()) {
        for (std::size_t p = 0; p < cfg.replicas; ++p) {
          const auto g = pick_group(plan, cfg.selection, iteration - 1, rngs[p]);
          energies[p] += update_group(model, plan.groups[g], betas[p], states[p], rngs[p], scratch);
        }
      }
      if (iteration % cfg.swap_interval == 0) {
        for (std::size_t p = 0; p + 1 < cfg.replicas; ++p) {
          const double prob =
              metropolis_swap_prob(betas[p + 1] - betas[p], energies[p + 1] - energies[p]);
          if (swap_rng.uniform() < prob) {
            std::swap(states[p], states[p + 1]);
            std::swap(energies[p], energies[p + 1]);
            ++out.accepted_swaps;
          }
        }
      }
      for (std::size_t p = 0; p < cfg.replicas; ++p) record(out, states[p], energies[p], iteration);
      if (observer) observer(r, iteration, states);
    }
  });
  return assemble(std::move(repeats), plan, cfg.seed, cfg.iters);
}

}  // namespace vcpc
