#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vcpc/colouring.hpp"
#include "vcpc/energy_model.hpp"
#include "vcpc/rng.hpp"

namespace vcpc {

enum class Spacing { Linear, Geometric };
enum class GroupSelection { Random, RoundRobin };

/// Simulated annealing: `steps` inverse temperatures from beta_start to
/// beta_end, `iters_per_step` group updates at each. Total iterations = I * S.
struct SaConfig {
  double beta_start = 0.01;
  double beta_end = 1.1;
  std::size_t steps = 100;
  std::size_t iters_per_step = 1;
  std::size_t repeats = 1;
  std::uint64_t seed = 0;
  Spacing spacing = Spacing::Linear;
  GroupSelection selection = GroupSelection::Random;
  std::size_t threads = 1;

  std::size_t total_iterations() const { return steps * iters_per_step; }
  void validate() const;
};

/// Parallel tempering over `replicas` fixed inverse temperatures spread on
/// [beta_start, beta_end]. One iteration updates one group in every replica;
/// adjacent pairs are offered an exchange every `swap_interval` iterations.
struct PtConfig {
  double beta_start = 0.5;
  double beta_end = 10.0;
  std::size_t replicas = 20;
  std::size_t iters = 1000;
  std::size_t swap_interval = 25;
  std::size_t repeats = 1;
  std::uint64_t seed = 0;
  Spacing spacing = Spacing::Linear;
  GroupSelection selection = GroupSelection::Random;
  std::size_t threads = 1;

  void validate() const;
};

struct TrajectoryPoint {
  std::size_t iteration = 0;
  double best_energy = 0.0;
};

struct RepeatResult {
  State best_state;
  double best_energy = 0.0;
  std::size_t best_iteration = 0;
  std::vector<TrajectoryPoint> trajectory;  // change points, starting at iteration 0
  std::uint64_t seed = 0;
  std::size_t accepted_swaps = 0;
};

struct SolveResult {
  State best_state;
  double best_energy = 0.0;
  /// Best energy over all repeats so far, as change points. Repeats are
  /// treated as running side by side, so iteration t pools every repeat's
  /// first t iterations.
  std::vector<TrajectoryPoint> trajectory;
  std::vector<RepeatResult> repeats;
  std::uint64_t seed = 0;
  std::size_t total_iterations = 0;
  std::size_t num_groups = 0;
  double avg_group_size = 0.0;
};

/// Called after every iteration with the replica states (one for SA).
using IterationObserver =
    std::function<void(std::size_t repeat, std::size_t iteration, std::span<const State> replicas)>;

/// n evenly spaced values; first = start, last = end, n = 1 gives {start}.
std::vector<double> linear_schedule(double start, double end, std::size_t n);
/// n geometrically spaced values; both endpoints must be positive.
std::vector<double> geometric_schedule(double start, double end, std::size_t n);
std::vector<double> make_schedule(double start, double end, std::size_t n, Spacing spacing);

/// min{1, exp(delta_beta * delta_e)}.
double metropolis_swap_prob(double delta_beta, double delta_e);

/// Updates every member of `group` from the same pre-update snapshot:
/// drives are all computed before any member is written. Returns the energy change.
double update_group(const EnergyModel& model, std::span<const VarIndex> group, double beta,
                    State& state, Rng& rng, std::vector<double>& scratch);

/// Random initial state with clamped variables applied.
State random_state(const ClampMask& clamp, Rng& rng);

SolveResult run_sa(const EnergyModel& model, const GroupPlan& plan, const SaConfig& cfg,
                   const IterationObserver& observer = {});

SolveResult run_pt(const EnergyModel& model, const GroupPlan& plan, const PtConfig& cfg,
                   const IterationObserver& observer = {});

/// Best-so-far value at `iteration` from change-point form.
double trajectory_value_at(std::span<const TrajectoryPoint> trajectory, std::size_t iteration);

/// Pools per-repeat trajectories into the best-over-repeats curve.
std::vector<TrajectoryPoint> merge_trajectories(std::span<const RepeatResult> repeats);

}  // namespace vcpc
