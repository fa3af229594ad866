#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcpc/solvers.hpp"

namespace vcpc {

/// Where a quality reference value came from.
enum class Provenance { Greedy, BruteForce, LongPt, Known };

std::string to_string(Provenance p);

/// Hitting set and TSP minimise positive costs (q = best/ref >= 1, lower is
/// better). Spin-glass energies are negative (q = best/ref <= 1, higher is better).
enum class Objective { PositiveCost, NegativeEnergy };

/// Quality of `value` against `reference`; rejects a zero reference, and for
/// NegativeEnergy any reference >= 0.
double quality(Objective obj, double value, double reference);

/// True when quality q satisfies target under the objective's direction.
bool meets_target(Objective obj, double q, double target);

/// First iteration at which the best-so-far trajectory meets `target`, or
/// nullopt when it never does.
std::optional<std::size_t> first_reaching(std::span<const TrajectoryPoint> trajectory, double reference,
                                          double target, Objective obj);

struct TargetSummary {
  double target = 0.0;
  std::size_t runs = 0;
  std::size_t reached = 0;
  double mean_iterations = 0.0;  // over reaching runs only; NaN when none reached
  double std_iterations = 0.0;   // sample std over reaching runs; NaN below two

  double not_reached_fraction() const;
};

/// Aggregates per-run first-hit iterations for one target.
TargetSummary summarise_hits(double target, std::span<const std::optional<std::size_t>> hits);

struct QualityCurve {
  double reference = 0.0;
  Provenance provenance = Provenance::Greedy;
  Objective objective = Objective::PositiveCost;
  std::vector<std::vector<std::optional<std::size_t>>> per_run;  // [run][target]
  std::vector<TargetSummary> targets;
};

/// Iterations-to-quality for several runs sharing one reference.
QualityCurve iterations_to_quality(std::span<const std::vector<TrajectoryPoint>> runs, double reference,
                                   Provenance provenance, std::span<const double> targets, Objective obj);

/// Single-run convenience overload.
QualityCurve iterations_to_quality(std::span<const TrajectoryPoint> trajectory, double reference,
                                   Provenance provenance, std::span<const double> targets, Objective obj);

inline constexpr double kDefaultOverheadCycles = 10.0;

struct TtsEstimate {
  double adjusted_iterations = 0.0;
  std::size_t n = 0;
  double frequency_hz = 0.0;
  double overhead_cycles = kDefaultOverheadCycles;
  double cycles_per_iteration = 0.0;
  double seconds = 0.0;
};

/// adjusted_iters * (log2 N + overhead) / f. All arguments must be positive
/// (overhead may be zero).
TtsEstimate estimate_tts(double adjusted_iterations, std::size_t n, double frequency_hz,
                         double overhead_cycles = kDefaultOverheadCycles);

/// Iterations divided by the average group size of the plan.
double group_adjusted_iterations(double iterations, double avg_group_size);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
};

MeanStd mean_std(std::span<const double> values);

}  // namespace vcpc
