#include "vcpc/analysis.hpp"

#include <cmath>
#include <limits>

#include "vcpc/error.hpp"

namespace vcpc {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Greedy: return "greedy";
    case Provenance::BruteForce: return "brute-force";
    case Provenance::LongPt: return "long-PT";
    case Provenance::Known: return "known-optimum";
  }
  return "unknown";
}

double quality(Objective obj, double value, double reference) {
  if (reference == 0.0) throw ScoringError("zero reference value");
  if (obj == Objective::NegativeEnergy && reference > 0.0)
    throw ScoringError("energy reference must be negative");
  return value / reference;
}

bool meets_target(Objective obj, double q, double target) {
  return obj == Objective::PositiveCost ? q <= target : q >= target;
}

std::optional<std::size_t> first_reaching(std::span<const TrajectoryPoint> trajectory, double reference,
                                          double target, Objective obj) {
  for (const auto& p : trajectory)
    if (std::isfinite(p.best_energy) && meets_target(obj, quality(obj, p.best_energy, reference), target))
      return p.iteration;
  return std::nullopt;
}

double TargetSummary::not_reached_fraction() const {
  return runs == 0 ? 0.0 : static_cast<double>(runs - reached) / static_cast<double>(runs);
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

TargetSummary summarise_hits(double target, std::span<const std::optional<std::size_t>> hits) {
  TargetSummary s;
  s.target = target;
  s.runs = hits.size();
  std::vector<double> reached;
  for (const auto& h : hits)
    if (h) reached.push_back(static_cast<double>(*h));
  s.reached = reached.size();
  const auto ms = mean_std(reached);
  s.mean_iterations = ms.mean;
  s.std_iterations = reached.size() < 2 ? std::numeric_limits<double>::quiet_NaN() : ms.std;
  return s;
}

QualityCurve iterations_to_quality(std::span<const std::vector<TrajectoryPoint>> runs, double reference,
                                   Provenance provenance, std::span<const double> targets, Objective obj) {
  quality(obj, reference, reference);  // validates the reference
  QualityCurve curve;
  curve.reference = reference;
  curve.provenance = provenance;
  curve.objective = obj;
  for (const auto& run : runs) {
    auto& row = curve.per_run.emplace_back();
    for (double t : targets) row.push_back(first_reaching(run, reference, t, obj));
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::vector<std::optional<std::size_t>> hits;
    for (const auto& row : curve.per_run) hits.push_back(row[t]);
    curve.targets.push_back(summarise_hits(targets[t], hits));
  }
  return curve;
}

QualityCurve iterations_to_quality(std::span<const TrajectoryPoint> trajectory, double reference,
                                   Provenance provenance, std::span<const double> targets, Objective obj) {
  const std::vector<std::vector<TrajectoryPoint>> runs{{trajectory.begin(), trajectory.end()}};
  return iterations_to_quality(runs, reference, provenance, targets, obj);
}

TtsEstimate estimate_tts(double adjusted_iterations, std::size_t n, double frequency_hz, double overhead_cycles) {
  if (!(adjusted_iterations > 0.0)) throw DomainError("adjusted iterations must be positive");
  if (n == 0) throw DomainError("N must be positive");
  if (!(frequency_hz > 0.0)) throw DomainError("clock frequency must be positive");
  if (!(overhead_cycles >= 0.0)) throw DomainError("overhead cycles must be non-negative");
  TtsEstimate est;
  est.adjusted_iterations = adjusted_iterations;
  est.n = n;
  est.frequency_hz = frequency_hz;
  est.overhead_cycles = overhead_cycles;
  est.cycles_per_iteration = std::log2(static_cast<double>(n)) + overhead_cycles;
  est.seconds = adjusted_iterations * est.cycles_per_iteration / frequency_hz;
  return est;
}

double group_adjusted_iterations(double iterations, double avg_group_size) {
  if (!(avg_group_size > 0.0)) throw DomainError("average group size must be positive");
  return iterations / avg_group_size;
}

}  // namespace vcpc
