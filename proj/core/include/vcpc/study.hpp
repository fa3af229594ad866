#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vcpc/analysis.hpp"
#include "vcpc/config.hpp"
#include "vcpc/hitting_set.hpp"
#include "vcpc/solvers.hpp"
#include "vcpc/tsp.hpp"

namespace vcpc {

// ---- Experiment building blocks (shared by studies, tests and the CLI) ----

/// SA config whose total budget is `iters_per_var * num_vars` group
/// iterations spread over base.steps steps (at least one per step).
SaConfig budgeted_sa(const SaConfig& base, std::size_t num_vars, double iters_per_var);

struct HsOutcome {
  HittingSetSolution cover;       // repaired best state
  bool raw_valid = false;         // best state was already a cover
  double q = 0.0;                 // |cover| / |reference|
  std::vector<TrajectoryPoint> cover_bound;  // pooled best energy / B, an upper bound on the repaired size
  std::size_t num_groups = 0;
};

/// Solves `model` (the hitting-set HUBO or any extension of it whose first
/// h.num_vertices variables are the vertices) and scores it against `reference`.
HsOutcome solve_hitting_set(const Hypergraph& h, const EnergyModel& model, const GroupPlan& plan,
                            const SaConfig& sa, double b, const HittingSetSolution& reference);

enum class TspMethod { SA, PT, SaKmc, PtKmc };

std::string to_string(TspMethod m);
TspMethod parse_tsp_method(const std::string& text);

struct TspBenchParams {
  std::vector<std::size_t> cluster_sizes;  // K_1 > ... > K_m
  std::vector<double> penalties;           // A_0, A_1 ... A_m
  double b = 1.0;
  SaConfig sa;
  PtConfig pt;
};

/// Table-style TSP settings: beta 1e-4..1e-2, SA 200 x 1000, PT 10000
/// iterations with 20 replicas swapping every 100, one repeat per run.
TspBenchParams default_tsp_params();

/// One seeded run. Methods without clustering get the iteration budget
/// multiplied by the number of KMC levels, at penalty A_0.
DecodedTour run_tsp_method(const TspInstance& inst, TspMethod method, const TspBenchParams& params,
                           std::uint64_t seed);

// ---- Study driver ----------------------------------------------------------

struct StudyOptions {
  std::filesystem::path out_dir = ".";
  std::filesystem::path base_dir = ".";  // instance paths are resolved against this
  std::size_t threads = 1;
};

struct StudyOutput {
  std::vector<std::filesystem::path> files;  // CSVs, then manifest.json and timings.json
};

std::vector<std::string> study_kinds();

/// Runs the study described by `spec` ([problem] kind = ...). Output is a
/// CSV per table plus manifest.json (spec, seeds, reference provenance) and
/// timings.json (wall-clock seconds). Everything except timings.json is
/// byte-identical across reruns of the same spec.
StudyOutput run_study(const Config& spec, const StudyOptions& options);

}  // namespace vcpc
