#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcpc/energy_model.hpp"
#include "vcpc/solvers.hpp"

namespace vcpc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class EdgeWeightType { Euc2D, Geo };

/// TSPLIB integer distance between two node coordinates.
double tsplib_distance(EdgeWeightType type, const Point& a, const Point& b);

struct TspInstance {
  std::string name;
  EdgeWeightType weight_type = EdgeWeightType::Euc2D;
  std::vector<Point> coords;
  std::vector<double> dist;  // row-major n x n, symmetric, zero diagonal

  std::size_t size() const { return coords.size(); }
  double distance(std::size_t i, std::size_t j) const { return dist[i * size() + j]; }
  double max_distance() const;

  /// Instance over arbitrary points using the same edge-weight convention.
  static TspInstance from_points(std::string name, EdgeWeightType type, std::vector<Point> points);
  /// Instance with an explicit symmetric matrix (coordinates left at the origin).
  static TspInstance from_matrix(std::string name, std::vector<double> matrix, std::size_t n);
};

TspInstance parse_tsplib(std::istream& in);
TspInstance parse_tsplib(const std::filesystem::path& path);

/// K x K block mask: m[i * K + t] = 1 iff entity i may sit at tour position t.
struct MaskMatrix {
  std::size_t k = 0;
  std::vector<std::uint8_t> m;

  bool allowed(std::size_t i, std::size_t t) const { return m[i * k + t] != 0; }
  std::size_t ones() const;
};

/// Variable index of S[city][position] in the one-hot encoding.
inline VarIndex tsp_var(std::size_t n, std::size_t city, std::size_t position) {
  return static_cast<VarIndex>(city * n + position);
}

struct TspEncoding {
  std::size_t n = 0;
  EnergyModel model;
  ClampMask clamp;
};

/// One-hot row/column penalties weighted by A plus the cyclic tour cost
/// weighted by B. Cells outside `mask` are clamped to 0 and every term that
/// touches them is dropped (it is identically zero).
TspEncoding encode_tsp(const TspInstance& inst, double a, double b = 1.0,
                       const MaskMatrix* mask = nullptr);

/// Closed-form drive of cell (city, position) with cyclic column neighbours.
/// Throws IndexError when the cell is clamped by `mask`.
double tsp_update_drive(const TspInstance& inst, double a, double b, std::span<const std::uint8_t> s,
                        std::size_t city, std::size_t position, const MaskMatrix* mask = nullptr);

struct DecodedTour {
  std::vector<std::size_t> tour;  // city at each position (only meaningful when valid)
  bool valid = false;
  double cost = 0.0;  // includes the return leg; 0 when invalid
};

/// Reads an n x n one-hot matrix; valid iff every row and column sums to one.
DecodedTour decode_tour(const TspInstance& inst, std::span<const std::uint8_t> s);

double tour_cost(const TspInstance& inst, std::span<const std::size_t> tour);

/// Asymptotic coupling density 2/N of the one-hot TSP encoding.
double tsp_density(std::size_t n);

/// Lays clusters out along `parent_tour` (rotated so the cluster holding
/// entity 0 comes first); each cluster owns a contiguous column block as wide
/// as its cardinality.
MaskMatrix build_mask(std::span<const std::size_t> parent_tour, std::span<const std::size_t> assignment,
                      std::size_t k);

struct KMeansResult {
  std::vector<std::size_t> assignment;
  std::vector<Point> centroids;
  std::size_t iterations = 0;
};

/// Lloyd's algorithm from a seeded farthest-point start, at most `max_rounds`
/// rounds. Empty clusters take the point farthest from its centroid in the
/// largest cluster.
KMeansResult kmeans(std::span<const Point> points, std::size_t k, std::uint64_t seed,
                    std::size_t max_rounds = 100);

/// levels[0] are the cities; levels[l + 1] clusters the entities of levels[l].
struct ClusterLevel {
  std::vector<Point> points;
  std::vector<std::size_t> parent;  // entity -> cluster on the next level; empty on the top level
};

struct ClusterTree {
  std::vector<ClusterLevel> levels;

  std::vector<std::size_t> level_sizes() const;
};

/// Recursively clusters `coords` into sizes[0] > sizes[1] > ... clusters.
ClusterTree build_cluster_tree(std::span<const Point> coords, std::span<const std::size_t> sizes,
                               std::uint64_t seed);

enum class SolverKind { SA, PT };

struct KmcConfig {
  std::vector<std::size_t> cluster_sizes;  // K_1 > K_2 > ... > K_m, coarsest last
  std::vector<double> penalties;           // A_0 (cities), A_1 ... A_m
  double b = 1.0;
  SolverKind solver = SolverKind::SA;
  SaConfig sa;
  PtConfig pt;
  std::uint64_t seed = 0;

  void validate(std::size_t num_cities) const;
};

struct KmcLevelReport {
  std::size_t entities = 0;
  double penalty = 0.0;
  std::size_t free_vars = 0;
  std::size_t num_groups = 0;
  bool valid = false;
  double cost = 0.0;
};

struct KmcResult {
  DecodedTour tour;
  bool valid = false;
  std::string diagnostic;
  std::vector<KmcLevelReport> levels;  // coarsest first
  SolveResult final_solve;
  std::size_t total_iterations = 0;
};

/// Solves the coarsest level unmasked, then at each finer level masks the
/// one-hot matrix with the blocks induced by the parent tour. Stops with
/// valid = false and a diagnostic when a level yields no valid tour.
KmcResult kmc_pipeline(const TspInstance& inst, const KmcConfig& cfg);

/// Best valid tour among the repeat bests of a solve (invalid when none is).
DecodedTour best_valid_tour(const TspInstance& inst, const SolveResult& result);

/// Solves one (possibly masked) TSP level with the configured solver.
SolveResult solve_tsp(const TspEncoding& enc, const GroupPlan& plan, SolverKind solver,
                      const SaConfig& sa, const PtConfig& pt, std::uint64_t seed);

/// Tour file: `tour <N> cost <c> valid <0|1>` header, then one city index per line.
void save_tour(std::ostream& out, const DecodedTour& tour, std::size_t n);

}  // namespace vcpc
