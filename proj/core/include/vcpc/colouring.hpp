#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vcpc/energy_model.hpp"

namespace vcpc {

struct Hypergraph;

/// Variables that co-occur in some term of order >= 2 are adjacent.
/// Excluded (clamped) vertices carry no edges and are skipped by colouring.
struct ConflictGraph {
  std::size_t num_vars = 0;
  std::vector<std::vector<VarIndex>> adjacency;  // sorted, symmetric, no self-loops
  std::vector<std::uint8_t> excluded;

  std::size_t degree(VarIndex v) const { return adjacency[v].size(); }
  std::size_t max_degree() const;
  std::size_t num_edges() const;
  bool adjacent(VarIndex u, VarIndex v) const;
};

/// Partition of the free variables into conflict-free update groups.
struct GroupPlan {
  std::size_t num_vars = 0;
  std::vector<std::vector<VarIndex>> groups;
  ClampMask clamp;

  std::size_t num_groups() const { return groups.size(); }
  std::size_t num_free() const;
  /// Mean group size, free variables / |G| (0 for an empty plan).
  double avg_group_size() const;
};

ConflictGraph build_conflict_graph(const EnergyModel& model, const ClampMask& clamp);
ConflictGraph build_conflict_graph(const EnergyModel& model);

/// Conflict graph of a hypergraph: vertices sharing a hyperedge are adjacent.
/// Same graph as build_conflict_graph on the hitting-set encoding, without
/// expanding the 2^k product terms.
ConflictGraph build_conflict_graph(const Hypergraph& h);

/// Greedy colouring: vertices visited by descending degree, ties by index;
/// each takes the smallest colour unused by its neighbours.
GroupPlan greedy_colour(const ConflictGraph& g, const ClampMask& clamp);
GroupPlan greedy_colour(const ConflictGraph& g);

/// build_conflict_graph + greedy_colour.
GroupPlan plan_groups(const EnergyModel& model, const ClampMask& clamp);
GroupPlan plan_groups(const EnergyModel& model);

/// True when no group holds two adjacent vertices and the groups partition
/// exactly the free variables.
bool is_valid_plan(const GroupPlan& plan, const ConflictGraph& g);

struct GroupSweepCell {
  std::size_t k = 0;
  std::size_t m = 0;
  double mean_groups = 0.0;
  double std_groups = 0.0;
};

/// Mean/std group count over `samples` random k-uniform hypergraphs with m
/// distinct edges on n vertices, for every (k, m) pair.
std::vector<GroupSweepCell> group_count_sweep(std::size_t n, std::span<const std::size_t> k_range,
                                              std::span<const std::size_t> m_range,
                                              std::size_t samples, std::uint64_t seed,
                                              std::size_t threads = 1);

/// Bollobas estimate n ln(1/(1-p)) / (2 ln n) of the chromatic number of G(n, p).
double chromatic_estimate(double n, double p);

}  // namespace vcpc
