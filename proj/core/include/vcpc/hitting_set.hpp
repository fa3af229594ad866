#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "vcpc/energy_model.hpp"

namespace vcpc {

struct Hypergraph {
  std::size_t num_vertices = 0;
  std::vector<std::vector<VarIndex>> edges;  // each sorted, non-empty

  /// Size of the largest edge (0 when there are no edges).
  std::size_t dimension() const;
};

struct HittingSetSolution {
  std::vector<VarIndex> chosen;  // ascending
  bool valid = false;

  std::size_t size() const { return chosen.size(); }
};

/// Penalty weights used throughout the hitting-set experiments.
inline constexpr double kDefaultHsPenalty = 13.0;  // A
inline constexpr double kDefaultHsWeight = 9.0;    // B

/// m distinct edges, each a uniform k-subset of [0, n). Isolated vertices allowed.
Hypergraph gen_hypergraph(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed);

/// Expands A * sum_r prod_{v in r} (1 - s_v) + B * sum_v s_v into multilinear terms.
/// Requires A > B > 0.
EnergyModel encode_hitting_set(const Hypergraph& h, double a = kDefaultHsPenalty,
                               double b = kDefaultHsWeight);

/// Closed-form drive A * sum_{r contains v} prod_{u in r, u != v} (1 - s_u) - B.
double hs_update_drive(const Hypergraph& h, double a, double b, std::span<const std::uint8_t> s,
                       VarIndex vertex);

/// Number of edges with no chosen vertex.
std::size_t uncovered_edges(const Hypergraph& h, std::span<const std::uint8_t> s);

HittingSetSolution solution_from_state(const Hypergraph& h, std::span<const std::uint8_t> s);
HittingSetSolution make_solution(const Hypergraph& h, std::vector<VarIndex> chosen);

/// Repeatedly takes the vertex hitting the most uncovered edges (ties: lowest index).
HittingSetSolution greedy_reference(const Hypergraph& h);

/// Completes a partial cover greedily; a valid input is returned unchanged.
HittingSetSolution repair_cover(const Hypergraph& h, const HittingSetSolution& partial);

/// Exact minimum hitting set by enumeration, n <= 24.
HittingSetSolution exact_hitting_set(const Hypergraph& h);

/// q = |found| / |ref|. Both must be valid covers.
double hs_quality(const HittingSetSolution& found, const HittingSetSolution& ref);

/// File format: `N m` header, then one edge per line as vertex indices.
void save_hypergraph(std::ostream& out, const Hypergraph& h);
Hypergraph load_hypergraph(std::istream& in);

}  // namespace vcpc
